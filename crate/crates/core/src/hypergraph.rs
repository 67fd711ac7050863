//! Hypergraphs over a small vertex universe and the subset predicates
//! (connectivity, touching) the rest of the crate builds on.
//!
//! Vertices are dense indices `0..n` with a label table; all algorithms
//! work on bitmask subsets. The supported scale is `n <= 24`.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of vertices a [`Hypergraph`] may have.
pub const MAX_VERTICES: usize = 24;

/// A set of vertex indices, stored as a bitmask over `0..24`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < 32);
        VertexSet(1 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 32);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u32 << v);
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest vertex index in the set, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Order by cardinality first, then by numeric bitmask value. This is
    /// the canonical subset order used for solver variables and witnesses.
    pub fn canonical_cmp(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A hypergraph: a labelled vertex universe `0..n` and an ordered list of
/// hyperedges. Construction enforces that every edge is non-empty, that no
/// two edges are equal as sets, and that every vertex occurs in some edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    labels: Vec<String>,
    edges: Vec<VertexSet>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.set_to_string(*e))?;
        }
        write!(f, "])")
    }
}

impl Hypergraph {
    /// Build a hypergraph with default labels `v1..vn`.
    pub fn new(n: usize, edges: Vec<VertexSet>) -> Result<Self> {
        let labels = (1..=n).map(|i| format!("v{i}")).collect();
        Hypergraph::with_labels(labels, edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: Vec<VertexSet>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::input("hypergraph must have at least one vertex"));
        }
        if n > MAX_VERTICES {
            return Err(Error::input(format!(
                "hypergraph has {n} vertices; at most {MAX_VERTICES} are supported"
            )));
        }
        let full = VertexSet::full(n);
        let mut covered = VertexSet::EMPTY;
        for (i, &e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::input(format!("edge #{i} is empty")));
            }
            if !e.is_subset_of(full) {
                return Err(Error::input(format!("edge #{i} has out-of-range vertices")));
            }
            if edges[..i].contains(&e) {
                return Err(Error::input(format!("duplicate edge #{i}")));
            }
            covered = covered.union(e);
        }
        if covered != full {
            let missing: Vec<usize> = full.difference(covered).iter().collect();
            return Err(Error::input(format!(
                "vertices {missing:?} appear in no edge"
            )));
        }
        Ok(Hypergraph { n, labels, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// All vertices as a set.
    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn set_to_string(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    fn check_in_range(&self, s: VertexSet) -> Result<()> {
        if s.is_subset_of(self.all_vertices()) {
            Ok(())
        } else {
            Err(Error::input("vertex set has out-of-range indices"))
        }
    }

    /// Does `s` induce a connected subhypergraph? Two vertices of `s` are
    /// adjacent when some hyperedge contains both. The empty set is not
    /// connected; singletons are.
    pub fn is_connected_subset(&self, s: VertexSet) -> Result<bool> {
        self.check_in_range(s)?;
        Ok(self.connected_unchecked(s))
    }

    fn connected_unchecked(&self, s: VertexSet) -> bool {
        let Some(start) = s.first() else {
            return false;
        };
        let mut seen = VertexSet::singleton(start);
        loop {
            let mut grown = seen;
            for &e in &self.edges {
                if e.intersects(seen) {
                    grown = grown.union(e.intersection(s));
                }
            }
            if grown == seen {
                break;
            }
            seen = grown;
        }
        seen == s
    }

    /// Do `s` and `t` touch: share a vertex, or both meet a common hyperedge?
    pub fn touches(&self, s: VertexSet, t: VertexSet) -> Result<bool> {
        if s.is_empty() || t.is_empty() {
            return Err(Error::input("touches requires non-empty sets"));
        }
        self.check_in_range(s)?;
        self.check_in_range(t)?;
        if s.intersects(t) {
            return Ok(true);
        }
        Ok(self.edges.iter().any(|&e| e.intersects(s) && e.intersects(t)))
    }

    /// Is the hypergraph connected as a whole (its clique graph connected)?
    pub fn is_connected(&self) -> bool {
        self.connected_unchecked(self.all_vertices())
    }

    /// All non-empty connected subsets, ordered by cardinality and then by
    /// bitmask value. This order fixes solver variable numbering.
    pub fn connected_subsets(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = (1..(1u32 << self.n))
            .map(VertexSet::from_bits)
            .filter(|&s| self.connected_unchecked(s))
            .collect();
        out.sort_by(VertexSet::canonical_cmp);
        out
    }

    /// The clique graph (2-section): same vertices, a binary edge for every
    /// pair of vertices that share a hyperedge. A vertex whose hyperedges
    /// are all singletons keeps a singleton edge so it stays covered.
    pub fn clique_graph(&self) -> Hypergraph {
        let mut pair_edges: Vec<VertexSet> = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let pair = VertexSet::from_iter([u, v]);
                if self.edges.iter().any(|&e| pair.is_subset_of(e)) {
                    pair_edges.push(pair);
                }
            }
        }
        let mut covered = VertexSet::EMPTY;
        for &e in &pair_edges {
            covered = covered.union(e);
        }
        for v in 0..self.n {
            if !covered.contains(v) {
                pair_edges.push(VertexSet::singleton(v));
            }
        }
        pair_edges.sort_by(VertexSet::canonical_cmp);
        Hypergraph {
            n: self.n,
            labels: self.labels.clone(),
            edges: pair_edges,
        }
    }

    /// Is every edge binary (a graph)? Singleton edges disqualify.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// Adjacency test in the clique graph.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v
            && self
                .edges
                .iter()
                .any(|e| e.contains(u) && e.contains(v))
    }

    /// Connected components of the vertex set.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut remaining = self.all_vertices();
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            loop {
                let mut grown = comp;
                for &e in &self.edges {
                    if e.intersects(comp) {
                        grown = grown.union(e);
                    }
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            remaining = remaining.difference(comp);
        }
        out
    }

    /// The subhypergraph induced by `s`, with vertices renumbered densely.
    /// Edges are intersected with `s`; empty and duplicate results drop out.
    pub fn induced(&self, s: VertexSet) -> Result<Hypergraph> {
        self.check_in_range(s)?;
        let verts: Vec<usize> = s.iter().collect();
        let labels: Vec<String> = verts.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges: Vec<VertexSet> = Vec::new();
        for &e in &self.edges {
            let cut = e.intersection(s);
            if cut.is_empty() {
                continue;
            }
            let remapped =
                VertexSet::from_iter(cut.iter().map(|v| verts.iter().position(|&w| w == v).unwrap()));
            if !edges.contains(&remapped) {
                edges.push(remapped);
            }
        }
        Hypergraph::with_labels(labels, edges)
    }

    /// Parse the line-oriented text format:
    ///
    /// ```text
    /// # comment
    /// vertices: x1 x2 x3 y
    /// edge: x1 x2 x3
    /// edge: x1 y
    /// ```
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut labels: Option<Vec<String>> = None;
        let mut edges: Vec<VertexSet> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if labels.is_some() {
                    return Err(Error::parse(lineno, "duplicate `vertices:` line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(Error::parse(lineno, "`vertices:` lists no names"));
                }
                for (i, name) in names.iter().enumerate() {
                    if names[..i].contains(name) {
                        return Err(Error::parse(lineno, format!("duplicate vertex name `{name}`")));
                    }
                }
                labels = Some(names);
            } else if let Some(rest) = line.strip_prefix("edge:") {
                let labels = labels
                    .as_ref()
                    .ok_or_else(|| Error::parse(lineno, "`edge:` before `vertices:`"))?;
                let mut e = VertexSet::EMPTY;
                for tok in rest.split_whitespace() {
                    let v = labels
                        .iter()
                        .position(|l| l == tok)
                        .ok_or_else(|| Error::parse(lineno, format!("unknown vertex name `{tok}`")))?;
                    e.insert(v);
                }
                if e.is_empty() {
                    return Err(Error::parse(lineno, "empty edge"));
                }
                if edges.contains(&e) {
                    return Err(Error::parse(lineno, "duplicate edge"));
                }
                edges.push(e);
            } else {
                return Err(Error::parse(lineno, format!("unrecognized line `{line}`")));
            }
        }
        let labels = labels.ok_or_else(|| Error::input("missing `vertices:` line"))?;
        Hypergraph::with_labels(labels, edges)
    }

    /// Serialize in the text format accepted by [`Hypergraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.labels.join(" "));
        for &e in &self.edges {
            let names: Vec<&str> = e.iter().map(|v| self.label(v)).collect();
            out.push_str(&format!("edge: {}\n", names.join(" ")));
        }
        out
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

/// Enumerate every connected hypergraph with exactly `n` vertices and at
/// most `max_edges` hyperedges, in a fixed deterministic order. Edge lists
/// are increasing sequences of bitmask values. This is the reference corpus
/// for the oracle-equivalence and property suites.
pub fn connected_hypergraphs(n: usize, max_edges: usize) -> Vec<Hypergraph> {
    assert!(n <= 12, "corpus enumeration is meant for small n");
    let all: Vec<u32> = (1..(1u32 << n)).collect();
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn rec(
        n: usize,
        all: &[u32],
        start: usize,
        stack: &mut Vec<u32>,
        max_edges: usize,
        out: &mut Vec<Hypergraph>,
    ) {
        if !stack.is_empty() {
            if let Some(h) = accept(n, stack) {
                out.push(h);
            }
        }
        if stack.len() == max_edges {
            return;
        }
        for i in start..all.len() {
            stack.push(all[i]);
            rec(n, all, i + 1, stack, max_edges, out);
            stack.pop();
        }
    }
    fn accept(n: usize, edges: &[u32]) -> Option<Hypergraph> {
        let full = (1u32 << n) - 1;
        let covered = edges.iter().fold(0u32, |acc, &e| acc | e);
        if covered != full {
            return None;
        }
        // connectivity via edge-based flooding from vertex 0
        let mut seen = 1u32;
        loop {
            let mut grown = seen;
            for &e in edges {
                if e & seen != 0 {
                    grown |= e;
                }
            }
            if grown == seen {
                break;
            }
            seen = grown;
        }
        if seen != full {
            return None;
        }
        let sets = edges.iter().map(|&e| VertexSet::from_bits(e)).collect();
        Some(Hypergraph::new(n, sets).expect("enumerated edges are valid"))
    }
    rec(n, &all, 0, &mut stack, max_edges, &mut out);
    out
}
