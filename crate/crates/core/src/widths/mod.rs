//! Tree decompositions, acyclicity and chordality tests, minimal
//! triangulations, fractional hypertree width, and width lower-bound
//! certificates built from set functions.

mod measures;
mod triangulate;

use crate::error::{Error, Result};
use crate::hypergraph::{strip_comment, Hypergraph, VertexSet};
use crate::ratlp::Rational;

pub use measures::{
    certify_set_function, coverage_function, fhw, fractional_edge_cover,
    has_full_contact_bag_in_every_td, hyper_boat_set_function, width_lower_bound,
    SetFunctionReport,
};
pub use triangulate::{
    is_unique_chord_minimal, minimal_triangulations, proper_tree_decompositions,
    MAX_TRIANGULATION_VERTICES,
};

/// A rooted tree of bags. `parent[i]` is `None` exactly for roots.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    /// Connect the given bags into a tree by maximum-weight spanning tree
    /// on bag intersections (a clique tree when the bags are the maximal
    /// cliques of a chordal graph), then validate.
    pub fn from_bags(h: &Hypergraph, bags: Vec<VertexSet>) -> Result<TreeDecomposition> {
        if bags.is_empty() {
            return Err(Error::input("a tree decomposition needs at least one bag"));
        }
        let m = bags.len();
        let mut parent = vec![None; m];
        let mut in_tree = vec![false; m];
        in_tree[0] = true;
        for _ in 1..m {
            let mut best: Option<(usize, usize, usize)> = None; // (weight, new, attach)
            for i in 0..m {
                if in_tree[i] {
                    continue;
                }
                for j in 0..m {
                    if !in_tree[j] {
                        continue;
                    }
                    let w = bags[i].intersection(bags[j]).len();
                    // highest weight wins; ties go to the lowest (i, j)
                    let better = match best {
                        None => true,
                        Some((bw, bi, bj)) => w > bw || (w == bw && (i, j) < (bi, bj)),
                    };
                    if better {
                        best = Some((w, i, j));
                    }
                }
            }
            let (_, i, j) = best.expect("tree has fewer than m-1 edges");
            parent[i] = Some(j);
            in_tree[i] = true;
        }
        let td = TreeDecomposition { bags, parent };
        td.validate(h)?;
        Ok(td)
    }

    /// Check both decomposition conditions: every hyperedge inside some
    /// bag, and for every vertex the bags containing it form a non-empty
    /// connected subtree.
    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        let m = self.bags.len();
        if self.parent.len() != m {
            return Err(Error::input("parent table does not match bag count"));
        }
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                if *p >= m {
                    return Err(Error::input("parent index out of range"));
                }
                let _ = i;
            }
        }
        for &e in h.edges() {
            if !self.bags.iter().any(|b| e.is_subset_of(*b)) {
                return Err(Error::input(format!(
                    "hyperedge {} is in no bag",
                    h.set_to_string(e)
                )));
            }
        }
        for v in 0..h.vertex_count() {
            let holders: Vec<usize> =
                (0..m).filter(|&i| self.bags[i].contains(v)).collect();
            if holders.is_empty() {
                return Err(Error::input(format!(
                    "vertex {} is in no bag",
                    h.label(v)
                )));
            }
            // connected in the tree: every holder except one must have a
            // holder on its path towards the root at its parent
            let holder_set: std::collections::BTreeSet<usize> = holders.iter().copied().collect();
            let mut linked = 0usize;
            for &i in &holders {
                match self.parent[i] {
                    Some(p) if holder_set.contains(&p) => linked += 1,
                    _ => {}
                }
            }
            if linked + 1 != holders.len() {
                return Err(Error::input(format!(
                    "bags containing {} do not form a connected subtree",
                    h.label(v)
                )));
            }
        }
        Ok(())
    }
}

/// Is the hypergraph acyclic? Decided by ear-and-containment reduction:
/// repeatedly drop vertices that occur in a single edge and edges
/// contained in other edges; acyclic exactly when everything vanishes.
pub fn is_acyclic(h: &Hypergraph) -> bool {
    reduce_edges(h).is_empty()
}

/// The ear-and-containment fixpoint, returning the surviving edge sets.
fn reduce_edges(h: &Hypergraph) -> Vec<VertexSet> {
    let mut edges: Vec<VertexSet> = h.edges().to_vec();
    loop {
        let mut changed = false;
        // vertices occurring in exactly one edge disappear from it
        let mut occurrences = vec![0usize; h.vertex_count()];
        for e in &edges {
            for v in e.iter() {
                occurrences[v] += 1;
            }
        }
        for e in edges.iter_mut() {
            let private =
                VertexSet::from_iter(e.iter().filter(|&v| occurrences[v] == 1));
            if !private.is_empty() {
                *e = e.difference(private);
                changed = true;
            }
        }
        // edges contained in another surviving edge disappear
        let mut keep: Vec<VertexSet> = Vec::with_capacity(edges.len());
        for (i, &e) in edges.iter().enumerate() {
            let contained = edges.iter().enumerate().any(|(j, &f)| {
                i != j && e.is_subset_of(f) && (e != f || j < i)
            });
            if contained || e.is_empty() {
                changed = true;
            } else {
                keep.push(e);
            }
        }
        edges = keep;
        if !changed {
            return edges;
        }
    }
}

/// Join forest of an acyclic hypergraph: `parent[i]` is the edge the i-th
/// hyperedge folds into during the reduction, `None` for roots.
pub fn join_forest(h: &Hypergraph) -> Result<Vec<Option<usize>>> {
    let mut current: Vec<Option<VertexSet>> = h.edges().iter().copied().map(Some).collect();
    let mut parent: Vec<Option<usize>> = vec![None; current.len()];
    let n = h.vertex_count();
    loop {
        let mut changed = false;
        let mut occurrences = vec![0usize; n];
        for e in current.iter().flatten() {
            for v in e.iter() {
                occurrences[v] += 1;
            }
        }
        for e in current.iter_mut() {
            if let Some(s) = e {
                let private = VertexSet::from_iter(s.iter().filter(|&v| occurrences[v] == 1));
                if !private.is_empty() {
                    *e = Some(s.difference(private));
                    changed = true;
                }
            }
        }
        for i in 0..current.len() {
            let Some(e) = current[i] else { continue };
            let host = (0..current.len()).find(|&j| {
                j != i
                    && match current[j] {
                        Some(f) => e.is_subset_of(f) && (e != f || j < i),
                        None => false,
                    }
            });
            if let Some(j) = host {
                parent[i] = Some(j);
                current[i] = None;
                changed = true;
            } else if e.is_empty() {
                current[i] = None;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if current.iter().any(Option::is_some) {
        return Err(Error::input("hypergraph is not acyclic"));
    }
    Ok(parent)
}

/// Chordality of the hypergraph, via its clique graph: a maximum
/// cardinality search order must be a perfect elimination order.
pub fn is_chordal(h: &Hypergraph) -> bool {
    let g = h.clique_graph();
    let n = h.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &e in g.edges() {
        let vs: Vec<usize> = e.iter().collect();
        if vs.len() == 2 {
            adj[vs[0]][vs[1]] = true;
            adj[vs[1]][vs[0]] = true;
        }
    }
    is_chordal_adj(&adj)
}

/// Chordality of an explicit adjacency matrix.
pub(crate) fn is_chordal_adj(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    // maximum cardinality search; ties broken by lowest vertex index
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], n - v))
            .expect("unvisited vertex exists");
        visited[v] = true;
        order.push(v);
        for u in 0..n {
            if !visited[u] && adj[v][u] {
                weight[u] += 1;
            }
        }
    }
    // reverse of the MCS order is an elimination order; check it is perfect
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = n - 1 - i; // elimination position
    }
    for v in 0..n {
        let later: Vec<usize> =
            (0..n).filter(|&u| adj[v][u] && pos[u] > pos[v]).collect();
        let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        for &u in &later {
            if u != p && !adj[p][u] {
                return false;
            }
        }
    }
    true
}

/// A total function from subsets of `0..n` to exact rationals, stored as a
/// full table indexed by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    pub n: usize,
    values: Vec<Rational>,
}

impl SetFunction {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<SetFunction> {
        if values.len() != 1usize << n {
            return Err(Error::input(format!(
                "set function table has {} entries; need 2^{n}",
                values.len()
            )));
        }
        Ok(SetFunction { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(VertexSet) -> Rational) -> SetFunction {
        let values = (0..(1u32 << n)).map(|m| f(VertexSet::from_bits(m))).collect();
        SetFunction { n, values }
    }

    pub fn get(&self, s: VertexSet) -> &Rational {
        &self.values[s.bits() as usize]
    }

    /// Parse lines `value <names or -> : p/q`; every subset of the
    /// hypergraph's vertices must appear exactly once. `-` is the empty set.
    pub fn parse(text: &str, h: &Hypergraph) -> Result<SetFunction> {
        let n = h.vertex_count();
        let mut values: Vec<Option<Rational>> = vec![None; 1 << n];
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix("value")
                .ok_or_else(|| Error::parse(lineno, format!("unrecognized line `{line}`")))?;
            let (names, val) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::parse(lineno, "missing `:`"))?;
            let mut s = VertexSet::EMPTY;
            for tok in names.split_whitespace() {
                if tok == "-" {
                    continue;
                }
                let v = h
                    .vertex_by_label(tok)
                    .ok_or_else(|| Error::parse(lineno, format!("unknown vertex name `{tok}`")))?;
                s.insert(v);
            }
            let value = parse_rational(val.trim())
                .ok_or_else(|| Error::parse(lineno, format!("bad rational `{}`", val.trim())))?;
            let slot = &mut values[s.bits() as usize];
            if slot.is_some() {
                return Err(Error::parse(lineno, format!("subset {} listed twice", h.set_to_string(s))));
            }
            *slot = Some(value);
        }
        let mut out = Vec::with_capacity(1 << n);
        for (bits, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => out.push(v),
                None => {
                    return Err(Error::input(format!(
                        "subset {} is missing",
                        h.set_to_string(VertexSet::from_bits(bits as u32))
                    )))
                }
            }
        }
        SetFunction::new(n, out)
    }

    pub fn to_text(&self, h: &Hypergraph) -> String {
        let mut out = String::new();
        for bits in 0..(1u32 << self.n) {
            let s = VertexSet::from_bits(bits);
            let names: Vec<&str> = s.iter().map(|v| h.label(v)).collect();
            let shown = if names.is_empty() { "-".to_string() } else { names.join(" ") };
            out.push_str(&format!("value {} : {}\n", shown, self.values[bits as usize]));
        }
        out
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = text.trim().parse().ok()?;
            Some(Rational::from(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Family;
    use crate::ratlp::rat_int;
    use crate::testutil::{cycle, star_with_triple};

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(
            n,
            edges.iter().map(|e| VertexSet::from_iter(e.iter().copied())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn acyclicity_cases() {
        let path = hg(3, &[&[0, 1], &[1, 2]]);
        assert!(is_acyclic(&path));
        assert!(!is_acyclic(&cycle(3)));
        assert!(!is_acyclic(&Family::HyperBoat.hypergraph().unwrap()));
        let single = hg(3, &[&[0, 1, 2]]);
        assert!(is_acyclic(&single));
        assert!(!is_acyclic(&star_with_triple()));
        let fork = hg(5, &[&[0, 1, 2], &[2, 3], &[3, 4]]);
        assert!(is_acyclic(&fork));
    }

    #[test]
    fn join_forest_of_acyclic() {
        let fork = hg(5, &[&[0, 1, 2], &[2, 3], &[3, 4]]);
        let parents = join_forest(&fork).unwrap();
        assert_eq!(parents.len(), 3);
        assert_eq!(parents.iter().filter(|p| p.is_none()).count(), 1);
        assert!(join_forest(&cycle(4)).is_err());
    }

    #[test]
    fn chordality_cases() {
        assert!(is_chordal(&Family::Hyperclique(4, 3).hypergraph().unwrap()));
        assert!(!is_chordal(&cycle(6)));
        assert!(!is_chordal(&cycle(4)));
        assert!(is_chordal(&cycle(3)));
        // acyclic hypergraphs are chordal
        for h in [
            hg(3, &[&[0, 1], &[1, 2]]),
            hg(3, &[&[0, 1, 2]]),
            hg(5, &[&[0, 1, 2], &[2, 3], &[3, 4]]),
        ] {
            assert!(is_acyclic(&h) && is_chordal(&h));
        }
        assert!(is_chordal(&Family::AlmostClique(5, 2).hypergraph().unwrap()));
        assert!(!is_chordal(&Family::HyperBoat.hypergraph().unwrap()));
    }

    #[test]
    fn tree_decomposition_validation() {
        let h = cycle(4);
        let bags = vec![VertexSet::from_iter([0, 1, 2]), VertexSet::from_iter([0, 2, 3])];
        let td = TreeDecomposition::from_bags(&h, bags).unwrap();
        td.validate(&h).unwrap();

        // missing edge coverage
        let bad = TreeDecomposition {
            bags: vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([2, 3])],
            parent: vec![None, Some(0)],
        };
        assert!(bad.validate(&h).is_err());

        // disconnected subtree for vertex 0
        let bad = TreeDecomposition {
            bags: vec![
                VertexSet::from_iter([0, 1, 2]),
                VertexSet::from_iter([1, 2, 3]),
                VertexSet::from_iter([0, 2, 3]),
            ],
            parent: vec![None, Some(0), Some(1)],
        };
        assert!(bad.validate(&h).is_err());
    }

    #[test]
    fn set_function_parse_roundtrip() {
        let h = hg(2, &[&[0, 1]]);
        let f = SetFunction::from_fn(2, |s| rat_int(s.len() as i64));
        let text = f.to_text(&h);
        assert!(text.contains("value - : 0"));
        let again = SetFunction::parse(&text, &h).unwrap();
        assert_eq!(f, again);

        // missing subsets are an error
        assert!(SetFunction::parse("value - : 0\n", &h).is_err());
    }
}
