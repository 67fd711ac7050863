//! Minimal triangulations and the bag sets of proper tree decompositions.
//!
//! Fill sets are enumerated smallest-first over the non-edges of the
//! graph; a candidate is accepted when the filled graph is chordal and no
//! previously accepted (hence smaller or incomparable) fill is contained
//! in it, which characterizes inclusion-minimal triangulations. The bags
//! of the proper tree decompositions are exactly the maximal-clique sets
//! of the minimally triangulated graphs.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

use super::is_chordal_adj;

/// Guard for the triangulation enumeration.
pub const MAX_TRIANGULATION_VERTICES: usize = 9;
const MAX_NON_EDGES: usize = 22;

/// All inclusion-minimal chordal fill-ins of a graph, each as a sorted
/// list of vertex pairs, in deterministic (size, lexicographic) order.
/// A chordal input yields exactly one entry: the empty fill.
pub fn minimal_triangulations(g: &Hypergraph) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = g.vertex_count();
    if n > MAX_TRIANGULATION_VERTICES {
        return Err(Error::resource(format!(
            "triangulation enumeration supports at most {MAX_TRIANGULATION_VERTICES} vertices, got {n}"
        )));
    }
    if g.edges().iter().any(|e| e.len() > 2) {
        return Err(Error::input("triangulation requires a graph (binary edges)"));
    }
    let mut adj = vec![vec![false; n]; n];
    for &e in g.edges() {
        let vs: Vec<usize> = e.iter().collect();
        if vs.len() == 2 {
            adj[vs[0]][vs[1]] = true;
            adj[vs[1]][vs[0]] = true;
        }
    }
    let mut non_edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if !adj[u][v] {
                non_edges.push((u, v));
            }
        }
    }
    if non_edges.len() > MAX_NON_EDGES {
        return Err(Error::resource(format!(
            "{} non-edges exceed the enumeration limit of {MAX_NON_EDGES}",
            non_edges.len()
        )));
    }

    let mut found_masks: Vec<u64> = Vec::new();
    let mut found: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    for size in 0..=non_edges.len() {
        enumerate_fills(
            &non_edges,
            size,
            0,
            0u64,
            &mut pick,
            &mut adj,
            &mut found_masks,
            &mut found,
        );
        // every triangulation contains a minimal one, so once the full
        // fill is dominated the larger sizes are all dominated too
        if found_masks.iter().any(|&m| m == 0) {
            break;
        }
    }
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_fills(
    non_edges: &[(usize, usize)],
    size: usize,
    start: usize,
    mask: u64,
    pick: &mut Vec<usize>,
    adj: &mut Vec<Vec<bool>>,
    found_masks: &mut Vec<u64>,
    found: &mut Vec<Vec<(usize, usize)>>,
) {
    // a superset of an accepted fill can never be minimal
    if found_masks.iter().any(|&f| f & mask == f) {
        return;
    }
    if pick.len() == size {
        if is_chordal_adj(adj) {
            found_masks.push(mask);
            found.push(pick.iter().map(|&i| non_edges[i]).collect());
        }
        return;
    }
    let remaining = size - pick.len();
    for i in start..=(non_edges.len().saturating_sub(remaining)) {
        let (u, v) = non_edges[i];
        adj[u][v] = true;
        adj[v][u] = true;
        pick.push(i);
        enumerate_fills(non_edges, size, i + 1, mask | (1 << i), pick, adj, found_masks, found);
        pick.pop();
        adj[u][v] = false;
        adj[v][u] = false;
    }
}

/// The bag sets of the proper tree decompositions of a hypergraph: for
/// each minimal triangulation of its clique graph, the maximal cliques of
/// the filled graph. Bag sets are sorted canonically and deduplicated;
/// the list is ordered deterministically.
pub fn proper_tree_decompositions(h: &Hypergraph) -> Result<Vec<Vec<VertexSet>>> {
    let n = h.vertex_count();
    if n > MAX_TRIANGULATION_VERTICES {
        return Err(Error::resource(format!(
            "proper decomposition enumeration supports at most {MAX_TRIANGULATION_VERTICES} vertices, got {n}"
        )));
    }
    let g = h.clique_graph();
    let fills = minimal_triangulations(&g)?;
    let mut adj = vec![vec![false; n]; n];
    for &e in g.edges() {
        let vs: Vec<usize> = e.iter().collect();
        if vs.len() == 2 {
            adj[vs[0]][vs[1]] = true;
            adj[vs[1]][vs[0]] = true;
        }
    }
    let mut out: Vec<Vec<VertexSet>> = Vec::new();
    for fill in &fills {
        let mut filled = adj.clone();
        for &(u, v) in fill {
            filled[u][v] = true;
            filled[v][u] = true;
        }
        let mut bags = maximal_cliques(&filled);
        bags.sort_by(VertexSet::canonical_cmp);
        if !out.contains(&bags) {
            out.push(bags);
        }
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().map(|s| s.bits()).cmp(b.iter().map(|s| s.bits())))
    });
    Ok(out)
}

/// Maximal cliques by pivoted recursive enumeration.
fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<VertexSet> {
    let n = adj.len();
    let neighbors: Vec<VertexSet> = (0..n)
        .map(|v| VertexSet::from_iter((0..n).filter(|&u| adj[v][u])))
        .collect();
    let mut out = Vec::new();
    fn expand(
        r: VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
        neighbors: &[VertexSet],
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        // pivot on the candidate covering most of p, lowest index on ties
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| (p.intersection(neighbors[u]).len(), usize::MAX - u))
            .expect("p or x non-empty");
        let mut todo = p.difference(neighbors[pivot]);
        while let Some(v) = todo.first() {
            todo.remove(v);
            let mut r2 = r;
            r2.insert(v);
            expand(
                r2,
                p.intersection(neighbors[v]),
                x.intersection(neighbors[v]),
                neighbors,
                out,
            );
            p.remove(v);
            x.insert(v);
        }
    }
    expand(
        VertexSet::EMPTY,
        VertexSet::from_iter(0..n),
        VertexSet::EMPTY,
        &neighbors,
        &mut out,
    );
    out
}

/// Is the fill an inclusion-minimal triangulation by the unique-chord
/// criterion: every fill edge is the unique chord of some 4-cycle of the
/// filled graph?
pub fn is_unique_chord_minimal(g: &Hypergraph, fill: &[(usize, usize)]) -> Result<bool> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &e in g.edges() {
        let vs: Vec<usize> = e.iter().collect();
        if vs.len() == 2 {
            adj[vs[0]][vs[1]] = true;
            adj[vs[1]][vs[0]] = true;
        }
    }
    for &(u, v) in fill {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    if !is_chordal_adj(&adj) {
        return Ok(false);
    }
    for &(u, v) in fill {
        // need non-adjacent a, b joined to both u and v
        let mut witnessed = false;
        'outer: for a in 0..n {
            if a == u || a == v || !adj[u][a] || !adj[v][a] {
                continue;
            }
            for b in (a + 1)..n {
                if b == u || b == v || !adj[u][b] || !adj[v][b] {
                    continue;
                }
                if !adj[a][b] {
                    witnessed = true;
                    break 'outer;
                }
            }
        }
        if !witnessed {
            return Ok(false);
        }
    }
    Ok(true)
}
