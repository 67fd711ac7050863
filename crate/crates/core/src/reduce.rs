//! Compiling weighted k-clique instances into sum-of-product inputs over
//! an arbitrary query structure, through a clique embedding. The
//! construction only ever calls the semiring's `plus`/`times`/`zero`/`one`,
//! so it is oblivious to the underlying semiring.
//!
//! The clique input is first made k-partite. The plain lift places one
//! copy of every vertex in each of k parts and keeps a pair when the
//! originals are adjacent and the parts differ; each original k-clique
//! then appears once per assignment of its vertices to parts (k! times).
//! The order-restricted lift additionally requires part order to agree
//! with original vertex order, which makes the correspondence one-to-one,
//! so aggregates match the original graph exactly.

use std::collections::BTreeMap;

use crate::embedding::{validate_embedding, Embedding};
use crate::engine::{kclique_direct, eval_bruteforce, FactorTable, Semiring, SumProdInstance, WeightedGraph};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// A k-partite weighted graph produced by lifting: vertex `(part j,
/// original i)` has index `j * base_n + i`.
#[derive(Debug, Clone)]
pub struct KPartiteGraph<V> {
    pub base_n: usize,
    pub parts: usize,
    pub graph: WeightedGraph<V>,
}

impl<V> KPartiteGraph<V> {
    pub fn vertex(&self, part: usize, original: usize) -> usize {
        part * self.base_n + original
    }
}

/// The plain k-partite lift: parts are full vertex copies, and `(j, i)`
/// joins `(q, p)` when `{i, p}` is an edge and `j != q`. Every original
/// k-clique appears k! times, once per part assignment.
pub fn kpartite_lift<S: Semiring>(
    g: &WeightedGraph<S::Value>,
    k: usize,
    semiring: &S,
) -> Result<KPartiteGraph<S::Value>> {
    lift_impl(g, k, semiring, false)
}

/// The order-restricted lift: a pair additionally requires the part order
/// to match the original index order, giving a one-to-one correspondence
/// between original k-cliques and lifted k-cliques.
pub fn kpartite_lift_canonical<S: Semiring>(
    g: &WeightedGraph<S::Value>,
    k: usize,
    semiring: &S,
) -> Result<KPartiteGraph<S::Value>> {
    lift_impl(g, k, semiring, true)
}

fn lift_impl<S: Semiring>(
    g: &WeightedGraph<S::Value>,
    k: usize,
    semiring: &S,
    order_restricted: bool,
) -> Result<KPartiteGraph<S::Value>> {
    if k == 0 {
        return Err(Error::input("lift needs at least one part"));
    }
    let n = g.vertex_count();
    let mut entries: Vec<((usize, usize), S::Value)> = Vec::new();
    for (&(i, p), w) in g.edges() {
        debug_assert!(i < p);
        for j in 0..k {
            for q in 0..k {
                if j == q {
                    continue;
                }
                if order_restricted && j > q {
                    continue; // parts must respect original vertex order
                }
                entries.push(((j * n + i, q * n + p), w.clone()));
            }
        }
    }
    let graph = WeightedGraph::new(n * k, entries, semiring)?;
    Ok(KPartiteGraph { base_n: n, parts: k, graph })
}

/// The assignment of every clique pair `{i, j}` to one hyperedge whose
/// intersection with both images is non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAssignment {
    pub k: usize,
    /// `{i, j}` with `i < j` (0-based clique vertices) -> hyperedge index
    pub edge_of_pair: BTreeMap<(usize, usize), usize>,
}

impl PairAssignment {
    /// The pairs routed through the given hyperedge.
    pub fn pairs_on_edge(&self, edge: usize) -> Vec<(usize, usize)> {
        self.edge_of_pair
            .iter()
            .filter(|(_, &e)| e == edge)
            .map(|(&p, _)| p)
            .collect()
    }
}

/// Assign each clique pair the lowest-index hyperedge meeting both images.
/// Total for valid embeddings; invalid ones are an input error.
pub fn assign_pairs(h: &Hypergraph, e: &Embedding) -> Result<PairAssignment> {
    let report = validate_embedding(h, e)?;
    if !report.valid {
        return Err(Error::input("pair assignment requires a valid embedding"));
    }
    let k = e.k();
    let mut edge_of_pair = BTreeMap::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let edge = h
                .edges()
                .iter()
                .position(|&f| f.intersects(e.image(i)) && f.intersects(e.image(j)))
                .expect("touching images share a hyperedge");
            edge_of_pair.insert((i, j), edge);
        }
    }
    Ok(PairAssignment { k, edge_of_pair })
}

/// Layout of the lifted instance: which parts feed each variable and how
/// tuples are coded.
#[derive(Debug, Clone)]
pub struct PartitionMap {
    pub base_n: usize,
    pub parts: usize,
    /// per hypergraph vertex: the clique vertices mapped onto it, ascending
    pub preimages: Vec<Vec<usize>>,
}

/// The compiled instance plus everything needed to audit it.
#[derive(Debug, Clone)]
pub struct ReductionOutput<V> {
    pub instance: SumProdInstance<V>,
    pub assignment: PairAssignment,
    pub partition: PartitionMap,
    /// weak edge depth of the embedding; the instance has O(n^depth) tuples
    pub depth_bound: usize,
}

/// Compile a k-partite clique instance into a sum-of-product input via the
/// embedding: for each hyperedge, enumerate the cliques across the parts
/// whose images meet the edge, code each clique's projection onto every
/// variable as a tuple over the original vertex ids, and weight the entry
/// by the product of the pair weights routed through that edge.
pub fn build_instance<S: Semiring>(
    h: &Hypergraph,
    e: &Embedding,
    g: &KPartiteGraph<S::Value>,
    semiring: &S,
) -> Result<ReductionOutput<S::Value>> {
    let report = validate_embedding(h, e)?;
    if !report.valid {
        return Err(Error::input("instance construction requires a valid embedding"));
    }
    if g.parts != e.k() {
        return Err(Error::input(format!(
            "lift has {} parts but the embedding maps a {}-clique",
            g.parts,
            e.k()
        )));
    }
    let assignment = assign_pairs(h, e)?;
    let n = g.base_n;
    let k = e.k();
    let preimages: Vec<Vec<usize>> =
        (0..h.vertex_count()).map(|v| e.preimage(v)).collect();

    let mut tables: Vec<FactorTable<S::Value>> = Vec::new();
    for (edge_idx, &edge) in h.edges().iter().enumerate() {
        // clique vertices whose image meets this edge, ascending
        let members: Vec<usize> =
            (0..k).filter(|&i| e.image(i).intersects(edge)).collect();
        let routed = assignment.pairs_on_edge(edge_idx);
        let edge_vars: Vec<usize> = edge.iter().collect();

        let mut entries: Vec<(Vec<u64>, S::Value)> = Vec::new();
        // enumerate cliques across the parts of `members` by ordered
        // backtracking over the lifted adjacency
        let mut picks: Vec<usize> = Vec::with_capacity(members.len());
        enumerate_part_cliques(g, &members, 0, &mut picks, &mut |picks| {
            let mut value = semiring.one();
            for &(i, j) in &routed {
                let a = picks[members.iter().position(|&m| m == i).expect("routed pair member")];
                let b = picks[members.iter().position(|&m| m == j).expect("routed pair member")];
                let u = g.vertex(i, a);
                let v = g.vertex(j, b);
                let w = g.graph.weight(u, v).expect("clique pairs are adjacent");
                value = semiring.times(&value, w);
            }
            if semiring.is_zero(&value) {
                return;
            }
            let tuple: Vec<u64> = edge_vars
                .iter()
                .map(|&x| {
                    // code the projection onto psi^-1(x) in base n
                    preimages[x].iter().fold(0u64, |acc, &i| {
                        let pos = members.iter().position(|&m| m == i).expect("preimage member");
                        acc * n as u64 + picks[pos] as u64
                    })
                })
                .collect();
            entries.push((tuple, value));
        });
        tables.push(FactorTable { entries });
    }

    let mut domains: Vec<Vec<u64>> = vec![Vec::new(); h.vertex_count()];
    for (edge_idx, table) in tables.iter().enumerate() {
        let edge_vars: Vec<usize> = h.edges()[edge_idx].iter().collect();
        for (tuple, _) in &table.entries {
            for (pos, &x) in edge_vars.iter().enumerate() {
                domains[x].push(tuple[pos]);
            }
        }
    }
    for dom in domains.iter_mut() {
        dom.sort_unstable();
        dom.dedup();
        if dom.is_empty() {
            dom.push(0); // variable with an empty table; instance aggregates to zero
        }
    }

    let instance = SumProdInstance::new(h.clone(), domains, tables, semiring)?;
    Ok(ReductionOutput {
        instance,
        assignment,
        partition: PartitionMap { base_n: n, parts: g.parts, preimages },
        depth_bound: report.wed,
    })
}

/// Backtracking over one original vertex per part in `members` order; each
/// new pick must be lift-adjacent to all earlier picks.
fn enumerate_part_cliques<V>(
    g: &KPartiteGraph<V>,
    members: &[usize],
    depth: usize,
    picks: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if depth == members.len() {
        emit(picks);
        return;
    }
    let part = members[depth];
    for a in 0..g.base_n {
        let u = g.vertex(part, a);
        let ok = (0..depth).all(|d| {
            let v = g.vertex(members[d], picks[d]);
            g.graph.has_edge(u, v)
        });
        if ok {
            picks.push(a);
            enumerate_part_cliques(g, members, depth + 1, picks, emit);
            picks.pop();
        }
    }
}

/// Both sides of the reduction identity.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport<V> {
    pub lhs: V,
    pub rhs: V,
    pub equal: bool,
}

/// Compile the clique instance through the order-restricted lift, evaluate
/// it, and compare with direct weighted clique aggregation on the original
/// graph. The two sides aggregate exactly the same terms.
pub fn roundtrip_check<S: Semiring>(
    h: &Hypergraph,
    e: &Embedding,
    g: &WeightedGraph<S::Value>,
    semiring: &S,
) -> Result<RoundtripReport<S::Value>> {
    let k = e.k();
    let lift = kpartite_lift_canonical(g, k, semiring)?;
    let out = build_instance(h, e, &lift, semiring)?;
    let lhs = eval_bruteforce(&out.instance, semiring)?;
    let rhs = kclique_direct(g, k, semiring)?;
    let equal = lhs == rhs;
    Ok(RoundtripReport { lhs, rhs, equal })
}
