//! Semiring abstraction and sum-of-product evaluation over hypergraph
//! query structures: exhaustive backtracking for any shape, join-forest
//! message passing for acyclic shapes, direct weighted clique aggregation,
//! and the heavy-light algorithm for the boat query.

mod clique;
mod eval;
mod heavy_light;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub use clique::kclique_direct;
pub use eval::{eval_acyclic, eval_bruteforce};
pub use heavy_light::solve_boat_heavy_light;
pub use text::{
    parse_instance, parse_weighted_graph, write_instance, write_weighted_graph, TextSemiring,
};

/// A commutative semiring: both operations commutative and associative,
/// `times` distributing over `plus`, `zero` annihilating under `times`.
pub trait Semiring {
    type Value: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn plus(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn times(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn is_zero(&self, a: &Self::Value) -> bool {
        *a == self.zero()
    }
}

/// Values of the tropical semiring: integers with a distinct infinity.
/// Addition saturates at the i64 range ends.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Tropical {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Finite(v) => write!(f, "{v}"),
            Tropical::Infinite => write!(f, "inf"),
        }
    }
}

/// Set semantics: or / and over {0, 1}.
#[derive(Debug, Clone, Copy, Default)]
pub struct BooleanSemiring;

impl Semiring for BooleanSemiring {
    type Value = bool;
    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn plus(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn times(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
}

/// Bag semantics: natural numbers with + and *. Overflow panics rather
/// than wrapping; desk-scale instances stay far below the limit.
#[derive(Debug, Clone, Copy, Default)]
pub struct CountingSemiring;

impl Semiring for CountingSemiring {
    type Value = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn plus(&self, a: &u64, b: &u64) -> u64 {
        a.checked_add(*b).expect("counting semiring overflow")
    }
    fn times(&self, a: &u64, b: &u64) -> u64 {
        a.checked_mul(*b).expect("counting semiring overflow")
    }
}

/// Min-plus over integers with infinity; computes minimum solution weights.
#[derive(Debug, Clone, Copy, Default)]
pub struct TropicalSemiring;

impl Semiring for TropicalSemiring {
    type Value = Tropical;
    fn zero(&self) -> Tropical {
        Tropical::Infinite
    }
    fn one(&self) -> Tropical {
        Tropical::Finite(0)
    }
    fn plus(&self, a: &Tropical, b: &Tropical) -> Tropical {
        *a.min(b)
    }
    fn times(&self, a: &Tropical, b: &Tropical) -> Tropical {
        match (a, b) {
            (Tropical::Finite(x), Tropical::Finite(y)) => Tropical::Finite(x.saturating_add(*y)),
            _ => Tropical::Infinite,
        }
    }
}

/// Max-times over the naturals; a further commutative semiring used to
/// exercise semiring-generic code paths.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxTimesSemiring;

impl Semiring for MaxTimesSemiring {
    type Value = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn plus(&self, a: &u64, b: &u64) -> u64 {
        *a.max(b)
    }
    fn times(&self, a: &u64, b: &u64) -> u64 {
        a.checked_mul(*b).expect("max-times semiring overflow")
    }
}

/// One factor table: tuples over the edge's variables (in increasing
/// vertex order) mapped to non-zero semiring values, sorted by tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorTable<V> {
    pub entries: Vec<(Vec<u64>, V)>,
}

impl<V> FactorTable<V> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A sum-of-product input: per-variable finite domains and one factor
/// table per hyperedge. Only non-zero entries are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SumProdInstance<V> {
    pub hypergraph: Hypergraph,
    pub domains: Vec<Vec<u64>>,
    pub factors: Vec<FactorTable<V>>,
}

impl<V: Clone + PartialEq + fmt::Debug> SumProdInstance<V> {
    /// Build and validate; entries are sorted and zero values rejected.
    pub fn new<S: Semiring<Value = V>>(
        hypergraph: Hypergraph,
        domains: Vec<Vec<u64>>,
        mut factors: Vec<FactorTable<V>>,
        semiring: &S,
    ) -> Result<Self> {
        for t in factors.iter_mut() {
            t.entries.sort_by(|a, b| a.0.cmp(&b.0));
        }
        let inst = SumProdInstance { hypergraph, domains, factors };
        inst.validate(semiring)?;
        Ok(inst)
    }

    pub fn validate<S: Semiring<Value = V>>(&self, semiring: &S) -> Result<()> {
        let n = self.hypergraph.vertex_count();
        if self.domains.len() != n {
            return Err(Error::input(format!(
                "{} domains for {} variables",
                self.domains.len(),
                n
            )));
        }
        if self.factors.len() != self.hypergraph.edge_count() {
            return Err(Error::input(format!(
                "{} factor tables for {} hyperedges",
                self.factors.len(),
                self.hypergraph.edge_count()
            )));
        }
        for (d, dom) in self.domains.iter().enumerate() {
            if dom.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::input(format!(
                    "domain of {} must be sorted and duplicate-free",
                    self.hypergraph.label(d)
                )));
            }
        }
        for (idx, table) in self.factors.iter().enumerate() {
            let vars: Vec<usize> = self.hypergraph.edges()[idx].iter().collect();
            let mut prev: Option<&Vec<u64>> = None;
            for (tuple, value) in &table.entries {
                if tuple.len() != vars.len() {
                    return Err(Error::input(format!(
                        "tuple arity {} does not match edge #{idx} arity {}",
                        tuple.len(),
                        vars.len()
                    )));
                }
                for (pos, &var) in vars.iter().enumerate() {
                    if !self.domains[var].contains(&tuple[pos]) {
                        return Err(Error::input(format!(
                            "value {} outside the domain of {}",
                            tuple[pos],
                            self.hypergraph.label(var)
                        )));
                    }
                }
                if semiring.is_zero(value) {
                    return Err(Error::input(format!(
                        "zero value stored in factor #{idx}"
                    )));
                }
                if let Some(p) = prev {
                    if p >= tuple {
                        return Err(Error::input(format!(
                            "factor #{idx} has unsorted or duplicate tuples"
                        )));
                    }
                }
                prev = Some(tuple);
            }
        }
        Ok(())
    }

    /// Total number of stored tuples (the input size).
    pub fn size(&self) -> usize {
        self.factors.iter().map(FactorTable::len).sum()
    }
}

/// An edge-weighted undirected graph with semiring values; absent pairs
/// are semiring zero (non-edges). No self loops, no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<V> {
    n: usize,
    weights: BTreeMap<(usize, usize), V>,
}

impl<V: Clone + PartialEq + fmt::Debug> WeightedGraph<V> {
    pub fn new<S: Semiring<Value = V>>(
        n: usize,
        entries: impl IntoIterator<Item = ((usize, usize), V)>,
        semiring: &S,
    ) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for ((u, v), w) in entries {
            if u == v {
                return Err(Error::input(format!("self loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range")));
            }
            if semiring.is_zero(&w) {
                return Err(Error::input("zero weight stored as an edge"));
            }
            let key = (u.min(v), u.max(v));
            if weights.insert(key, w).is_some() {
                return Err(Error::input(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(WeightedGraph { n, weights })
    }
}

impl<V> WeightedGraph<V> {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&V> {
        self.weights.get(&(u.min(v), u.max(v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &V)> {
        self.weights.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexSet;

    #[test]
    fn semiring_axioms_on_sampled_values() {
        fn check<S: Semiring>(s: &S, values: &[S::Value]) {
            for a in values {
                for b in values {
                    assert_eq!(s.plus(a, b), s.plus(b, a));
                    assert_eq!(s.times(a, b), s.times(b, a));
                    assert_eq!(s.times(a, &s.zero()), s.zero());
                    for c in values {
                        assert_eq!(
                            s.plus(&s.plus(a, b), c),
                            s.plus(a, &s.plus(b, c))
                        );
                        assert_eq!(
                            s.times(&s.times(a, b), c),
                            s.times(a, &s.times(b, c))
                        );
                        // distributivity
                        assert_eq!(
                            s.times(a, &s.plus(b, c)),
                            s.plus(&s.times(a, b), &s.times(a, c))
                        );
                    }
                }
                assert_eq!(s.plus(a, &s.zero()), a.clone());
                assert_eq!(s.times(a, &s.one()), a.clone());
            }
        }
        check(&BooleanSemiring, &[false, true]);
        check(&CountingSemiring, &[0, 1, 2, 3, 7]);
        check(
            &TropicalSemiring,
            &[
                Tropical::Infinite,
                Tropical::Finite(-2),
                Tropical::Finite(0),
                Tropical::Finite(5),
            ],
        );
        check(&MaxTimesSemiring, &[0, 1, 2, 5]);
    }

    #[test]
    fn instance_validation() {
        let h = Hypergraph::new(
            2,
            vec![VertexSet::from_iter([0, 1])],
        )
        .unwrap();
        let ok = SumProdInstance::new(
            h.clone(),
            vec![vec![0, 1], vec![0, 1]],
            vec![FactorTable { entries: vec![(vec![0, 1], true), (vec![1, 0], true)] }],
            &BooleanSemiring,
        );
        assert!(ok.is_ok());
        assert_eq!(ok.unwrap().size(), 2);

        // zero values may not be stored
        let bad = SumProdInstance::new(
            h.clone(),
            vec![vec![0, 1], vec![0, 1]],
            vec![FactorTable { entries: vec![(vec![0, 1], false)] }],
            &BooleanSemiring,
        );
        assert!(bad.is_err());

        // arity mismatch
        let bad = SumProdInstance::new(
            h.clone(),
            vec![vec![0, 1], vec![0, 1]],
            vec![FactorTable { entries: vec![(vec![0], true)] }],
            &BooleanSemiring,
        );
        assert!(bad.is_err());

        // out-of-domain value
        let bad = SumProdInstance::new(
            h,
            vec![vec![0, 1], vec![0, 1]],
            vec![FactorTable { entries: vec![(vec![0, 9], true)] }],
            &BooleanSemiring,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn weighted_graph_rules() {
        let s = CountingSemiring;
        assert!(WeightedGraph::new(3, [((0, 0), 1)], &s).is_err());
        assert!(WeightedGraph::new(3, [((0, 1), 0)], &s).is_err());
        assert!(WeightedGraph::new(3, [((0, 1), 1), ((1, 0), 2)], &s).is_err());
        let g = WeightedGraph::new(3, [((2, 0), 5)], &s).unwrap();
        assert_eq!(g.weight(0, 2), Some(&5));
        assert_eq!(g.weight(2, 0), Some(&5));
        assert!(!g.has_edge(0, 1));
    }
}
