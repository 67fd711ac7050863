//! Cross-module invariants: relations between the embedding power and the
//! width measures, evaluator agreement on randomized acyclic instances,
//! and permutation-independence of the aggregate.

use rayon::prelude::*;

use embtool_core::embedding::{emb_fractional, validate_embedding, Embedding, Family};
use embtool_core::engine::{
    eval_acyclic, eval_bruteforce, BooleanSemiring, CountingSemiring, FactorTable, Semiring,
    SumProdInstance, Tropical, TropicalSemiring,
};
use embtool_core::hypergraph::{connected_hypergraphs, Hypergraph, VertexSet};
use embtool_core::ratlp::{rat, Rational};
use embtool_core::widths::{
    coverage_function, fhw, is_chordal, proper_tree_decompositions, width_lower_bound,
};

mod support;
use support::{Rng, SplitMix};

fn small_corpus() -> Vec<Hypergraph> {
    let mut corpus = Vec::new();
    for n in 1..=4 {
        corpus.extend(connected_hypergraphs(n, 5));
    }
    corpus
}

/// The embedding power never exceeds the fractional hypertree width, and
/// agrees with it exactly on chordal hypergraphs. A unique proper bag set
/// characterizes chordality.
#[test]
fn embedding_power_against_widths_on_small_corpus() {
    let corpus = small_corpus();
    let failures: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, h)| {
            let emb = emb_fractional(h).unwrap().embedding_power();
            let width = fhw(h).unwrap();
            if emb > width {
                return Some(format!("#{i}: emb {emb} > fhw {width}"));
            }
            let chordal = is_chordal(h);
            if chordal && emb != width {
                return Some(format!("#{i}: chordal but emb {emb} != fhw {width}"));
            }
            let unique_bags = proper_tree_decompositions(h).unwrap().len() == 1;
            if unique_bags != chordal {
                return Some(format!("#{i}: unique bag set {unique_bags} vs chordal {chordal}"));
            }
            None
        })
        .collect();
    assert!(failures.is_empty(), "{} members: {failures:?}", corpus.len());
}

/// The coverage function of an optimal witness certifies the ratio k/wed
/// exactly; for any valid embedding the certified bound is at least it.
#[test]
fn coverage_certificates_reach_the_witness_ratio() {
    for fam in [
        Family::Cycle(4),
        Family::Cycle(5),
        Family::Cycle(6),
        Family::CompleteBipartite(2, 2),
        Family::CompleteBipartite(3, 3),
        Family::HyperBoat,
        Family::Boat,
    ] {
        let h = fam.hypergraph().unwrap();
        let e = fam.witness_embedding().unwrap();
        let report = validate_embedding(&h, &e).unwrap();
        let f = coverage_function(&h, &e).unwrap();
        let bound = width_lower_bound(&h, &f).unwrap();
        let ratio = rat(e.k() as i64, report.wed as i64);
        assert!(bound >= ratio, "{fam:?}: bound {bound} below {ratio}");
        assert_eq!(bound, ratio, "{fam:?}: witness certificate should be tight");
    }

    // arbitrary valid embeddings still certify at least their own ratio
    let h = Family::HyperBoat.hypergraph().unwrap();
    let mut rng = SplitMix::new(0xC0FFEE);
    let subsets = h.connected_subsets();
    let mut checked = 0;
    while checked < 25 {
        let k = 1 + rng.below(4) as usize;
        let images: Vec<VertexSet> = (0..k)
            .map(|_| subsets[rng.below(subsets.len() as u64) as usize])
            .collect();
        let e = Embedding::new(images).unwrap();
        let report = validate_embedding(&h, &e).unwrap();
        if !report.valid {
            continue;
        }
        let f = coverage_function(&h, &e).unwrap();
        let bound = width_lower_bound(&h, &f).unwrap();
        assert!(bound >= rat(k as i64, report.wed as i64));
        checked += 1;
    }
}

/// Build a random acyclic instance: edges are attached one at a time,
/// each overlapping the union of its predecessors in a single join-tree
/// fashion (an ear decomposition in reverse).
fn random_acyclic_instance<S: Semiring>(
    rng: &mut SplitMix,
    semiring: &S,
    weight: impl Fn(&mut SplitMix) -> S::Value,
) -> SumProdInstance<S::Value>
where
    S::Value: Clone + PartialEq + std::fmt::Debug,
{
    let edge_count = 2 + rng.below(3) as usize;
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut next_vertex = 0usize;
    let mut fresh = |next_vertex: &mut usize| {
        let v = *next_vertex;
        *next_vertex += 1;
        v
    };
    // root edge
    let mut first = VertexSet::EMPTY;
    for _ in 0..(1 + rng.below(3)) {
        first.insert(fresh(&mut next_vertex));
    }
    edges.push(first);
    for _ in 1..edge_count {
        // a child overlaps one existing edge and adds private vertices
        let host = edges[rng.below(edges.len() as u64) as usize];
        let host_vertices: Vec<usize> = host.iter().collect();
        let mut e = VertexSet::EMPTY;
        let overlap = 1 + rng.below(host_vertices.len() as u64) as usize;
        for idx in 0..overlap {
            e.insert(host_vertices[idx]);
        }
        for _ in 0..rng.below(3) {
            e.insert(fresh(&mut next_vertex));
        }
        if edges.contains(&e) {
            e.insert(fresh(&mut next_vertex));
        }
        edges.push(e);
    }
    let h = Hypergraph::new(next_vertex, edges).unwrap();

    let domain: Vec<u64> = (0..4).collect();
    let domains = vec![domain.clone(); h.vertex_count()];
    let mut factors = Vec::new();
    for &edge in h.edges() {
        let arity = edge.len();
        let mut entries = Vec::new();
        let count = 1 + rng.below(10);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..count {
            let tuple: Vec<u64> = (0..arity).map(|_| rng.below(4)).collect();
            if !seen.insert(tuple.clone()) {
                continue;
            }
            let w = weight(rng);
            if !semiring.is_zero(&w) {
                entries.push((tuple, w));
            }
        }
        factors.push(FactorTable { entries });
    }
    SumProdInstance::new(h, domains, factors, semiring).unwrap()
}

#[test]
fn acyclic_message_passing_agrees_with_exhaustive_on_random_instances() {
    for i in 0..200u64 {
        let mut rng = SplitMix::new(0xACC + i);
        let inst = random_acyclic_instance(&mut rng, &BooleanSemiring, |r| r.below(2) == 0);
        assert_eq!(
            eval_acyclic(&inst, &BooleanSemiring).unwrap(),
            eval_bruteforce(&inst, &BooleanSemiring).unwrap(),
            "boolean case {i}"
        );

        let mut rng = SplitMix::new(0xCC0 + i);
        let inst = random_acyclic_instance(&mut rng, &CountingSemiring, |r| 1 + r.below(4));
        assert_eq!(
            eval_acyclic(&inst, &CountingSemiring).unwrap(),
            eval_bruteforce(&inst, &CountingSemiring).unwrap(),
            "counting case {i}"
        );

        let mut rng = SplitMix::new(0x770 + i);
        let inst = random_acyclic_instance(&mut rng, &TropicalSemiring, |r| {
            Tropical::Finite(r.below(9) as i64)
        });
        assert_eq!(
            eval_acyclic(&inst, &TropicalSemiring).unwrap(),
            eval_bruteforce(&inst, &TropicalSemiring).unwrap(),
            "tropical case {i}"
        );
    }
}

/// Reordering the hyperedges (and their tables) never changes the
/// aggregate.
#[test]
fn aggregate_is_independent_of_edge_order() {
    let mut rng = SplitMix::new(0x0EDE);
    for i in 0..40 {
        let inst = random_acyclic_instance(&mut rng, &CountingSemiring, |r| 1 + r.below(4));
        let m = inst.hypergraph.edge_count();
        // rotate and reverse the edge list
        let perm: Vec<usize> = (0..m).map(|j| (j + 1 + i % m) % m).rev().collect();
        let edges: Vec<VertexSet> = perm.iter().map(|&j| inst.hypergraph.edges()[j]).collect();
        let labels = inst.hypergraph.labels().to_vec();
        let h2 = Hypergraph::with_labels(labels, edges).unwrap();
        let factors: Vec<FactorTable<u64>> = perm
            .iter()
            .map(|&j| FactorTable { entries: inst.factors[j].entries.clone() })
            .collect();
        let permuted =
            SumProdInstance::new(h2, inst.domains.clone(), factors, &CountingSemiring).unwrap();
        assert_eq!(
            eval_bruteforce(&inst, &CountingSemiring).unwrap(),
            eval_bruteforce(&permuted, &CountingSemiring).unwrap(),
        );
    }
}

/// Scaling a fractional witness by its denominator lcm gives an integral
/// embedding whose ratio reproduces the power exactly.
#[test]
fn witness_scale_produces_matching_integral_embedding() {
    for fam in [
        Family::Cycle(5),
        Family::Cycle(6),
        Family::HyperBoat,
        Family::CompleteBipartite(2, 3),
        Family::Boat,
    ] {
        let h = fam.hypergraph().unwrap();
        let w = emb_fractional(&h).unwrap();
        let e = w.integral_embedding(100_000).expect("scale is small");
        let report = validate_embedding(&h, &e).unwrap();
        assert!(report.valid);
        assert_eq!(
            rat(e.k() as i64, report.wed as i64),
            w.embedding_power(),
            "{fam:?}"
        );
    }
}

/// The witness ratio of every catalogued construction matches its
/// hypergraph's exact embedding power.
#[test]
fn catalogued_witnesses_achieve_the_exact_power() {
    for fam in [
        Family::Cycle(3),
        Family::Cycle(6),
        Family::Cycle(7),
        Family::CompleteBipartite(2, 4),
        Family::CompleteBipartite(3, 3),
        Family::Hyperclique(4, 3),
        Family::AlmostClique(5, 2),
        Family::HyperBoat,
        Family::Boat,
    ] {
        let h = fam.hypergraph().unwrap();
        let e = fam.witness_embedding().unwrap();
        let report = validate_embedding(&h, &e).unwrap();
        assert!(report.valid);
        let power = emb_fractional(&h).unwrap().embedding_power();
        assert_eq!(
            rat(e.k() as i64, report.wed as i64),
            power,
            "{fam:?}: witness does not achieve the power"
        );
        let _: &Rational = &power;
    }
}
