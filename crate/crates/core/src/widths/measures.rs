//! Fractional edge covers, fractional hypertree width, and submodular
//! width lower bounds certified by explicit set functions.

use num_traits::{One, Zero};

use super::{proper_tree_decompositions, SetFunction};
use crate::embedding::{validate_embedding, Embedding};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::ratlp::{rat, solve_lp, Constraint, LinearProgram, Rational, Relation, Sense};

/// Exact minimum fractional edge cover of the vertices in `s`: one weight
/// per hyperedge, every vertex of `s` covered with total weight at least
/// one.
pub fn fractional_edge_cover(h: &Hypergraph, s: VertexSet) -> Result<Rational> {
    if s.is_empty() {
        return Err(Error::input("fractional edge cover of the empty set"));
    }
    if !s.is_subset_of(h.all_vertices()) {
        return Err(Error::input("vertex set has out-of-range indices"));
    }
    let m = h.edge_count();
    let mut constraints = Vec::new();
    for v in s.iter() {
        let coeffs: Vec<Rational> = h
            .edges()
            .iter()
            .map(|e| if e.contains(v) { Rational::one() } else { Rational::zero() })
            .collect();
        constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::one()));
    }
    let lp = LinearProgram {
        sense: Sense::Minimize,
        objective: vec![Rational::one(); m],
        constraints,
        num_vars: m,
    };
    match solve_lp(&lp)? {
        crate::ratlp::LpOutcome::Optimal(sol) => Ok(sol.value),
        _ => Err(Error::input("some vertex of the set lies in no hyperedge")),
    }
}

/// Exact fractional hypertree width: minimum over proper tree
/// decompositions of the maximum fractional edge cover of a bag.
pub fn fhw(h: &Hypergraph) -> Result<Rational> {
    let tds = proper_tree_decompositions(h)?;
    let mut best: Option<Rational> = None;
    for bags in &tds {
        let mut width: Option<Rational> = None;
        for &bag in bags {
            let c = fractional_edge_cover(h, bag)?;
            if width.as_ref().map_or(true, |w| c > *w) {
                width = Some(c);
            }
        }
        let width = width.ok_or_else(|| Error::input("decomposition with no bags"))?;
        if best.as_ref().map_or(true, |b| width < *b) {
            best = Some(width);
        }
    }
    best.ok_or_else(|| Error::input("no proper tree decompositions"))
}

/// The coverage function of a valid embedding: the fraction of clique
/// vertices whose image meets the subset, scaled by the embedding's weak
/// edge depth. Submodular, monotone, and edge-dominated by construction.
pub fn coverage_function(h: &Hypergraph, e: &Embedding) -> Result<SetFunction> {
    let n = h.vertex_count();
    if n > 16 {
        return Err(Error::resource("coverage tables support at most 16 vertices"));
    }
    let report = validate_embedding(h, e)?;
    if !report.valid {
        return Err(Error::input("coverage function requires a valid embedding"));
    }
    let alpha = rat(report.wed as i64, 1);
    Ok(SetFunction::from_fn(n, |s| {
        let touched = e.images().iter().filter(|img| img.intersects(s)).count();
        rat(touched as i64, 1) / &alpha
    }))
}

/// Certification report for a set function used as a width certificate.
#[derive(Debug, Clone)]
pub struct SetFunctionReport {
    pub monotone: bool,
    pub submodular: bool,
    pub edge_dominated: bool,
    /// a witness pair of subsets for the first failed property
    pub counterexample: Option<(VertexSet, VertexSet)>,
}

impl SetFunctionReport {
    pub fn all_hold(&self) -> bool {
        self.monotone && self.submodular && self.edge_dominated
    }
}

/// Check monotonicity, submodularity (elementwise exchange form), and
/// edge-domination (`f(e) <= 1`) exactly.
pub fn certify_set_function(h: &Hypergraph, f: &SetFunction) -> Result<SetFunctionReport> {
    let n = h.vertex_count();
    if f.n != n {
        return Err(Error::input("set function is over a different vertex count"));
    }
    if n > 9 {
        return Err(Error::resource("certification supports at most 9 vertices"));
    }
    let mut report = SetFunctionReport {
        monotone: true,
        submodular: true,
        edge_dominated: true,
        counterexample: None,
    };
    'mono: for bits in 0..(1u32 << n) {
        let s = VertexSet::from_bits(bits);
        for v in 0..n {
            if s.contains(v) {
                continue;
            }
            let mut t = s;
            t.insert(v);
            if f.get(s) > f.get(t) {
                report.monotone = false;
                report.counterexample = Some((s, t));
                break 'mono;
            }
        }
    }
    'sub: for bits in 0..(1u32 << n) {
        let s = VertexSet::from_bits(bits);
        for u in 0..n {
            if s.contains(u) {
                continue;
            }
            for v in (u + 1)..n {
                if s.contains(v) {
                    continue;
                }
                let mut su = s;
                su.insert(u);
                let mut sv = s;
                sv.insert(v);
                let mut suv = su;
                suv.insert(v);
                if f.get(su).clone() + f.get(sv) < f.get(suv).clone() + f.get(s) {
                    report.submodular = false;
                    if report.counterexample.is_none() {
                        report.counterexample = Some((su, sv));
                    }
                    break 'sub;
                }
            }
        }
    }
    for &e in h.edges() {
        if f.get(e) > &Rational::one() {
            report.edge_dominated = false;
            if report.counterexample.is_none() {
                report.counterexample = Some((e, e));
            }
            break;
        }
    }
    Ok(report)
}

/// A certified lower bound on the submodular width: the minimum over
/// proper bag sets of the maximum of `f` over the bags. `f` must certify
/// as monotone, submodular, and edge-dominated with `f(empty) = 0`.
pub fn width_lower_bound(h: &Hypergraph, f: &SetFunction) -> Result<Rational> {
    let report = certify_set_function(h, f)?;
    if !report.all_hold() {
        return Err(Error::input(format!(
            "set function fails certification (monotone={}, submodular={}, edge_dominated={})",
            report.monotone, report.submodular, report.edge_dominated
        )));
    }
    if !f.get(VertexSet::EMPTY).is_zero() {
        return Err(Error::input("width certificates need f(empty) = 0"));
    }
    let tds = proper_tree_decompositions(h)?;
    let mut best: Option<Rational> = None;
    for bags in &tds {
        let width = bags
            .iter()
            .map(|&b| f.get(b).clone())
            .max()
            .ok_or_else(|| Error::input("decomposition with no bags"))?;
        if best.as_ref().map_or(true, |b| width < *b) {
            best = Some(width);
        }
    }
    best.ok_or_else(|| Error::input("no proper tree decompositions"))
}

/// Does every proper tree decomposition contain a bag that meets all
/// images of the embedding? This must hold for every valid embedding; a
/// falsifier would be a bug.
pub fn has_full_contact_bag_in_every_td(h: &Hypergraph, e: &Embedding) -> Result<bool> {
    let report = validate_embedding(h, e)?;
    if !report.valid {
        return Err(Error::input("contact-bag check requires a valid embedding"));
    }
    let tds = proper_tree_decompositions(h)?;
    Ok(tds.iter().all(|bags| {
        bags.iter()
            .any(|&b| e.images().iter().all(|img| img.intersects(b)))
    }))
}

/// The explicit edge-dominated monotone submodular function on the
/// hyper-boat query whose width lower bound is exactly 2. Clauses are
/// matched most-specific first; the value depends only on how many
/// vertices are taken from each side.
pub fn hyper_boat_set_function() -> (Hypergraph, SetFunction) {
    let h = crate::embedding::Family::HyperBoat
        .hypergraph()
        .expect("hyper-boat construction is valid");
    let ys = VertexSet::from_iter([0usize, 1, 2]);
    let zs = VertexSet::from_iter([3usize, 4, 5]);
    let edges: Vec<VertexSet> = h.edges().to_vec();
    let f = SetFunction::from_fn(6, move |s| {
        let a = s.intersection(ys).len();
        let b = s.intersection(zs).len();
        // listed clauses, most specific first
        if s.is_empty() {
            return Rational::zero(); // empty set
        }
        if a + b == 1 {
            return rat(1, 2); // singletons
        }
        if edges.contains(&s) {
            return Rational::one(); // hyperedges
        }
        if (a == 3 && b == 1) || (b == 3 && a == 1) {
            return rat(3, 2); // one full side plus one vertex
        }
        if (a == 3 && b >= 2) || (b == 3 && a >= 2) {
            return rat(2, 1); // one full side plus two or more
        }
        if a + b == 2 {
            return Rational::one(); // remaining pairs
        }
        if (a == 2 && b == 1) || (a == 1 && b == 2) {
            return rat(3, 2); // mixed triples
        }
        if a == 2 && b == 2 {
            return rat(2, 1); // two from each side
        }
        unreachable!("all subsets of the six vertices are covered");
    });
    (h, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Family;
    use crate::ratlp::rat_int;
    use crate::testutil::{cycle, star_with_triple};

    #[test]
    fn edge_cover_cases() {
        let tri = cycle(3);
        assert_eq!(fractional_edge_cover(&tri, tri.all_vertices()).unwrap(), rat(3, 2));

        let h = star_with_triple();
        // a set inside one hyperedge has cover 1
        assert_eq!(
            fractional_edge_cover(&h, VertexSet::from_iter([0, 1])).unwrap(),
            rat_int(1)
        );
        assert!(fractional_edge_cover(&h, VertexSet::EMPTY).is_err());

        // hyperclique(l, k) covers all vertices at l/k
        for (l, k) in [(3usize, 2usize), (4, 2), (4, 3), (5, 4)] {
            let h = Family::Hyperclique(l, k).hypergraph().unwrap();
            assert_eq!(
                fractional_edge_cover(&h, h.all_vertices()).unwrap(),
                rat(l as i64, k as i64),
                "H_{l}_{k}"
            );
        }
    }

    #[test]
    fn fhw_cases() {
        // acyclic hypergraphs have width 1
        let path = Hypergraph::new(
            3,
            vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([1, 2])],
        )
        .unwrap();
        assert_eq!(fhw(&path).unwrap(), rat_int(1));

        assert_eq!(fhw(&Family::AlmostClique(5, 2).hypergraph().unwrap()).unwrap(), rat_int(2));
        assert_eq!(fhw(&Family::HyperBoat.hypergraph().unwrap()).unwrap(), rat_int(2));
        assert_eq!(fhw(&cycle(3)).unwrap(), rat(3, 2));
    }

    #[test]
    fn coverage_function_is_certified_and_scaled() {
        let h = star_with_triple();
        let e = Embedding::from_preimages(5, &[vec![1], vec![2], vec![3], vec![4, 5]]).unwrap();
        let f = coverage_function(&h, &e).unwrap();
        assert_eq!(f.get(VertexSet::EMPTY), &Rational::zero());
        assert_eq!(f.get(h.all_vertices()), &rat(5, 3));
        for &edge in h.edges() {
            assert!(f.get(edge) <= &Rational::one());
        }
        let report = certify_set_function(&h, &f).unwrap();
        assert!(report.all_hold(), "{report:?}");

        // invalid embeddings are rejected
        let bad = Embedding::new(vec![VertexSet::from_iter([0]), VertexSet::from_iter([3])])
            .unwrap();
        let c6 = cycle(6);
        let bad_for_c6 =
            Embedding::new(vec![VertexSet::singleton(0), VertexSet::singleton(3)]).unwrap();
        assert!(coverage_function(&c6, &bad_for_c6).is_err());
        let _ = bad;
    }

    #[test]
    fn cardinality_function_is_not_edge_dominated() {
        let h = Hypergraph::new(2, vec![VertexSet::from_iter([0, 1])]).unwrap();
        let f = SetFunction::from_fn(2, |s| rat_int(s.len() as i64));
        let report = certify_set_function(&h, &f).unwrap();
        assert!(report.monotone && report.submodular);
        assert!(!report.edge_dominated);
    }

    #[test]
    fn hyper_boat_certificate_gives_width_two() {
        let (h, f) = hyper_boat_set_function();
        assert_eq!(f.get(VertexSet::singleton(0)), &rat(1, 2));
        assert_eq!(f.get(VertexSet::EMPTY), &Rational::zero());
        assert_eq!(f.get(VertexSet::from_iter([0, 1, 3, 4])), &rat_int(2));
        let report = certify_set_function(&h, &f).unwrap();
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(width_lower_bound(&h, &f).unwrap(), rat_int(2));
    }

    #[test]
    fn zero_function_has_zero_width_bound() {
        let h = cycle(4);
        let f = SetFunction::from_fn(4, |_| Rational::zero());
        assert_eq!(width_lower_bound(&h, &f).unwrap(), Rational::zero());
    }

    #[test]
    fn contact_bag_property_holds_for_valid_embeddings() {
        let h = star_with_triple();
        let e = Embedding::from_preimages(5, &[vec![1], vec![2], vec![3], vec![4, 5]]).unwrap();
        assert!(has_full_contact_bag_in_every_td(&h, &e).unwrap());

        let qb = Family::Boat.hypergraph().unwrap();
        let we = Family::Boat.witness_embedding().unwrap();
        assert!(has_full_contact_bag_in_every_td(&qb, &we).unwrap());

        // k = 1 is trivially true
        let single = Embedding::from_preimages(1, &[vec![1], vec![], vec![], vec![]]).unwrap();
        assert!(has_full_contact_bag_in_every_td(&h, &single).unwrap());
    }

    #[test]
    fn hyper_boat_coverage_bound_is_seven_fourths() {
        let h = Family::HyperBoat.hypergraph().unwrap();
        let e = Family::HyperBoat.witness_embedding().unwrap();
        let f = coverage_function(&h, &e).unwrap();
        assert_eq!(width_lower_bound(&h, &f).unwrap(), rat(7, 4));
    }
}
