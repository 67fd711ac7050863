//! Embeddings of cliques into hypergraphs: validation, depth measures,
//! exact minimum weak edge depth (by exhaustive search and by integer
//! programming), the exact clique embedding power, and the catalogued
//! closed-form witness constructions for the named query families.

mod families;
mod ilp;
mod search;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{strip_comment, Hypergraph, VertexSet};
use crate::ratlp::Rational;

pub use families::Family;
pub use ilp::{emb_fractional, emb_k_curve, min_wed_ilp, weak_depth_ilp_model, weak_depth_model};
pub use search::{min_wed_bruteforce, min_wed_bruteforce_with_budget, DEFAULT_MULTISET_BUDGET};

/// A mapping from the vertices of a k-clique (numbered 1..k externally,
/// indexed 0..k-1 here) to non-empty vertex subsets of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    images: Vec<VertexSet>,
}

impl Embedding {
    pub fn new(images: Vec<VertexSet>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::input("embedding must map at least one clique vertex"));
        }
        if let Some(i) = images.iter().position(|s| s.is_empty()) {
            return Err(Error::input(format!("image of clique vertex {} is empty", i + 1)));
        }
        Ok(Embedding { images })
    }

    /// Build from inverse images: `preimages[v]` lists the 1-based clique
    /// vertices mapped to hypergraph vertex `v`.
    pub fn from_preimages(k: usize, preimages: &[Vec<usize>]) -> Result<Self> {
        let mut images = vec![VertexSet::EMPTY; k];
        for (v, clique_vertices) in preimages.iter().enumerate() {
            for &i in clique_vertices {
                if i == 0 || i > k {
                    return Err(Error::input(format!("clique vertex {i} out of range 1..{k}")));
                }
                images[i - 1].insert(v);
            }
        }
        Embedding::new(images)
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[VertexSet] {
        &self.images
    }

    pub fn image(&self, clique_vertex: usize) -> VertexSet {
        self.images[clique_vertex]
    }

    /// The 0-based clique vertices whose image contains `v`.
    pub fn preimage(&self, v: usize) -> Vec<usize> {
        (0..self.k()).filter(|&i| self.images[i].contains(v)).collect()
    }

    /// Parse the text format:
    ///
    /// ```text
    /// k: 5
    /// map 1: x1
    /// map 4: y
    /// ```
    ///
    /// Every clique vertex in 1..k must be mapped; image vertices are
    /// space-separated names from the hypergraph's label table.
    pub fn parse(text: &str, h: &Hypergraph) -> Result<Self> {
        let mut k: Option<usize> = None;
        let mut images: Vec<Option<VertexSet>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("k:") {
                if k.is_some() {
                    return Err(Error::parse(lineno, "duplicate `k:` line"));
                }
                let v: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, "`k:` expects a positive integer"))?;
                if v == 0 {
                    return Err(Error::parse(lineno, "k must be at least 1"));
                }
                k = Some(v);
                images = vec![None; v];
            } else if let Some(rest) = line.strip_prefix("map") {
                let k = k.ok_or_else(|| Error::parse(lineno, "`map` before `k:`"))?;
                let (head, tail) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(lineno, "`map` line missing `:`"))?;
                let i: usize = head
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, "`map` expects a clique vertex number"))?;
                if i == 0 || i > k {
                    return Err(Error::parse(lineno, format!("clique vertex {i} out of range 1..{k}")));
                }
                if images[i - 1].is_some() {
                    return Err(Error::parse(lineno, format!("clique vertex {i} mapped twice")));
                }
                let mut s = VertexSet::EMPTY;
                for tok in tail.split_whitespace() {
                    let v = h
                        .vertex_by_label(tok)
                        .ok_or_else(|| Error::parse(lineno, format!("unknown vertex name `{tok}`")))?;
                    s.insert(v);
                }
                if s.is_empty() {
                    return Err(Error::parse(lineno, format!("clique vertex {i} has empty image")));
                }
                images[i - 1] = Some(s);
            } else {
                return Err(Error::parse(lineno, format!("unrecognized line `{line}`")));
            }
        }
        if k.is_none() {
            return Err(Error::input("missing `k:` line"));
        }
        let mut out = Vec::with_capacity(images.len());
        for (i, img) in images.into_iter().enumerate() {
            match img {
                Some(s) => out.push(s),
                None => return Err(Error::input(format!("clique vertex {} is unmapped", i + 1))),
            }
        }
        Embedding::new(out)
    }

    pub fn to_text(&self, h: &Hypergraph) -> String {
        let mut out = format!("k: {}\n", self.k());
        for (i, s) in self.images.iter().enumerate() {
            let names: Vec<&str> = s.iter().map(|v| h.label(v)).collect();
            out.push_str(&format!("map {}: {}\n", i + 1, names.join(" ")));
        }
        out
    }
}

/// Validation findings plus all depth measures of an embedding. Depths are
/// computed whether or not the embedding is valid.
#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub valid: bool,
    pub violations: Vec<String>,
    /// max over hyperedges of the number of clique vertices whose image
    /// meets the edge
    pub wed: usize,
    /// max over hyperedges of the sum of vertex depths inside the edge
    pub ed: usize,
    /// per hypergraph vertex: how many clique vertices map onto it
    pub vertex_depths: Vec<usize>,
    /// per hyperedge: weak depth (images meeting the edge)
    pub edge_weak_depths: Vec<usize>,
    /// per hyperedge: depth (sum of vertex depths over the edge)
    pub edge_depths: Vec<usize>,
}

/// Check the two embedding conditions (connected images, pairwise touching
/// images) and compute every depth measure.
pub fn validate_embedding(h: &Hypergraph, e: &Embedding) -> Result<EmbeddingReport> {
    let all = h.all_vertices();
    for (i, s) in e.images().iter().enumerate() {
        if s.is_empty() {
            return Err(Error::input(format!("image of clique vertex {} is empty", i + 1)));
        }
        if !s.is_subset_of(all) {
            return Err(Error::input(format!(
                "image of clique vertex {} has out-of-range vertices",
                i + 1
            )));
        }
    }
    let k = e.k();
    let mut violations = Vec::new();
    for (i, &s) in e.images().iter().enumerate() {
        if !h.is_connected_subset(s)? {
            violations.push(format!(
                "image {} of clique vertex {} is not connected",
                h.set_to_string(s),
                i + 1
            ));
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if !h.touches(e.image(i), e.image(j))? {
                violations.push(format!(
                    "images of clique vertices {} and {} do not touch",
                    i + 1,
                    j + 1
                ));
            }
        }
    }

    let n = h.vertex_count();
    let vertex_depths: Vec<usize> =
        (0..n).map(|v| e.images().iter().filter(|s| s.contains(v)).count()).collect();
    let edge_weak_depths: Vec<usize> = h
        .edges()
        .iter()
        .map(|&edge| e.images().iter().filter(|s| s.intersects(edge)).count())
        .collect();
    let edge_depths: Vec<usize> = h
        .edges()
        .iter()
        .map(|&edge| edge.iter().map(|v| vertex_depths[v]).sum())
        .collect();
    let wed = edge_weak_depths.iter().copied().max().unwrap_or(0);
    let ed = edge_depths.iter().copied().max().unwrap_or(0);

    Ok(EmbeddingReport {
        valid: violations.is_empty(),
        violations,
        wed,
        ed,
        vertex_depths,
        edge_weak_depths,
        edge_depths,
    })
}

/// An exact optimum of the fractional weak-edge-depth program: positive
/// weights on a pairwise-touching family of connected subsets summing to
/// one, with every hyperedge loaded by at most `w_star`. The clique
/// embedding power equals `1 / w_star`, attained at clique size `scale`
/// (the least common multiple of the weight denominators).
#[derive(Debug, Clone)]
pub struct FractionalWitness {
    /// support weights in canonical subset order
    pub weights: Vec<(VertexSet, Rational)>,
    pub w_star: Rational,
    /// K: lcm of the weight denominators; scaling by K gives an integral witness
    pub scale: BigInt,
    /// set when the input was disconnected and the optimum came from this component
    pub component: Option<VertexSet>,
}

impl FractionalWitness {
    pub fn embedding_power(&self) -> Rational {
        Rational::one() / &self.w_star
    }

    /// Check all witness invariants exactly.
    pub fn verify(&self, h: &Hypergraph) -> Result<()> {
        let mut total = Rational::zero();
        for (s, x) in &self.weights {
            if !x.is_positive() {
                return Err(Error::input("witness weight is not positive"));
            }
            if !h.is_connected_subset(*s)? {
                return Err(Error::input("witness support contains a disconnected set"));
            }
            let scaled = x * Rational::from(self.scale.clone());
            if !scaled.is_integer() {
                return Err(Error::input("scale does not clear a weight denominator"));
            }
            total += x;
        }
        if total != Rational::one() {
            return Err(Error::input("witness weights do not sum to 1"));
        }
        for i in 0..self.weights.len() {
            for j in (i + 1)..self.weights.len() {
                if !h.touches(self.weights[i].0, self.weights[j].0)? {
                    return Err(Error::input("witness support is not pairwise touching"));
                }
            }
        }
        for &edge in h.edges() {
            let load: Rational = self
                .weights
                .iter()
                .filter(|(s, _)| s.intersects(edge))
                .map(|(_, x)| x.clone())
                .fold(Rational::zero(), |acc, x| acc + x);
            if load > self.w_star {
                return Err(Error::input("a hyperedge is loaded beyond w_star"));
            }
        }
        Ok(())
    }

    /// The integral embedding obtained by scaling every weight by K, when K
    /// is small enough to materialize (the multiset has K elements).
    pub fn integral_embedding(&self, cap: u64) -> Option<Embedding> {
        let k: BigInt = self.scale.clone();
        if k > BigInt::from(cap) {
            return None;
        }
        let mut images = Vec::new();
        for (s, x) in &self.weights {
            let copies = (x * Rational::from(self.scale.clone())).to_integer();
            let mut c = BigInt::zero();
            while c < copies {
                images.push(*s);
                c += 1;
            }
        }
        Embedding::new(images).ok()
    }
}

pub(crate) fn lcm_of_denominators(weights: &[(VertexSet, Rational)]) -> BigInt {
    let mut k = BigInt::one();
    for (_, x) in weights {
        k = k.lcm(x.denom());
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cycle, star_with_triple};

    #[test]
    fn example_embedding_has_weak_depth_three() {
        let h = star_with_triple();
        // 1 -> {x1}, 2 -> {x2}, 3 -> {x3}, 4,5 -> {y}
        let e = Embedding::from_preimages(5, &[vec![1], vec![2], vec![3], vec![4, 5]]).unwrap();
        let report = validate_embedding(&h, &e).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert_eq!(report.wed, 3);
        assert_eq!(report.vertex_depths, vec![1, 1, 1, 2]);
        // ed = max_e sum of vertex depths: edge {x1,x2,x3} gives 3, {xi,y} gives 3
        assert_eq!(report.ed, 3);
        assert!(report.wed <= report.ed);
    }

    #[test]
    fn all_of_v_embedding_is_valid_with_wed_k() {
        for h in [cycle(6), star_with_triple()] {
            for k in 1..=4 {
                let images = vec![h.all_vertices(); k];
                let e = Embedding::new(images).unwrap();
                let report = validate_embedding(&h, &e).unwrap();
                assert!(report.valid);
                assert_eq!(report.wed, k);
            }
        }
    }

    #[test]
    fn non_touching_images_are_invalid() {
        let h = cycle(6);
        let e = Embedding::new(vec![VertexSet::singleton(0), VertexSet::singleton(3)]).unwrap();
        let report = validate_embedding(&h, &e).unwrap();
        assert!(!report.valid);
        assert_eq!(report.violations.len(), 1);
        // depths are still computed
        assert_eq!(report.wed, 1);
    }

    #[test]
    fn input_errors_are_distinct_from_invalid() {
        let h = cycle(6);
        assert!(Embedding::new(vec![]).is_err());
        assert!(Embedding::new(vec![VertexSet::EMPTY]).is_err());
        let oob = Embedding::new(vec![VertexSet::singleton(10)]).unwrap();
        assert!(validate_embedding(&h, &oob).is_err());
    }

    #[test]
    fn parse_and_roundtrip() {
        let h = star_with_triple();
        let text = "k: 5\nmap 1: x1\nmap 2: x2\nmap 3: x3\nmap 4: y\nmap 5: y\n";
        let e = Embedding::parse(text, &h).unwrap();
        assert_eq!(e.k(), 5);
        assert_eq!(e.image(3), VertexSet::singleton(3));
        let again = Embedding::parse(&e.to_text(&h), &h).unwrap();
        assert_eq!(e, again);

        // unmapped clique vertex is an error
        assert!(Embedding::parse("k: 2\nmap 1: x1\n", &h).is_err());
        assert!(Embedding::parse("k: 1\nmap 1: bogus\n", &h).is_err());
        assert!(Embedding::parse("k: 0\n", &h).is_err());
    }
}
