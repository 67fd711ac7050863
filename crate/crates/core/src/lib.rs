//! Exact computation of the clique embedding power of a hypergraph,
//! verification and synthesis of clique-to-hypergraph embeddings, width
//! measures (fractional hypertree width, submodular-width lower-bound
//! certificates), semiring sum-of-product evaluation, and the reduction
//! that compiles weighted k-clique instances into sum-of-product inputs
//! for an arbitrary query structure.
//!
//! All optimization values are exact rationals; there is no floating point
//! anywhere in the solve paths.

pub mod embedding;
pub mod engine;
pub mod error;
pub mod hypergraph;
pub mod ratlp;
pub mod reduce;
pub mod widths;

#[cfg(test)]
pub(crate) mod testutil;

pub use embedding::{Embedding, EmbeddingReport, Family, FractionalWitness};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, VertexSet};
pub use ratlp::Rational;
