//! Oriented hypergraphs as a model of chemical spaces, with exact
//! combinatorics and a seeded random ensemble.
//!
//! An *oriented hypergraph* over n vertices has edges that are unordered
//! pairs {X, Y} of disjoint, non-empty vertex subsets — the undirected
//! skeleton of a reaction X → Y. This crate provides:
//!
//! - [`hypergraph`]: the bitset-backed data model (universes up to 128
//!   vertices), canonical edge form, sizes, degrees, and pair
//!   classification.
//! - [`counting`]: exact closed-form counts in big integers — total
//!   admissible edges u_r(n) = ½(3ⁿ − 2ⁿ⁺¹ + 1), per-size and per-block
//!   tables, per-vertex participation, impossible pairs — plus log-space
//!   variants that stay finite far beyond big-integer practicality.
//! - [`random`]: the G(n, p) ensemble. Seeded samplers (exhaustive
//!   Bernoulli and per-size binomial via combinadic unranking), the
//!   rank/unrank bijection between edges and integers, expected-value
//!   curves for probability families p = n^α/βⁿ, and bisection solvers for
//!   the extremal n and s of E[edges of size s].
//! - [`analysis`]: empirical statistics and chi-square goodness-of-fit
//!   tests that judge whether an observed hypergraph is consistent with
//!   G(n, p), plus the brute-force enumerator used as a counting oracle.
//! - [`reaction`]: a reaction-equation text format, ingestion into
//!   hypergraphs (with catalyst labels and an autocatalytic split policy),
//!   adjacency-matrix classification export, and JSON round-tripping.
//!
//! Determinism: every random operation takes an explicit seed and is
//! reproducible across runs and platforms for a fixed crate version.

pub mod analysis;
pub mod counting;
pub mod error;
pub mod hypergraph;
pub mod random;
pub mod reaction;

pub use error::{Error, Result};
pub use hypergraph::{
    BlockIndex, OrientedHyperedge, OrientedHypergraph, PairClass, VertexSet, MAX_UNIVERSE,
};
pub use random::{ProbabilityFamily, RandomModelParams, SamplerStrategy};
