//! Exact computation of maximum likelihood degrees of scaled toric models.
//!
//! A scaled toric model is given by an integer design matrix `A` (all-ones
//! first row) together with a vector of nonzero rational scalings `c`. This
//! crate builds the toric likelihood equations for such a pair and any data
//! vector, counts their torus solutions exactly, and provides the supporting
//! machinery: integer lattice normal forms, lattice polytope combinatorics
//! (face lattices, normalized volumes, regular subdivisions), Gröbner bases
//! over ℚ and over the rational function field ℚ(t), real root isolation,
//! and one-parameter tropical degenerations of the likelihood system.
//!
//! Everything is computed in exact arithmetic; floating point appears only
//! in informational log-likelihood values. All randomness is drawn from the
//! seeded generator in [`rng`], so results are reproducible from a seed.

pub mod arith;
pub mod error;
pub mod lattice;
pub mod likelihood;
mod linalg;
pub mod models;
pub mod polytope;
pub mod rng;
pub mod solve;
pub mod tropical;

pub use error::Error;
