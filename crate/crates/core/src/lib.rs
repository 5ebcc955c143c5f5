//! Six-vertex model with domain-wall boundary conditions: partition function
//! and boundary one-point correlators via determinant representations, with
//! brute-force and operator-algebra oracles for validation.
//!
//! Conventions used throughout: weights a = sinh(lambda - nu + eta),
//! b = sinh(lambda - nu - eta), c = sinh 2 eta; rows are counted from the
//! top, columns from the right; `H(m)` is the probability that the boundary
//! path turns in row m of the rightmost column, `G(m)` its cumulative sum.

pub mod determinant;
pub mod enumeration;
pub mod error;
pub mod free_fermion;
pub mod homogeneous;
pub mod jet;
pub mod matrix;
pub mod model;
pub mod qism;
pub mod result;
pub mod sample;
pub mod scalar;
pub mod selftest;

pub use error::{Error, Result};
pub use model::{SpectralParams, SpectralParams64, VertexWeights};
pub use result::{CorrelatorResult, Method, Quantity};
pub use scalar::{c64, rel_err, CPrec, Scalar, C64};
