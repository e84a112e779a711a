//! Exact intersection theory on Grassmannian jet towers over hypersurfaces in P^4.
//!
//! Everything is computed over arbitrary-precision rationals: truncated graded
//! rings with rewrite-rule normal forms, Chern/Chern-character/Todd calculus,
//! the two-level Grassmannian tower with its eliminated relations and fiber
//! integration, holomorphic-Morse positivity polynomials with their effective
//! degree thresholds, jet-differential rank combinatorics, and the symbolic
//! tangency checks for vector fields on vertical 2-jet spaces of the universal
//! hypersurface.

pub mod charclass;
pub mod combinatorics;
pub mod poly;
pub mod positivity;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod tangency;
pub mod tower;

pub use poly::DegreePoly;
pub use ring::{GeneratorTable, GradedClass, RewriteRule};
pub use scalar::Scalar;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("non-terminating rule set: {0}")]
    NonTerminating(String),
    #[error("inconsistent interpolation data: {0}")]
    InconsistentInterpolation(String),
    #[error("infeasible system: {0}")]
    Infeasible(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
