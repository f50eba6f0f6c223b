//! Exact dimension computations for smooth splines on Alfeld splits of the
//! n-simplex and for multiderivation modules of braid arrangements.
//!
//! Four independent routes to `dim C^r_k(AS(Δ_n))` are provided and
//! cross-checked:
//!
//! * the closed binomial formula ([`formulas::conjecture_dim`]),
//! * the graded kernel of the Billera-Rose matrix ([`spline::spline_dim_graded`]),
//! * the graded kernel of the multiderivation matrix of `A_n`
//!   ([`arrangement::multider_dim`]) and Terao's exponents ([`arrangement::terao_dim`]),
//! * the Euler characteristic of the chain complex `R/J`
//!   ([`homology::euler_alternating_sum`]), whose per-degree homology
//!   ([`homology::homology_dims`]) certifies freeness.
//!
//! All arithmetic is exact. The matrix and polynomial layers are generic
//! over the scalar type; the aliases below fix the arbitrary-precision
//! choices used by the geometric layers.

pub mod arrangement;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod spline;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Limits, Matrix};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Dense-semantics sparse matrix over [`Rational`].
pub type ExactMatrix = linalg::Matrix<Rational>;
/// Integer matrix used for assembled per-degree blocks.
pub type IntMatrix = linalg::Matrix<Int>;
