//! Exact combinatorics of skew partitions.
//!
//! The crate computes the rank of a skew shape `λ/μ` in several independent
//! ways (diagonal corners, reduced code, Jacobi–Trudi matrix, minimal border
//! strip decompositions, Giambelli-type matrices of outside decompositions)
//! together with its zrank, the `t`-adic valuation of `s_{λ/μ}(1^t)`.
//! It also builds restricted and factorial Cauchy matrices and evaluates
//! double Schur functions, all in exact rational arithmetic.
//!
//! The [`verify`] module drives exhaustive and seeded randomized campaigns
//! over all of these objects.

pub mod cauchy;
pub mod dschur;
pub mod error;
pub mod exact;
pub mod giambelli;
pub mod rank;
pub mod schur;
pub mod shapes;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Matrix, Poly, Rational};
pub use shapes::{Cell, Partition, SkewShape};
