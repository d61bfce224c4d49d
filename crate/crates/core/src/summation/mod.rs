//! Summation and analysis of truncated energy series: Padé, quadratic Padé
//! and two-point Padé approximants, and radius-of-convergence estimates.

mod linalg;
pub mod pade;
pub mod quadratic;
pub mod radius;
pub mod two_point;

pub use pade::{pade, PadeApproximant};
pub use quadratic::{quadratic_pade, QuadraticPade};
pub use radius::{radius_estimate, RadiusEstimate};
pub use two_point::{two_point_pade, TwoPointPade};

use crate::numeric::Scalar;

/// Horner evaluation of a coefficient slice at `x`.
pub(crate) fn poly_eval<T: Scalar>(coeffs: &[T], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
}
