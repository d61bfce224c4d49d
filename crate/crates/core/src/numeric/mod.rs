//! Shared numerical primitives: exact rationals, root finding, a dense
//! symmetric eigensolver and Gauss–Legendre rules.

pub mod eigen;
pub mod extrapolate;
pub mod quadrature;
pub mod roots;
pub mod scalar;

pub use eigen::{symmetric_eigen_lowest, symmetric_eigenvalues, DenseMatrix};
pub use extrapolate::{richardson, richardson_table};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use roots::{newton_2d, refine_bracket, solve_bracketed, Bracket};
pub use scalar::{rational, rational_to_f64, BigRational, Domain, Scalar};
