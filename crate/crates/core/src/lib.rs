//! Perturbation series for the bound states of one-dimensional short-range
//! attractive wells.
//!
//! The crate computes the small-strength expansion of the ground-state
//! energy three ways (multidimensional T-integrals, a delta-regularized
//! expansion and Rayleigh–Schrödinger theory in a periodic box), checks
//! them against four exactly solvable wells, locates the branch points
//! limiting convergence and sums the series with Padé-type approximants.

pub mod energy;
pub mod error;
pub mod io;
pub mod lmethod;
pub mod models;
pub mod numeric;
pub mod series;
pub mod summation;
pub mod tmethod;

pub use energy::{EnergySeries, Method, SeriesCoefficients};
pub use error::{Error, Result};
pub use models::{ModelKind, ModelSpec};

pub use series::TruncatedSeries;
