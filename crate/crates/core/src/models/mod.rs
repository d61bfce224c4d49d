//! The four exactly solvable wells.
//!
//! Every model is written in dimensionless form `H = -d²/dx² + lambda v(x)`
//! with `-1 <= v(x) <= 0` and `v(-x) = v(x)`:
//!
//! | id              | v(x)              |
//! |-----------------|-------------------|
//! | `poschl_teller` | `-sech² x`        |
//! | `square`        | `-1` on `|x| <= 1` |
//! | `delta`         | `-δ(x)`           |
//! | `exponential`   | `-exp(-|x|)`      |
//!
//! The square well optionally carries an attached `-beta δ(x)` (the
//! beta-method form) or a periodic box of length `L`; the delta well
//! optionally carries a periodic box.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod beta;
pub mod branch;
pub mod delta;
pub mod exact;
pub mod matrix;
pub mod relations;
pub mod residual;
pub mod scaling;

pub use beta::{beta_coefficient, beta_series_numeric};
pub use branch::{branch_point, BranchPoint};
pub use delta::{delta_lseries_constants, delta_neumann_energy, delta_periodic_energy, error_expansion_coefficients};
pub use exact::{exact_eigenvalue, large_lambda, LargeLambda};
pub use matrix::{fourier_integral, matrix_element, Basis};
pub use relations::implicit_series;
pub use residual::residual;
pub use scaling::{scale, ScaleDirection, ScalingMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    PoschlTeller,
    Square,
    Delta,
    Exponential,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::PoschlTeller, ModelKind::Square, ModelKind::Delta, ModelKind::Exponential];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::PoschlTeller => "poschl_teller",
            ModelKind::Square => "square",
            ModelKind::Delta => "delta",
            ModelKind::Exponential => "exponential",
        }
    }

    /// `v(x)`; `None` for the delta well, which is not a function.
    pub fn potential(self, x: f64) -> Option<f64> {
        match self {
            ModelKind::PoschlTeller => Some(-1.0 / x.cosh().powi(2)),
            ModelKind::Square => Some(if x.abs() <= 1.0 { -1.0 } else { 0.0 }),
            ModelKind::Delta => None,
            ModelKind::Exponential => Some(-(-x.abs()).exp()),
        }
    }

    /// `v''(0)` where the potential has a Taylor expansion at the origin.
    pub fn curvature_at_origin(self) -> Option<f64> {
        match self {
            ModelKind::PoschlTeller => Some(2.0),
            _ => None,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown model '{s}'")))
    }
}

/// A model together with its strength and optional box length or attached
/// delta strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub lambda: f64,
    pub box_length: Option<f64>,
    pub beta: Option<f64>,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidInput(format!("lambda must be finite and >= 0, got {lambda}")));
        }
        Ok(Self { kind, lambda, box_length: None, beta: None })
    }

    pub fn with_box(mut self, length: f64) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidInput(format!("box length must be positive, got {length}")));
        }
        if self.kind == ModelKind::Square && length <= 2.0 {
            return Err(Error::WellExceedsBox(length));
        }
        self.box_length = Some(length);
        Ok(self)
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        if self.kind != ModelKind::Square {
            return Err(Error::NotAvailable(format!("beta form is defined for the square well, not {}", self.kind)));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidInput(format!("beta must be positive, got {beta}")));
        }
        self.beta = Some(beta);
        Ok(self)
    }

    pub fn potential(&self, x: f64) -> Option<f64> {
        self.kind.potential(x)
    }
}
