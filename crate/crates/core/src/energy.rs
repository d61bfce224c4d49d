use serde::{Deserialize, Serialize};

use crate::models::ModelKind;
use crate::numeric::{Domain, Scalar};
use crate::series::{FloatSeries, RationalSeries};

/// Which route produced a set of energy coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Newton iteration on the recast quantization condition.
    Implicit,
    /// Multidimensional integrals for `-(-e)^(1/2)`.
    TMethod,
    /// Expansion about an attached delta well of strength beta.
    Beta,
    /// Exact expansion of the periodic-box condition.
    LSeries,
    /// Rayleigh–Schrödinger theory in a truncated plane-wave basis.
    LRspt,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Implicit => "implicit",
            Method::TMethod => "tmethod",
            Method::Beta => "beta",
            Method::LSeries => "lseries",
            Method::LRspt => "lrspt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesCoefficients {
    Rational(RationalSeries),
    Float(FloatSeries),
}

impl SeriesCoefficients {
    pub fn domain(&self) -> Domain {
        match self {
            SeriesCoefficients::Rational(_) => Domain::Rational,
            SeriesCoefficients::Float(_) => Domain::Float,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            SeriesCoefficients::Rational(s) => s.order(),
            SeriesCoefficients::Float(s) => s.order(),
        }
    }

    pub fn to_float(&self) -> FloatSeries {
        match self {
            SeriesCoefficients::Rational(s) => s.to_float(),
            SeriesCoefficients::Float(s) => s.clone(),
        }
    }

    pub fn coeff_f64(&self, j: usize) -> f64 {
        match self {
            SeriesCoefficients::Rational(s) => s.coeff(j).to_f64(),
            SeriesCoefficients::Float(s) => s.coeff(j),
        }
    }
}

/// Coefficients of `e(lambda) = sum_j e_j lambda^j`, tagged with how they
/// were obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySeries {
    pub model: ModelKind,
    pub method: Method,
    pub beta: Option<f64>,
    pub box_length: Option<f64>,
    pub n_max: Option<usize>,
    pub coefficients: SeriesCoefficients,
}

impl EnergySeries {
    pub fn new(model: ModelKind, method: Method, coefficients: SeriesCoefficients) -> Self {
        Self { model, method, beta: None, box_length: None, n_max: None, coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.order()
    }

    /// Partial sum through the full order.
    pub fn eval(&self, lambda: f64) -> f64 {
        self.coefficients.to_float().eval_f64(lambda)
    }

    pub fn rational(&self) -> Option<&RationalSeries> {
        match &self.coefficients {
            SeriesCoefficients::Rational(s) => Some(s),
            SeriesCoefficients::Float(_) => None,
        }
    }
}
