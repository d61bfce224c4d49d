//! Result documents and their JSON / CSV forms.
//!
//! Rationals are written as `{"numerator": "...", "denominator": "..."}`
//! decimal strings so they survive any JSON reader exactly. Floats use the
//! shortest representation that parses back to the same binary64.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::energy::{EnergySeries, Method, SeriesCoefficients};
use crate::error::{Error, Result};
use crate::lmethod::ExtrapolatedRspt;
use crate::models::ModelKind;
use crate::numeric::{BigRational, Domain, Scalar};
use crate::series::TruncatedSeries;
use crate::tmethod::WCoefficients;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub numerator: String,
    pub denominator: String,
}

impl From<&BigRational> for RationalRepr {
    fn from(r: &BigRational) -> Self {
        Self { numerator: r.numer().to_string(), denominator: r.denom().to_string() }
    }
}

impl RationalRepr {
    pub fn to_rational(&self) -> Result<BigRational> {
        let parse = |s: &str| {
            s.parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("not a decimal integer: {s:?}")))
        };
        let (n, d) = (parse(&self.numerator)?, parse(&self.denominator)?);
        if d == BigInt::from(0) {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(BigRational::new(n, d))
    }
}

/// One coefficient: exact or binary64.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Exact(RationalRepr),
    Float(f64),
}

impl Coefficient {
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Coefficient::Exact(r) => Ok(r.to_rational()?.to_f64()),
            Coefficient::Float(x) => Ok(*x),
        }
    }

    /// `n/d` for exact values, the float otherwise.
    pub fn display(&self) -> String {
        match self {
            Coefficient::Exact(r) if r.denominator == "1" => r.numerator.clone(),
            Coefficient::Exact(r) => format!("{}/{}", r.numerator, r.denominator),
            Coefficient::Float(x) => fmt_f64(*x),
        }
    }
}

pub fn coefficients_of<T: Scalar>(c: &[T]) -> Vec<Coefficient> {
    c.iter()
        .map(|x| match x.as_rational() {
            Some(r) => Coefficient::Exact(RationalRepr::from(&r)),
            None => Coefficient::Float(x.to_f64()),
        })
        .collect()
}

/// Shortest round-trip text of a float.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPayload {
    pub model: ModelKind,
    pub method: Method,
    pub domain: Domain,
    pub variable: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none", default)]
    pub box_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_max: Option<usize>,
    /// Index `j` holds the coefficient of `lambda^j`.
    pub coefficients: Vec<Coefficient>,
}

impl From<&EnergySeries> for SeriesPayload {
    fn from(s: &EnergySeries) -> Self {
        let (variable, coefficients) = match &s.coefficients {
            SeriesCoefficients::Rational(r) => (r.var().to_string(), coefficients_of(r.coeffs())),
            SeriesCoefficients::Float(f) => (f.var().to_string(), coefficients_of(f.coeffs())),
        };
        Self {
            model: s.model,
            method: s.method,
            domain: s.coefficients.domain(),
            variable,
            beta: s.beta,
            box_length: s.box_length,
            n_max: s.n_max,
            coefficients,
        }
    }
}

impl SeriesPayload {
    pub fn to_energy_series(&self) -> Result<EnergySeries> {
        if self.coefficients.is_empty() {
            return Err(Error::InvalidInput("series has no coefficients".into()));
        }
        let coefficients = match self.domain {
            Domain::Rational => {
                let c = self
                    .coefficients
                    .iter()
                    .map(|c| match c {
                        Coefficient::Exact(r) => r.to_rational(),
                        Coefficient::Float(_) => Err(Error::InvalidInput("float coefficient in a rational series".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                SeriesCoefficients::Rational(TruncatedSeries::new(self.variable.clone(), c))
            }
            Domain::Float => {
                let c = self.coefficients.iter().map(Coefficient::to_f64).collect::<Result<Vec<_>>>()?;
                SeriesCoefficients::Float(TruncatedSeries::new(self.variable.clone(), c))
            }
        };
        let mut out = EnergySeries::new(self.model, self.method, coefficients);
        out.beta = self.beta;
        out.box_length = self.box_length;
        out.n_max = self.n_max;
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LMethodPayload {
    pub model: ModelKind,
    #[serde(rename = "L")]
    pub length: f64,
    pub n_max: usize,
    pub basis_size: usize,
    /// RSPT `e_1..e_J` at `n_max`.
    pub coefficients: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extrapolated: Option<ExtrapolatedRspt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partial_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagonal_energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactPayload {
    pub model: ModelKind,
    pub lambda: f64,
    pub n: usize,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none", default)]
    pub box_length: Option<f64>,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchPayload {
    pub model: ModelKind,
    pub epsilon_c: f64,
    pub lambda_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximantPayload {
    /// `pade`, `qpade` or `tppade`.
    pub approximant: String,
    pub degrees: Vec<usize>,
    /// Variable of the polynomials: `lambda`, or `sqrt_lambda` for two-point.
    pub variable: String,
    /// Named polynomials in increasing powers.
    pub polynomials: Vec<(String, Vec<Coefficient>)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub at: f64,
    pub value: f64,
}

/// Comparison table: first column `lambda`, one column per method; `None`
/// where a method failed at that point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub model: ModelKind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Series(SeriesPayload),
    Tmethod { w: WCoefficients, series: SeriesPayload },
    Lmethod(LMethodPayload),
    Exact(ExactPayload),
    Branch(BranchPayload),
    Sum(ApproximantPayload),
    Scan(ScanTable),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: String,
    /// The run configuration that produced this document.
    pub config: serde_json::Value,
    pub payload: Payload,
    pub provenance: Vec<String>,
}

impl ResultDocument {
    pub fn new(config: serde_json::Value, payload: Payload, provenance: Vec<String>) -> Self {
        Self { schema_version: SCHEMA_VERSION.into(), config, payload, provenance }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::EvaluationFailure(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad result document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!("unsupported schema_version {:?}", doc.schema_version)));
        }
        Ok(doc)
    }

    /// The energy series carried by a `series` or `tmethod` document.
    pub fn energy_series(&self) -> Result<EnergySeries> {
        match &self.payload {
            Payload::Series(s) | Payload::Tmethod { series: s, .. } => s.to_energy_series(),
            _ => Err(Error::InvalidInput("document carries no energy series".into())),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        self.payload.to_csv()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

impl Payload {
    /// Fixed columns per payload kind, header row first.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut put = |rec: &[String]| w.write_record(rec).map_err(|e| Error::EvaluationFailure(e.to_string()));
        let s = |x: &str| x.to_string();
        match self {
            Payload::Series(p) => {
                put(&[s("order"), s("coefficient"), s("value")])?;
                for (j, c) in p.coefficients.iter().enumerate() {
                    put(&[j.to_string(), c.display(), fmt_f64(c.to_f64()?)])?;
                }
            }
            Payload::Tmethod { w: wc, series } => {
                put(&[s("quantity"), s("order"), s("value"), s("error")])?;
                for (i, (w, e)) in wc.w.iter().zip(&wc.errors).enumerate() {
                    put(&[s("w"), (i + 1).to_string(), fmt_f64(*w), fmt_f64(*e)])?;
                }
                for (j, c) in series.coefficients.iter().enumerate() {
                    put(&[s("e"), j.to_string(), fmt_f64(c.to_f64()?), String::new()])?;
                }
            }
            Payload::Lmethod(p) => {
                put(&[s("quantity"), s("order"), s("value")])?;
                for (i, c) in p.coefficients.iter().enumerate() {
                    put(&[s("rspt"), (i + 1).to_string(), fmt_f64(*c)])?;
                }
                if let Some(x) = &p.extrapolated {
                    for (i, c) in x.extrapolated.iter().enumerate() {
                        put(&[s("extrapolated"), (i + 1).to_string(), fmt_f64(*c)])?;
                    }
                }
                if let Some(v) = p.partial_sum {
                    put(&[s("partial_sum"), String::new(), fmt_f64(v)])?;
                }
                if let Some(v) = p.diagonal_energy {
                    put(&[s("diagonal_energy"), String::new(), fmt_f64(v)])?;
                }
            }
            Payload::Exact(p) => {
                put(&[s("model"), s("lambda"), s("n"), s("L"), s("energy")])?;
                put(&[s(p.model.as_str()), fmt_f64(p.lambda), p.n.to_string(), opt(p.box_length), fmt_f64(p.energy)])?;
            }
            Payload::Branch(p) => {
                put(&[s("model"), s("epsilon_c"), s("lambda_c")])?;
                put(&[s(p.model.as_str()), fmt_f64(p.epsilon_c), fmt_f64(p.lambda_c)])?;
            }
            Payload::Sum(p) => {
                put(&[s("quantity"), s("power"), s("value")])?;
                for (name, coeffs) in &p.polynomials {
                    for (k, c) in coeffs.iter().enumerate() {
                        put(&[name.clone(), k.to_string(), c.display()])?;
                    }
                }
                put(&[s("value"), String::new(), fmt_f64(p.value)])?;
            }
            Payload::Scan(t) => {
                put(&t.columns)?;
                for row in &t.rows {
                    put(&row.iter().map(|x| opt(*x)).collect::<Vec<_>>())?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::EvaluationFailure(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::EvaluationFailure(e.to_string()))
    }
}

/// Gnuplot script plotting every method column of a scan CSV against lambda.
pub fn gnuplot_script(csv_path: &str, table: &ScanTable) -> String {
    let mut out = String::new();
    out.push_str("set datafile separator ','\n");
    out.push_str("set key autotitle columnhead\n");
    out.push_str("set xlabel 'lambda'\nset ylabel 'epsilon'\n");
    out.push_str(&format!("set title '{} well'\n", table.model));
    let series: Vec<String> =
        (2..=table.columns.len()).map(|c| format!("'{csv_path}' using 1:{c} with linespoints")).collect();
    out.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
    out
}
