//! The well in a periodic box of length `L`: plane-wave Hamiltonian,
//! diagonalization, Rayleigh–Schrödinger coefficients and their growth
//! with `L`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::matrix::{element_from_table, fourier_table};
use crate::models::relations::implicit_series_rational;
use crate::models::{Basis, ModelKind, ModelSpec};
use crate::numeric::scalar::f64_to_rational;
use crate::numeric::{richardson, symmetric_eigen_lowest, BigRational, DenseMatrix, Scalar};

pub const MAX_RSPT_ORDER: usize = 12;

/// Truncation used when the blow-up report falls back to RSPT.
pub const DEFAULT_NMAX: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveBasis {
    pub length: f64,
    pub n_max: usize,
    pub parity: Basis,
}

impl PlaneWaveBasis {
    pub fn new(length: f64, n_max: usize, parity: Basis) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidInput(format!("box length must be positive, got {length}")));
        }
        Ok(Self { length, n_max, parity })
    }

    pub fn even(length: f64, n_max: usize) -> Result<Self> {
        Self::new(length, n_max, Basis::EvenCosine)
    }

    /// Plane-wave indices in matrix order.
    pub fn indices(&self) -> Vec<i64> {
        let n = self.n_max as i64;
        match self.parity {
            Basis::ComplexExp => (-n..=n).collect(),
            Basis::EvenCosine => (0..=n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.indices().len()
    }

    /// `e_n = 4 n² π² / L²`.
    pub fn energy(&self, n: i64) -> f64 {
        let k = 2.0 * PI * n as f64 / self.length;
        k * k
    }

    fn boxed(&self, model: &ModelSpec) -> Result<ModelSpec> {
        ModelSpec::new(model.kind, model.lambda)?.with_box(self.length)
    }
}

/// `<m|v|n>` over the whole basis.
pub fn potential_matrix(model: &ModelSpec, basis: &PlaneWaveBasis) -> Result<DenseMatrix> {
    let boxed = basis.boxed(model)?;
    let idx = basis.indices();
    let table = fourier_table(&boxed, 2 * basis.n_max)?;
    let mut v = DenseMatrix::zeros(idx.len());
    for (i, &m) in idx.iter().enumerate() {
        for (j, &n) in idx.iter().enumerate().skip(i) {
            let x = element_from_table(&table, basis.length, m, n, basis.parity);
            v[(i, j)] = x;
            v[(j, i)] = x;
        }
    }
    Ok(v)
}

/// `H = diag(e_n) + lambda V`.
pub fn build_hamiltonian(model: &ModelSpec, basis: &PlaneWaveBasis, lambda: f64) -> Result<DenseMatrix> {
    let mut h = potential_matrix(model, basis)?;
    let idx = basis.indices();
    for i in 0..idx.len() {
        for j in 0..idx.len() {
            h[(i, j)] *= lambda;
        }
        h[(i, i)] += basis.energy(idx[i]);
    }
    Ok(h)
}

/// Lowest eigenvalue of the truncated Hamiltonian.
pub fn ground_energy_diag(model: &ModelSpec, basis: &PlaneWaveBasis, lambda: f64) -> Result<f64> {
    symmetric_eigen_lowest(&build_hamiltonian(model, basis, lambda)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RsptResult {
    /// `e_1..e_J`.
    pub coefficients: Vec<f64>,
    pub basis_size: usize,
    /// `c^(1)..c^(J)` in intermediate normalization.
    pub wavefunctions: Vec<Vec<f64>>,
}

impl RsptResult {
    /// `sum_j e_j lambda^j`.
    pub fn partial_sum(&self, lambda: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| (acc + c) * lambda)
    }
}

/// Nondegenerate Rayleigh–Schrödinger theory for the `n = 0` state through
/// order `order`.
pub fn rspt_coefficients(model: &ModelSpec, basis: &PlaneWaveBasis, order: usize) -> Result<RsptResult> {
    if basis.parity == Basis::ComplexExp {
        return Err(Error::DegenerateLevels);
    }
    if order == 0 || order > MAX_RSPT_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let v = potential_matrix(model, basis)?;
    let idx = basis.indices();
    let dim = idx.len();
    let gap: Vec<f64> = idx.iter().map(|&n| basis.energy(0) - basis.energy(n)).collect();

    // psi[k] = c^(k); psi[0] = |0>
    let mut psi: Vec<Vec<f64>> = vec![{
        let mut c = vec![0.0; dim];
        c[0] = 1.0;
        c
    }];
    let mut e: Vec<f64> = vec![0.0];
    for k in 1..=order {
        let prev = &psi[k - 1];
        let v_prev: Vec<f64> = (0..dim).map(|i| v.row(i).iter().zip(prev).map(|(a, b)| a * b).sum()).collect();
        e.push(v_prev[0]);
        let mut next = vec![0.0; dim];
        for n in 1..dim {
            let mut r = v_prev[n];
            for i in 1..=k {
                r -= e[i] * psi[k - i][n];
            }
            next[n] = r / gap[n];
        }
        psi.push(next);
    }
    Ok(RsptResult { coefficients: e[1..].to_vec(), basis_size: dim, wavefunctions: psi[1..].to_vec() })
}

/// RSPT coefficients at `n_max`, `2 n_max` and `4 n_max`, with the
/// Richardson limit in `1/n_max` per order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolatedRspt {
    pub n_max: Vec<usize>,
    pub raw: Vec<Vec<f64>>,
    pub extrapolated: Vec<f64>,
}

pub fn rspt_extrapolated(model: &ModelSpec, length: f64, n_max: usize, order: usize) -> Result<ExtrapolatedRspt> {
    let sizes = vec![n_max, 2 * n_max, 4 * n_max];
    let raw = sizes
        .iter()
        .map(|&n| rspt_coefficients(model, &PlaneWaveBasis::even(length, n)?, order).map(|r| r.coefficients))
        .collect::<Result<Vec<_>>>()?;
    let extrapolated = (0..order)
        .map(|j| richardson(&raw.iter().map(|r| r[j]).collect::<Vec<_>>(), 2.0, 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtrapolatedRspt { n_max: sizes, raw, extrapolated })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupRow {
    #[serde(rename = "L")]
    pub length: f64,
    pub j: usize,
    pub coefficient: f64,
    /// `coefficient · L^(2-j)`.
    pub rescaled: f64,
    pub exponent_fit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupReport {
    pub model: ModelKind,
    pub j: usize,
    pub rows: Vec<BlowupRow>,
    /// Exact `c_j L^(2-j)` per row when the exact L-series is available.
    #[serde(skip)]
    pub rescaled_exact: Option<Vec<BigRational>>,
    /// `j - 2`, the growth the delta well must show.
    pub expected_exponent: Option<f64>,
}

/// Least-squares slope of `log|y|` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = x.iter().zip(y).map(|(a, b)| (a.ln(), b.abs().ln())).collect();
    let n = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |(sx, sy), (a, b)| (sx + a / n, sy + b / n));
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(sxy, sxx), (a, b)| (sxy + (a - mx) * (b - my), sxx + (a - mx).powi(2)));
    sxy / sxx
}

/// `e_j(L)`, its rescaled constant and the fitted growth exponent over `lengths`.
///
/// The delta well uses the exact L-series; the other wells fall back to
/// RSPT extrapolated in `1/n_max` from [`DEFAULT_NMAX`].
pub fn blowup_report(model: &ModelSpec, lengths: &[f64], j: usize) -> Result<BlowupReport> {
    if j == 0 || j > MAX_RSPT_ORDER {
        return Err(Error::UnsupportedOrder(j));
    }
    if lengths.len() < 2 {
        return Err(Error::InvalidInput("the blow-up fit needs at least two box lengths".into()));
    }
    let (coefficients, rescaled_exact) = if model.kind == ModelKind::Delta {
        let mut coefs = Vec::new();
        let mut exact = Vec::new();
        for &l in lengths {
            let c = implicit_series_rational(ModelKind::Delta, j, Some(l))?.coeff(j);
            let lr = f64_to_rational(l).ok_or_else(|| Error::InvalidInput(format!("non-finite length {l}")))?;
            let mut scale = BigRational::from_int(1);
            for _ in 0..j.abs_diff(2) {
                scale = scale * lr.clone();
            }
            let r = if j <= 2 { c.clone() * scale } else { c.clone() / scale };
            coefs.push(c.to_f64());
            exact.push(r);
        }
        (coefs, Some(exact))
    } else {
        let coefs = lengths
            .iter()
            .map(|&l| rspt_extrapolated(model, l, DEFAULT_NMAX, j).map(|r| r.extrapolated[j - 1]))
            .collect::<Result<Vec<_>>>()?;
        (coefs, None)
    };
    let fit = log_log_slope(lengths, &coefficients);
    let rows = lengths
        .iter()
        .zip(&coefficients)
        .map(|(&l, &c)| BlowupRow { length: l, j, coefficient: c, rescaled: c * l.powi(2 - j as i32), exponent_fit: fit })
        .collect();
    Ok(BlowupReport {
        model: model.kind,
        j,
        rows,
        rescaled_exact,
        expected_exponent: (model.kind == ModelKind::Delta).then_some(j as f64 - 2.0),
    })
}
