//! Matrix elements of `v` between box plane waves.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ModelKind, ModelSpec};
use crate::error::{Error, Result};
use crate::numeric::{gauss_legendre, QuadratureRule};

/// `|n> = exp(2πinx/L)/sqrt(L)` for integer `n`, or the parity-adapted
/// `1/sqrt(L)`, `sqrt(2/L) cos(2πnx/L)` for `n >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    ComplexExp,
    EvenCosine,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::ComplexExp => "complex_exp",
            Basis::EvenCosine => "even_cosine",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex_exp" => Ok(Basis::ComplexExp),
            "even_cosine" => Ok(Basis::EvenCosine),
            _ => Err(Error::InvalidInput(format!("unknown basis '{s}'"))),
        }
    }
}

const PT_RULE_ORDER: usize = 16;

/// `∫ sech²(x) cos(qx)` over `[0, a]` by composite Gauss–Legendre with
/// panels no wider than half an oscillation period or one decay length.
fn sech2_cos_half(q: f64, a: f64, rule: &QuadratureRule) -> f64 {
    let width = (PI / q.abs().max(1e-300)).min(0.5);
    let panels = (a / width).ceil().max(1.0) as usize;
    let h = a / panels as f64;
    (0..panels)
        .map(|p| {
            let lo = p as f64 * h;
            rule.integrate(lo, lo + h, |x| (q * x).cos() / x.cosh().powi(2))
        })
        .sum()
}

/// `∫_{-L/2}^{L/2} v(x) cos(qx) dx`.
pub fn fourier_integral(kind: ModelKind, q: f64, length: f64) -> f64 {
    let a = length / 2.0;
    match kind {
        ModelKind::Delta => -1.0,
        ModelKind::Square => {
            if q == 0.0 {
                -2.0
            } else {
                -2.0 * q.sin() / q
            }
        }
        ModelKind::Exponential => {
            let tail = (-a).exp() * (q * (q * a).sin() - (q * a).cos());
            -2.0 * (1.0 + tail) / (1.0 + q * q)
        }
        ModelKind::PoschlTeller => {
            let rule = gauss_legendre(PT_RULE_ORDER).expect("fixed rule order is supported");
            -2.0 * sech2_cos_half(q, a, &rule)
        }
    }
}

fn box_of(model: &ModelSpec) -> Result<f64> {
    if model.beta.is_some() {
        return Err(Error::NotAvailable("plane-wave elements of the beta form".into()));
    }
    model
        .box_length
        .ok_or_else(|| Error::InvalidInput("matrix elements need a box length".into()))
}

/// `Ĩ(2πk/L)` for `k = 0..=kmax`, the only integrals a Hamiltonian of
/// either basis needs.
pub fn fourier_table(model: &ModelSpec, kmax: usize) -> Result<Vec<f64>> {
    let l = box_of(model)?;
    Ok((0..=kmax).map(|k| fourier_integral(model.kind, 2.0 * PI * k as f64 / l, l)).collect())
}

/// Assembles `<m|v|n>` from a table of `Ĩ(2πk/L)`.
pub(crate) fn element_from_table(table: &[f64], length: f64, m: i64, n: i64, basis: Basis) -> f64 {
    let at = |k: i64| table[k.unsigned_abs() as usize];
    match basis {
        Basis::ComplexExp => at(n - m) / length,
        Basis::EvenCosine => match (m, n) {
            (0, 0) => at(0) / length,
            (0, k) | (k, 0) => SQRT_2 * at(k) / length,
            (m, n) => (at(m - n) + at(m + n)) / length,
        },
    }
}

/// `<m|v|n>` in the given basis of the model's box.
pub fn matrix_element(model: &ModelSpec, m: i64, n: i64, basis: Basis) -> Result<f64> {
    let l = box_of(model)?;
    if basis == Basis::EvenCosine && (m < 0 || n < 0) {
        return Err(Error::InvalidInput(format!("cosine basis indices must be >= 0, got ({m}, {n})")));
    }
    let needed: Vec<i64> = match basis {
        Basis::ComplexExp => vec![n - m],
        Basis::EvenCosine => vec![m - n, m + n],
    };
    let kmax = needed.iter().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0);
    let mut table = vec![0.0; kmax + 1];
    for k in needed {
        let k = k.unsigned_abs() as usize;
        table[k] = fourier_integral(model.kind, 2.0 * PI * k as f64 / l, l);
    }
    Ok(element_from_table(&table, l, m, n, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(kind: ModelKind, l: f64) -> ModelSpec {
        ModelSpec::new(kind, 1.0).unwrap().with_box(l).unwrap()
    }

    #[test]
    fn delta_elements() {
        let m = boxed(ModelKind::Delta, 10.0);
        for (a, b) in [(0, 0), (1, -3), (4, 2)] {
            assert!((matrix_element(&m, a, b, Basis::ComplexExp).unwrap() + 0.1).abs() < 1e-15);
        }
        for l in [3.0, 10.0, 17.5] {
            let m = boxed(ModelKind::Delta, l);
            let v = matrix_element(&m, 0, 5, Basis::EvenCosine).unwrap();
            assert!((v + SQRT_2 / l).abs() < 1e-15);
        }
    }

    #[test]
    fn square_diagonal() {
        let m = boxed(ModelKind::Square, 10.0);
        assert!((matrix_element(&m, 3, 3, Basis::ComplexExp).unwrap() + 0.2).abs() < 1e-15);
    }

    #[test]
    fn exponential_closed_form_matches_quadrature() {
        let l = 12.0;
        let rule = gauss_legendre(64).unwrap();
        for k in [0.0, 1.0, 7.0] {
            let q = 2.0 * PI * k / l;
            let num: f64 = (0..24)
                .map(|p| {
                    let lo = p as f64 * 0.25;
                    rule.integrate(lo, lo + 0.25, |x| -2.0 * (-x).exp() * (q * x).cos())
                })
                .sum();
            assert!((fourier_integral(ModelKind::Exponential, q, l) - num).abs() < 1e-13);
        }
    }

    #[test]
    fn poschl_teller_large_box() {
        // ∫ sech²(x) cos(qx) over the line is πq / sinh(πq/2)
        let l = 60.0;
        for q in [0.0, 0.5, 3.0] {
            let expect = if q == 0.0 { 2.0 } else { PI * q / (PI * q / 2.0).sinh() };
            assert!((fourier_integral(ModelKind::PoschlTeller, q, l) + expect).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetry() {
        for kind in ModelKind::ALL {
            let m = boxed(kind, 9.0);
            for basis in [Basis::ComplexExp, Basis::EvenCosine] {
                for (a, b) in [(0, 3), (2, 5), (1, 4)] {
                    assert_eq!(
                        matrix_element(&m, a, b, basis).unwrap(),
                        matrix_element(&m, b, a, basis).unwrap()
                    );
                }
            }
            let shifted = matrix_element(&m, 1, 4, Basis::ComplexExp).unwrap();
            assert_eq!(shifted, matrix_element(&m, 5, 8, Basis::ComplexExp).unwrap());
        }
    }

    #[test]
    fn needs_box() {
        let m = ModelSpec::new(ModelKind::Delta, 1.0).unwrap();
        assert!(matrix_element(&m, 0, 0, Basis::ComplexExp).is_err());
    }
}
