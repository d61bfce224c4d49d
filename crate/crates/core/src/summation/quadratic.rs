use super::{linalg, poly_eval};
use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::series::TruncatedSeries;

/// Algebraic approximant `P + Q w + R w² = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPade<T: Scalar> {
    pub p: Vec<T>,
    pub q: Vec<T>,
    pub r: Vec<T>,
    /// `+1` or `-1`: which root of the quadratic follows the series at small
    /// lambda, in the form `(-Q + sign sqrt(Q² - 4PR)) / 2R`.
    pub branch_sign: f64,
}

impl<T: Scalar> QuadraticPade<T> {
    pub fn degrees(&self) -> (usize, usize, usize) {
        (self.p.len() - 1, self.q.len() - 1, self.r.len() - 1)
    }

    /// `P + Q f + R f²` through `order`.
    pub fn residual(&self, f: &TruncatedSeries<T>, order: usize) -> TruncatedSeries<T> {
        let f = f.with_order(order);
        let poly = |c: &[T]| {
            let mut v: Vec<T> = c.iter().take(order + 1).cloned().collect();
            v.resize(order + 1, T::zero());
            TruncatedSeries::new(f.var().to_string(), v)
        };
        let rf = &poly(&self.r) * &f;
        &(&poly(&self.p) + &(&poly(&self.q) * &f)) + &(&rf * &f)
    }

    pub fn eval(&self, lambda: f64) -> Result<f64> {
        let (p, q, r) = (poly_eval(&self.p, lambda), poly_eval(&self.q, lambda), poly_eval(&self.r, lambda));
        root(p, q, r, self.branch_sign)
    }
}

fn root(p: f64, q: f64, r: f64, sign: f64) -> Result<f64> {
    let scale = p.abs().max(q.abs()).max(r.abs());
    if r.abs() <= 1e-15 * scale {
        if q == 0.0 {
            return Err(Error::EvaluationFailure("P + Q w + R w² degenerates".into()));
        }
        return Ok(-p / q);
    }
    let disc = q * q - 4.0 * p * r;
    if disc < 0.0 {
        return Err(Error::ComplexBranch { re: -q / (2.0 * r), im: (-disc).sqrt() / (2.0 * r.abs()) });
    }
    let sd = sign * disc.sqrt();
    // avoid cancellation between -Q and the square root
    if -q * sd >= 0.0 {
        Ok((-q + sd) / (2.0 * r))
    } else {
        Ok(2.0 * p / (-q - sd))
    }
}

/// Hermite–Padé approximant of degrees `(dp, dq, dr)`: the null vector of the
/// conditions on `lambda^0 .. lambda^(dp+dq+dr+1)`, normalised so that the
/// first nonzero coefficient of `R` (else `Q`) is one.
pub fn quadratic_pade<T: Scalar>(series: &TruncatedSeries<T>, degrees: (usize, usize, usize)) -> Result<QuadraticPade<T>> {
    let (dp, dq, dr) = degrees;
    let n_eq = dp + dq + dr + 2;
    if series.order() + 1 < n_eq {
        return Err(Error::InvalidInput(format!(
            "degrees ({dp},{dq},{dr}) need order {} but the series stops at {}",
            n_eq - 1,
            series.order()
        )));
    }
    let f = series.with_order(n_eq - 1);
    let f2 = &f * &f;
    let n_unknown = dp + dq + dr + 3;
    let rows: Vec<Vec<T>> = (0..n_eq)
        .map(|k| {
            let mut row = vec![T::zero(); n_unknown];
            if k <= dp {
                row[k] = T::one();
            }
            for i in 0..=dq.min(k) {
                row[dp + 1 + i] = f.coeff(k - i);
            }
            for i in 0..=dr.min(k) {
                row[dp + dq + 2 + i] = f2.coeff(k - i);
            }
            row
        })
        .collect();
    // a vector with P = Q = 0 only says R f² is small, which pins nothing
    let v = linalg::null_space(&rows, n_unknown)
        .into_iter()
        .find(|v| {
            let scale = v.iter().fold(0.0f64, |m, x| m.max(x.magnitude()));
            v[..dp + dq + 2].iter().any(|x| !x.negligible(scale))
        })
        .ok_or(Error::DegenerateSystem)?;
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.magnitude()));
    let live = |x: &&T| !x.negligible(scale);
    let pivot = v[dp + dq + 2..]
        .iter()
        .find(live)
        .or_else(|| v[dp + 1..dp + dq + 2].iter().find(live))
        .cloned()
        .ok_or(Error::DegenerateSystem)?;
    let v: Vec<T> = v.into_iter().map(|x| x / pivot.clone()).collect();
    let mut out = QuadraticPade {
        p: v[..=dp].to_vec(),
        q: v[dp + 1..dp + dq + 2].to_vec(),
        r: v[dp + dq + 2..].to_vec(),
        branch_sign: 1.0,
    };
    out.branch_sign = select_branch(&out, series);
    Ok(out)
}

/// Picks the root closest to the series at lambda = 0, falling back to a
/// small positive lambda when both roots coincide there.
fn select_branch<T: Scalar>(qp: &QuadraticPade<T>, series: &TruncatedSeries<T>) -> f64 {
    let mut best = 1.0;
    for lam in [0.0, 1e-4, 1e-3] {
        let target = series.eval_f64(lam);
        let miss = |s: f64| qp.eval_signed(lam, s).map(|w| (w - target).abs()).unwrap_or(f64::INFINITY);
        let (plus, minus) = (miss(1.0), miss(-1.0));
        best = if minus < plus { -1.0 } else { 1.0 };
        if (plus - minus).abs() > 1e-12 * (1.0 + target.abs()) {
            break;
        }
    }
    best
}

impl<T: Scalar> QuadraticPade<T> {
    fn eval_signed(&self, lambda: f64, sign: f64) -> Result<f64> {
        root(poly_eval(&self.p, lambda), poly_eval(&self.q, lambda), poly_eval(&self.r, lambda), sign)
    }
}
