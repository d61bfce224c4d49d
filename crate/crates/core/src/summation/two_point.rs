use super::{linalg, poly_eval};
use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::series::TruncatedSeries;

/// Rational function of `u = sqrt(lambda)` with numerator degree two above
/// the denominator, so that it grows like `-u²` for large `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPointPade<T: Scalar> {
    pub numerator: Vec<T>,
    /// `D(0) = 1`.
    pub denominator: Vec<T>,
    pub p_small: usize,
    pub q_large: usize,
}

impl<T: Scalar> TwoPointPade<T> {
    pub fn eval(&self, lambda: f64) -> Result<f64> {
        if lambda < 0.0 {
            return Err(Error::InvalidInput(format!("two-point approximant needs lambda >= 0, got {lambda}")));
        }
        let u = lambda.sqrt();
        let d = poly_eval(&self.denominator, u);
        if d == 0.0 {
            return Err(Error::EvaluationFailure(format!("pole of the approximant at {lambda}")));
        }
        Ok(poly_eval(&self.numerator, u) / d)
    }

    /// Coefficient of `u²` in the expansion at infinity.
    pub fn leading_asymptotic(&self) -> T {
        self.numerator.last().cloned().unwrap_or_else(T::zero) / self.denominator.last().cloned().unwrap_or_else(T::one)
    }
}

/// Matches the first `p_small` coefficients of the series in `u` (odd ones
/// vanish) and the first `q_large` terms of `large = [a_0, a_1, ...]`, the
/// expansion `a_0 u² + a_1 u + a_2 + ...` at infinity. `a_0` must be `-1`.
pub fn two_point_pade<T: Scalar>(
    series: &TruncatedSeries<T>,
    large: &[T],
    p_small: usize,
    q_large: usize,
) -> Result<TwoPointPade<T>> {
    if q_large == 0 || large.len() < q_large {
        return Err(Error::InvalidInput(format!(
            "{q_large} large-lambda terms requested, {} supplied (at least the -lambda slope is needed)",
            large.len()
        )));
    }
    if large[0] != -T::one() {
        return Err(Error::InvalidInput("leading large-lambda slope must be -1".into()));
    }
    let total = p_small + q_large;
    if total < 3 || (total - 3) % 2 != 0 {
        return Err(Error::NoTwoPoint(format!(
            "p_small + q_large = {total} must be 2d + 3 for denominator degree d"
        )));
    }
    if p_small > 0 && series.order() < (p_small - 1) / 2 {
        return Err(Error::InvalidInput(format!("series too short for {p_small} coefficients in sqrt(lambda)")));
    }
    let d = (total - 3) / 2;
    let (nn, nd) = (d + 3, d);
    // unknowns: n_0..n_{d+2}, delta_1..delta_d
    let g = |k: usize| if k % 2 == 0 { series.coeff(k / 2) } else { T::zero() };
    let mut rows = Vec::with_capacity(total);
    let mut rhs = Vec::with_capacity(total);
    for k in 0..p_small {
        // n_k - sum_{i>=1} delta_i g_{k-i} = g_k
        let mut row = vec![T::zero(); nn + nd];
        if k < nn {
            row[k] = T::one();
        }
        for i in 1..=nd.min(k) {
            row[nn + i - 1] = -g(k - i);
        }
        rows.push(row);
        rhs.push(g(k));
    }
    for i in 0..q_large {
        // n_{d+2-i} = sum_{k=0}^{i} delta_{d-i+k} a_k, delta_0 = 1
        let mut row = vec![T::zero(); nn + nd];
        let mut b = T::zero();
        if i <= d + 2 {
            row[d + 2 - i] = T::one();
        }
        for (k, a) in large.iter().enumerate().take(i + 1) {
            let m = d as isize - i as isize + k as isize;
            match m {
                m if m < 0 => {}
                0 => b = b + a.clone(),
                m => row[nn + m as usize - 1] = row[nn + m as usize - 1].clone() - a.clone(),
            }
        }
        rows.push(row);
        rhs.push(b);
    }
    let x = linalg::solve(&rows, &rhs)
        .ok_or_else(|| Error::NoTwoPoint(format!("matching system ({p_small}, {q_large}) is singular")))?;
    let numerator = x[..nn].to_vec();
    let mut denominator = vec![T::one()];
    denominator.extend_from_slice(&x[nn..]);
    let scale = denominator.iter().fold(0.0f64, |m, c| m.max(c.magnitude()));
    if denominator[d].negligible(scale) {
        return Err(Error::NoTwoPoint("denominator degree collapses".into()));
    }
    Ok(TwoPointPade { numerator, denominator, p_small, q_large })
}
