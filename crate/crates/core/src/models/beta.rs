//! The square well with an attached `-beta δ(x)`, expanded about the bound
//! state of the delta alone.

use super::ModelKind;
use crate::energy::{EnergySeries, Method, SeriesCoefficients};
use crate::error::{Error, Result};
use crate::numeric::richardson;
use crate::series::{kernel_series_at, newton_implicit_series, AnalyticKernel, FloatSeries, SeriesRelation, TruncatedSeries};

/// Closed forms of the first four coefficients of `e(lambda; beta)`.
pub fn beta_coefficient(j: usize, beta: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidInput(format!("beta must be positive, got {beta}")));
    }
    let b = beta;
    Ok(match j {
        0 => -b * b / 4.0,
        1 => (-b).exp_m1(),
        2 => 2.0 * (-2.0 * b).exp() * (1.0 + b - b.exp()) / (b * b),
        3 => {
            let e = b.exp();
            (-3.0 * b).exp() * (5.0 * e * e - 8.0 * e * (b + 2.0) + 6.0 * b * b + 14.0 * b + 11.0) / b.powi(4)
        }
        _ => return Err(Error::NoClosedForm(j)),
    })
}

/// `k (2C - beta S) - beta C - 2 z S = 0` with `z = lambda + e`,
/// `C = cos(sqrt z)`, `S = sin(sqrt z)/sqrt z` and `k = sqrt(-e)`,
/// expanded about `e0 = -beta²/4` where `k = beta/2`.
struct BetaSquareRelation {
    beta: f64,
    e0: f64,
    c: FloatSeries,
    s: FloatSeries,
    c_prime: FloatSeries,
    s_prime: FloatSeries,
}

struct BetaTerms {
    k: FloatSeries,
    k_prime: FloatSeries,
    z: FloatSeries,
    c: FloatSeries,
    s: FloatSeries,
    c_prime: FloatSeries,
    s_prime: FloatSeries,
}

impl BetaSquareRelation {
    fn new(beta: f64, order: usize) -> Result<Self> {
        let e0 = -beta * beta / 4.0;
        let c = kernel_series_at(AnalyticKernel::CosSqrt, e0, order + 1, "w")?;
        let s = kernel_series_at(AnalyticKernel::SincSqrt, e0, order + 1, "w")?;
        let (c_prime, s_prime) = (c.derivative(), s.derivative());
        Ok(Self { beta, e0, c, s, c_prime, s_prime })
    }

    fn terms(&self, e: &FloatSeries) -> Result<BetaTerms> {
        let n = e.order();
        let mut delta = e.clone();
        delta = &delta - &TruncatedSeries::constant("lambda", n, *delta.constant_term());
        let w = &TruncatedSeries::identity("lambda", n) + &delta;
        let half = self.beta / 2.0;
        let k = delta.scale(&(-4.0 / (self.beta * self.beta))).sqrt1p()?.scale(&half);
        let k_prime = TruncatedSeries::constant("lambda", n, -0.5).try_div(&k)?;
        Ok(BetaTerms {
            z: &TruncatedSeries::constant("lambda", n, self.e0) + &w,
            c: TruncatedSeries::compose(&self.c, &w)?,
            s: TruncatedSeries::compose(&self.s, &w)?,
            c_prime: TruncatedSeries::compose(&self.c_prime, &w)?,
            s_prime: TruncatedSeries::compose(&self.s_prime, &w)?,
            k,
            k_prime,
        })
    }
}

impl SeriesRelation<f64> for BetaSquareRelation {
    fn residual(&self, e: &FloatSeries) -> Result<FloatSeries> {
        let t = self.terms(e)?;
        let b = self.beta;
        let a = &t.c.scale(&2.0) - &t.s.scale(&b);
        let mut f = &(&(&t.k * &a) - &t.c.scale(&b)) - &(&t.z * &t.s).scale(&2.0);
        // e0 solves the lambda = 0 condition exactly; drop its rounding
        f = &f - &TruncatedSeries::constant("lambda", e.order(), *f.constant_term());
        Ok(f)
    }

    fn derivative(&self, e: &FloatSeries) -> Result<FloatSeries> {
        let t = self.terms(e)?;
        let b = self.beta;
        let a = &t.c.scale(&2.0) - &t.s.scale(&b);
        let a_prime = &t.c_prime.scale(&2.0) - &t.s_prime.scale(&b);
        let lhs = &(&t.k_prime * &a) + &(&t.k * &a_prime);
        let rhs = &(&t.c_prime.scale(&b) + &t.s.scale(&2.0)) + &(&t.z * &t.s_prime).scale(&2.0);
        Ok(&lhs - &rhs)
    }

    fn base_point(&self) -> f64 {
        self.e0
    }

    fn leading_order(&self) -> usize {
        0
    }
}

/// `e(lambda; beta)` through `order` in binary64, by formal Newton iteration
/// on the beta-form condition.
pub fn beta_series_numeric(beta: f64, order: usize) -> Result<EnergySeries> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidInput(format!("beta must be positive, got {beta}")));
    }
    let rel = BetaSquareRelation::new(beta, order)?;
    let s = newton_implicit_series(&rel, order)?;
    if s.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::PrecisionExhausted);
    }
    let mut out = EnergySeries::new(ModelKind::Square, Method::Beta, SeriesCoefficients::Float(s));
    out.beta = Some(beta);
    Ok(out)
}

/// Richardson estimate of `lim_{beta -> 0} e_j(beta)` from the closed form
/// at `beta_0, beta_0/2, beta_0/4, ...` (`levels` values).
pub fn beta_limit(j: usize, beta0: f64, levels: usize) -> Result<f64> {
    let values = (0..levels)
        .map(|i| beta_coefficient(j, beta0 / 2f64.powi(i as i32)))
        .collect::<Result<Vec<_>>>()?;
    richardson(&values, 2.0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert!((beta_coefficient(1, 2f64.ln()).unwrap() + 0.5).abs() < 1e-15);
        assert_eq!(beta_coefficient(0, 2.0).unwrap(), -1.0);
        // e_2(beta) = -1 + 5 beta/3 + O(beta²)
        let b = 1e-3;
        assert!((beta_coefficient(2, b).unwrap() + 1.0 - 5.0 * b / 3.0).abs() < 1e-5);
        assert!((beta_coefficient(2, 5e-4).unwrap() + 1.0).abs() < 1e-3);
        assert_eq!(beta_coefficient(4, 1.0), Err(Error::NoClosedForm(4)));
    }

    #[test]
    fn numeric_matches_closed_form() {
        for beta in [1.0, 0.5, 0.25, 2.0] {
            let s = beta_series_numeric(beta, 5).unwrap();
            for j in 0..=3 {
                let expect = beta_coefficient(j, beta).unwrap();
                let got = s.coefficients.coeff_f64(j);
                assert!((got - expect).abs() < 1e-10, "beta {beta} j {j}: {got} vs {expect}");
            }
        }
    }

    #[test]
    fn third_order_tends_to_four_thirds() {
        let v: Vec<f64> = [1.0, 0.5, 0.25, 0.125].iter().map(|&b| beta_coefficient(3, b).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] > w[0] && w[1] < 4.0 / 3.0));
    }
}
