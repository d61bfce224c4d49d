use super::{linalg, poly_eval};
use crate::error::{Error, Result};
use crate::numeric::{Domain, Scalar};
use crate::series::TruncatedSeries;

/// `N(lambda)/D(lambda)` with `D(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeApproximant<T: Scalar> {
    pub numerator: Vec<T>,
    pub denominator: Vec<T>,
    pub l_deg: usize,
    pub m_deg: usize,
    /// Denominator degree asked for; larger than `m_deg` when the table
    /// entry was degenerate and had to be reduced.
    pub requested_m: usize,
}

impl<T: Scalar> PadeApproximant<T> {
    pub fn reduced(&self) -> bool {
        self.m_deg < self.requested_m
    }

    pub fn eval(&self, lambda: f64) -> Result<f64> {
        let d = poly_eval(&self.denominator, lambda);
        if d == 0.0 {
            return Err(Error::EvaluationFailure(format!("pole of the approximant at {lambda}")));
        }
        Ok(poly_eval(&self.numerator, lambda) / d)
    }

    /// Taylor expansion of `N/D` through `order`.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries<T>> {
        let n = TruncatedSeries::new("lambda", pad(&self.numerator, order));
        let d = TruncatedSeries::new("lambda", pad(&self.denominator, order));
        n.try_div(&d)
    }
}

fn pad<T: Scalar>(c: &[T], order: usize) -> Vec<T> {
    let mut v: Vec<T> = c.iter().take(order + 1).cloned().collect();
    v.resize(order + 1, T::zero());
    v
}

fn coeff<T: Scalar>(c: &[T], k: isize) -> T {
    if k < 0 {
        T::zero()
    } else {
        c.get(k as usize).cloned().unwrap_or_else(T::zero)
    }
}

fn try_entry<T: Scalar>(c: &[T], l: usize, m: usize) -> Option<(Vec<T>, Vec<T>)> {
    let mut den = vec![T::one()];
    if m > 0 {
        // sum_{k=1}^{m} b_k c_{l+i-k} = -c_{l+i}, i = 1..m
        let a: Vec<Vec<T>> = (1..=m)
            .map(|i| (1..=m).map(|k| coeff(c, (l + i) as isize - k as isize)).collect())
            .collect();
        let b: Vec<T> = (1..=m).map(|i| -coeff(c, (l + i) as isize)).collect();
        den.extend(linalg::solve(&a, &b)?);
    }
    let num = (0..=l)
        .map(|i| {
            (0..=i.min(m)).fold(T::zero(), |acc, k| acc + den[k].clone() * coeff(c, (i - k) as isize))
        })
        .collect();
    Some((num, den))
}

fn reproduces<T: Scalar>(p: &PadeApproximant<T>, c: &[T]) -> bool {
    let order = p.l_deg + p.m_deg;
    let Ok(e) = p.expand(order) else { return false };
    let scale = c.iter().take(order + 1).fold(1.0f64, |m, x| m.max(x.magnitude()));
    (0..=order).all(|k| match T::DOMAIN {
        Domain::Rational => e.coeff(k) == c[k],
        Domain::Float => (e.coeff(k) - c[k].clone()).magnitude() <= 1e-10 * scale,
    })
}

/// `[l/m]` Padé approximant of `series`. A singular denominator system is
/// retried with `m - 1, m - 2, ...` and the reduction is recorded.
pub fn pade<T: Scalar>(series: &TruncatedSeries<T>, l: usize, m: usize) -> Result<PadeApproximant<T>> {
    if series.order() < l + m {
        return Err(Error::InvalidInput(format!(
            "[{l}/{m}] needs order {} but the series stops at {}",
            l + m,
            series.order()
        )));
    }
    let c = series.coeffs();
    for mm in (0..=m).rev() {
        if let Some((numerator, denominator)) = try_entry(c, l, mm) {
            let p = PadeApproximant { numerator, denominator, l_deg: l, m_deg: mm, requested_m: m };
            if reproduces(&p, c) {
                return Ok(p);
            }
        }
    }
    Err(Error::DegeneratePade)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::exact::exact_eigenvalue;
    use crate::models::relations::implicit_series_rational;
    use crate::models::{ModelKind, ModelSpec};
    use crate::numeric::{rational, BigRational};

    #[test]
    fn geometric_is_exact() {
        let s = TruncatedSeries::new("lambda", vec![rational(1, 1); 4]);
        let p = pade(&s, 0, 1).unwrap();
        assert_eq!(p.numerator, vec![rational(1, 1)]);
        assert_eq!(p.denominator, vec![rational(1, 1), rational(-1, 1)]);
        assert!(!p.reduced());
    }

    #[test]
    fn degenerate_entry_is_reduced() {
        // c_1 = 0 makes the [1/1] system 0 * b_1 = -c_2
        let s: TruncatedSeries<BigRational> =
            TruncatedSeries::new("lambda", vec![rational(1, 1), rational(0, 1), rational(-1, 2)]);
        let p = pade(&s, 1, 1).unwrap();
        assert_eq!(p.m_deg, 0);
        assert!(p.reduced());
    }

    #[test]
    fn exponential_three_three() {
        let s = implicit_series_rational(ModelKind::Exponential, 6, None).unwrap();
        let p = pade(&s, 3, 3).unwrap();
        assert_eq!(p.expand(6).unwrap(), s);
        for (lam, tol) in [(0.25, 2e-3), (0.5, 1.5e-2), (0.75, 4e-2)] {
            let exact = exact_eigenvalue(&ModelSpec::new(ModelKind::Exponential, lam).unwrap(), 0).unwrap();
            let rel = ((p.eval(lam).unwrap() - exact) / exact).abs();
            assert!(rel < tol, "lambda {lam}: {rel}");
        }
    }

    #[test]
    fn poschl_teller_two_two() {
        let s = implicit_series_rational(ModelKind::PoschlTeller, 4, None).unwrap();
        let p = pade(&s, 2, 2).unwrap();
        let closed = 0.5 * ((1.0f64 + 0.8).sqrt() - 1.0 - 0.4);
        assert!((p.eval(0.2).unwrap() - closed).abs() < 1e-3);
    }

    #[test]
    fn float_domain() {
        let s = implicit_series_rational(ModelKind::Square, 6, None).unwrap().to_float();
        let p = pade(&s, 3, 3).unwrap();
        let e = p.expand(6).unwrap();
        for k in 0..=6 {
            assert!((e.coeff(k) - s.coeff(k)).abs() < 1e-10);
        }
    }
}
