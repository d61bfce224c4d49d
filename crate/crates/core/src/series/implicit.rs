use super::truncated::TruncatedSeries;
use crate::error::{Error, Result};
use crate::numeric::Scalar;

/// An analytic relation `F(x, lambda) = 0` that can be evaluated along a
/// candidate series `x(lambda)`.
pub trait SeriesRelation<T: Scalar> {
    /// `F(x(lambda), lambda)` as a series in `lambda`.
    fn residual(&self, x: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>>;

    /// `dF/dx` evaluated along `x(lambda)`.
    fn derivative(&self, x: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>>;

    /// `x(0)`.
    fn base_point(&self) -> T {
        T::zero()
    }

    /// Lowest power of `lambda` in `x(lambda) - x(0)`.
    fn leading_order(&self) -> usize;

    fn variable(&self) -> &str {
        "lambda"
    }
}

fn settled<T: Scalar>(step: &TruncatedSeries<T>, x: &TruncatedSeries<T>) -> bool {
    let scale = x.coeffs().iter().fold(1.0f64, |m, c| m.max(c.magnitude()));
    step.coeffs().iter().all(|c| c.is_zero() || c.negligible(scale * 1e-2))
}

/// Solves `rel` for `x(lambda)` through `order` by Newton's method in the
/// truncated series ring. Each step doubles the number of correct
/// coefficients, so `log2(order) + 4` steps always suffice.
pub fn newton_implicit_series<T: Scalar>(rel: &dyn SeriesRelation<T>, order: usize) -> Result<TruncatedSeries<T>> {
    if order < rel.leading_order() {
        return Err(Error::InvalidInput(format!(
            "order {order} is below the leading order {}",
            rel.leading_order()
        )));
    }
    let var = rel.variable().to_string();
    let mut x = TruncatedSeries::constant(var, order, rel.base_point());

    let d0 = rel.derivative(&x)?;
    let d0 = d0.constant_term();
    if d0.is_zero() || !d0.to_f64().is_finite() || d0.negligible(1.0) {
        return Err(Error::ImplicitFunctionViolated);
    }

    let cap = (usize::BITS - order.leading_zeros()) as usize + 4;
    for _ in 0..cap {
        let f = rel.residual(&x)?;
        if f.is_zero() {
            return Ok(x);
        }
        let step = f.try_div(&rel.derivative(&x)?)?;
        x = &x - &step;
        if T::DOMAIN == crate::numeric::Domain::Float && settled(&step, &x) {
            return Ok(x);
        }
    }
    if rel.residual(&x)?.is_zero() {
        Ok(x)
    } else {
        Err(Error::DivergentIteration)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rational, BigRational};

    /// x = lambda (1 + x)^2, the Catalan generating function shifted.
    struct Catalan;

    impl SeriesRelation<BigRational> for Catalan {
        fn residual(&self, x: &TruncatedSeries<BigRational>) -> Result<TruncatedSeries<BigRational>> {
            let n = x.order();
            let one = TruncatedSeries::one("lambda", n);
            let lam = TruncatedSeries::identity("lambda", n);
            let y = &one + x;
            Ok(x - &(&lam * &(&y * &y)))
        }
        fn derivative(&self, x: &TruncatedSeries<BigRational>) -> Result<TruncatedSeries<BigRational>> {
            let n = x.order();
            let one = TruncatedSeries::one("lambda", n);
            let lam = TruncatedSeries::identity("lambda", n);
            let two = rational(2, 1);
            Ok(&one - &(&lam * &(&one + x)).scale(&two))
        }
        fn leading_order(&self) -> usize {
            1
        }
    }

    struct Degenerate;

    impl SeriesRelation<BigRational> for Degenerate {
        fn residual(&self, x: &TruncatedSeries<BigRational>) -> Result<TruncatedSeries<BigRational>> {
            Ok(&(x * x) - &TruncatedSeries::identity("lambda", x.order()))
        }
        fn derivative(&self, x: &TruncatedSeries<BigRational>) -> Result<TruncatedSeries<BigRational>> {
            Ok(x.scale(&rational(2, 1)))
        }
        fn leading_order(&self) -> usize {
            1
        }
    }

    #[test]
    fn catalan_numbers() {
        let x = newton_implicit_series(&Catalan, 8).unwrap();
        let expect = [0, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (c, e) in x.coeffs().iter().zip(expect) {
            assert_eq!(*c, rational(e, 1));
        }
        assert!(Catalan.residual(&x).unwrap().is_zero());
    }

    #[test]
    fn nondegeneracy_checked() {
        assert_eq!(
            newton_implicit_series(&Degenerate, 4).unwrap_err(),
            Error::ImplicitFunctionViolated
        );
    }
}
