//! The delta well in a periodic box.

use num_traits::Zero;

use super::relations::implicit_series_rational;
use super::ModelKind;
use crate::error::{Error, Result};
use crate::numeric::roots::ROOT_TOL;
use crate::numeric::{solve_bracketed, BigRational, Bracket, Scalar};
use crate::series::{RationalSeries, TruncatedSeries};

/// Box lengths used to extract the homogeneous L-series constants.
pub const LSERIES_LENGTHS: [i64; 4] = [5, 10, 20, 40];

fn check_inputs(lambda: f64, length: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() || !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidInput(format!("need lambda > 0 and L > 0, got lambda = {lambda}, L = {length}")));
    }
    Ok(())
}

/// Ground-state bracket for `k`: `(lambda/2, (lambda/2) coth(lambda L/8) + 1)`.
fn k_bracket(lambda: f64, length: f64) -> Result<Bracket> {
    let lo = lambda / 2.0;
    Bracket::new(lo, lo / (lambda * length / 8.0).tanh() + 1.0)
}

/// Ground state of `-d²/dx² - lambda δ(x)` with periodic boundary conditions
/// on a box of length `L`, from `k = (lambda/2) coth(k L/2)`, `e = -k²`.
pub fn delta_periodic_energy(lambda: f64, length: f64) -> Result<f64> {
    check_inputs(lambda, length)?;
    let f = |k: f64| k - lambda / 2.0 / (k * length / 2.0).tanh();
    let k = solve_bracketed(f, k_bracket(lambda, length)?, ROOT_TOL)?;
    Ok(-k * k)
}

/// The same state with Neumann conditions at `±L/2`, from
/// `2k tanh(k L/2) = lambda`.
pub fn delta_neumann_energy(lambda: f64, length: f64) -> Result<f64> {
    check_inputs(lambda, length)?;
    let f = |k: f64| 2.0 * k * (k * length / 2.0).tanh() - lambda;
    let k = solve_bracketed(f, k_bracket(lambda, length)?, ROOT_TOL)?;
    Ok(-k * k)
}

/// Coefficients of `(1+x)²/(1-x)²` through `order`, so that
/// `-e = (lambda²/4) sum_n c_n e^{-n k L}`.
pub fn error_expansion_coefficients(order: usize) -> Result<RationalSeries> {
    let x = TruncatedSeries::<BigRational>::identity("x", order);
    let one = TruncatedSeries::one("x", order);
    let num = &one + &x;
    let den = &one - &x;
    (&num * &num).try_div(&(&den * &den))
}

/// Constants `c_j` of the L-series `e L² = sum_j c_j (lambda L)^j`, so
/// that the coefficient of `lambda^j` in a box of length `L` is
/// `c_j L^(j-2)`.
///
/// The exact series is computed at each of [`LSERIES_LENGTHS`] and the
/// homogeneity law is checked exactly before the common constants are
/// returned.
pub fn delta_lseries_constants(order: usize) -> Result<RationalSeries> {
    let mut common: Option<Vec<BigRational>> = None;
    for l in LSERIES_LENGTHS {
        let s = implicit_series_rational(ModelKind::Delta, order, Some(l as f64))?;
        let lr = BigRational::from_int(l);
        let mut power = lr.clone() * lr.clone(); // L^(2-j) at j = 0
        let mut consts = Vec::with_capacity(order + 1);
        for j in 0..=order {
            consts.push(s.coeff(j) * power.clone());
            power = power / lr.clone();
        }
        match &common {
            None => common = Some(consts),
            Some(c) if *c == consts => {}
            Some(_) => {
                return Err(Error::EvaluationFailure(format!("L-series homogeneity law fails at L = {l}")));
            }
        }
    }
    let c = common.unwrap_or_default();
    debug_assert!(c.first().map_or(true, |c0| c0.is_zero()));
    Ok(TruncatedSeries::new("lambda_l", c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{residual, ModelSpec};
    use crate::numeric::rational;

    #[test]
    fn large_box_limit() {
        let e = delta_periodic_energy(2.0, 20.0).unwrap();
        // k ≈ 1 + 2 e^{-20}
        assert!((e + 1.0).abs() < 1e-8);
        assert!((e + 1.000_000_008_244_613_8).abs() < 1e-13, "{e}");
    }

    #[test]
    fn residual_vanishes_at_root() {
        let e = delta_periodic_energy(2.0, 10.0).unwrap();
        let m = ModelSpec::new(ModelKind::Delta, 2.0).unwrap().with_box(10.0).unwrap();
        assert!(residual(&m, e).unwrap().abs() < 1e-12);
    }

    #[test]
    fn neumann_matches_periodic() {
        let (a, b) = (delta_periodic_energy(1.0, 8.0).unwrap(), delta_neumann_energy(1.0, 8.0).unwrap());
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn error_expansion() {
        let c = error_expansion_coefficients(4).unwrap();
        let expect: Vec<_> = [1, 4, 8, 12, 16].iter().map(|&n| rational(n, 1)).collect();
        assert_eq!(c.coeffs(), expect.as_slice());
    }

    #[test]
    fn lseries_constants() {
        let c = delta_lseries_constants(5).unwrap();
        let expect = [(0, 1), (-1, 1), (-1, 12), (-1, 180), (-1, 3780), (-1, 226800)];
        for (j, &(p, q)) in expect.iter().enumerate() {
            assert_eq!(c.coeff(j), rational(p, q));
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(delta_periodic_energy(0.0, 10.0).is_err());
        assert!(delta_periodic_energy(1.0, -1.0).is_err());
    }
}
