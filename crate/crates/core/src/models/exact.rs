use std::f64::consts::FRAC_PI_2;

use super::delta::delta_periodic_energy;
use super::residual::exponential_condition;
use super::{ModelKind, ModelSpec};
use crate::error::{Error, Result};
use crate::numeric::roots::ROOT_TOL;
use crate::numeric::{solve_bracketed, Bracket};

/// Ground-state (`n = 0`) or Pöschl–Teller level `n` energy.
///
/// Pöschl–Teller and the delta well use closed forms; the square and
/// exponential wells solve their quantization conditions on brackets that
/// isolate the even ground branch.
pub fn exact_eigenvalue(model: &ModelSpec, n: usize) -> Result<f64> {
    let lam = model.lambda;
    let no_state = || Error::NoSuchBoundState(format!("n = {n} for {} at lambda = {lam}", model.kind));
    match model.kind {
        ModelKind::PoschlTeller => {
            let xi = 0.5 * (1.0 + (1.0 + 4.0 * lam).sqrt());
            if (n as f64) < xi - 1.0 {
                Ok(-(xi - n as f64 - 1.0).powi(2))
            } else {
                Err(no_state())
            }
        }
        _ if n > 0 => Err(no_state()),
        _ if lam == 0.0 => Err(no_state()),
        ModelKind::Delta => match model.box_length {
            Some(l) => delta_periodic_energy(lam, l),
            None => Ok(-lam * lam / 4.0),
        },
        ModelKind::Square => {
            if model.beta.is_some() {
                return Err(Error::NotAvailable("exact root of the beta form".into()));
            }
            // k1 sin k1 = kappa cos k1 with kappa = sqrt(lambda - k1²); the
            // ground branch has k1 in (0, min(sqrt(lambda), pi/2)), where
            // this form stays finite up to e = 0
            let k1_hi = lam.sqrt().min(FRAC_PI_2);
            let exterior = |kappa: f64| match model.box_length {
                Some(l) => kappa * (kappa * (l / 2.0 - 1.0)).tanh(),
                None => kappa,
            };
            let f = |k1: f64| k1 * k1.sin() - exterior((lam - k1 * k1).max(0.0).sqrt()) * k1.cos();
            let k1 = solve_bracketed(f, Bracket::new(0.0, k1_hi)?, ROOT_TOL)?;
            Ok(k1 * k1 - lam)
        }
        ModelKind::Exponential => {
            if model.box_length.is_some() {
                return Err(Error::NotAvailable("exponential well in a box".into()));
            }
            let nu = exponential_ground_nu(lam)?;
            Ok(-nu * nu / 4.0)
        }
    }
}

/// Largest root `nu` of the exponential-well condition in `(0, 2 sqrt(lambda))`.
fn exponential_ground_nu(lam: f64) -> Result<f64> {
    let top = 2.0 * lam.sqrt();
    let f = |nu: f64| exponential_condition(nu, lam).unwrap_or(f64::NAN);
    // scan down from nu = 2 sqrt(lambda) for the first sign change
    let steps = 256;
    let mut hi = top;
    let mut f_hi = f(hi);
    for i in 1..=steps {
        let lo = top * (1.0 - i as f64 / steps as f64);
        let f_lo = f(lo);
        if f_lo.is_nan() || f_hi.is_nan() {
            return Err(Error::EvaluationFailure(format!("exponential condition at lambda = {lam}")));
        }
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_lo.signum() != f_hi.signum() {
            return solve_bracketed(f, Bracket::new(lo, hi)?, ROOT_TOL);
        }
        hi = lo;
        f_hi = f_lo;
    }
    Err(Error::NoSuchBoundState(format!("no exponential-well root at lambda = {lam}")))
}

/// Large-strength behaviour `e_n ≈ leading·lambda + subleading·sqrt(lambda)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeLambda {
    pub leading: f64,
    pub subleading: Option<f64>,
    /// Set when the subleading term is unavailable.
    pub note: Option<&'static str>,
}

pub fn large_lambda(model: &ModelSpec, n: usize) -> LargeLambda {
    match model.kind.curvature_at_origin() {
        Some(v2) if v2 > 0.0 => LargeLambda {
            leading: -1.0,
            subleading: Some((2 * n + 1) as f64 * (v2 / 2.0).sqrt()),
            note: None,
        },
        _ => LargeLambda { leading: -1.0, subleading: None, note: Some("no Taylor expansion at origin") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: ModelKind, lam: f64) -> ModelSpec {
        ModelSpec::new(kind, lam).unwrap()
    }

    #[test]
    fn poschl_teller_levels() {
        assert_eq!(exact_eigenvalue(&spec(ModelKind::PoschlTeller, 2.0), 0).unwrap(), -1.0);
        let m = spec(ModelKind::PoschlTeller, 6.0);
        assert_eq!(exact_eigenvalue(&m, 0).unwrap(), -4.0);
        assert_eq!(exact_eigenvalue(&m, 1).unwrap(), -1.0);
        assert!(matches!(exact_eigenvalue(&m, 2), Err(Error::NoSuchBoundState(_))));
    }

    #[test]
    fn delta_closed_form() {
        assert_eq!(exact_eigenvalue(&spec(ModelKind::Delta, 3.0), 0).unwrap(), -2.25);
        assert!(exact_eigenvalue(&spec(ModelKind::Delta, 3.0), 1).is_err());
    }

    #[test]
    fn square_ground_state() {
        // independent high-precision bisection of k1 tan k1 = k
        let e = exact_eigenvalue(&spec(ModelKind::Square, 1.0), 0).unwrap();
        assert!((e + 0.453_753_165_860_328_25).abs() < 1e-12, "{e}");
        // sqrt(lambda) below pi/2: the bracket reaches e = 0
        for (lam, expect) in [(0.1, -0.008_842_139_071_180_675), (0.5, -0.153_960_796_351_806_29), (2.0, -1.207_795_667_726_789_1)] {
            let e = exact_eigenvalue(&spec(ModelKind::Square, lam), 0).unwrap();
            assert!((e - expect).abs() < 1e-12, "{lam}: {e}");
        }
    }

    #[test]
    fn exponential_ground_state() {
        // Bessel-function roots computed independently at 40 digits
        for (lam, expect) in [
            (0.25, -0.038_026_960_437_990_29),
            (0.5, -0.114_292_022_951_653_2),
            (1.0, -0.316_654_654_927_936_8),
            (5.0, -2.625_650_273_180_690_5),
        ] {
            let e = exact_eigenvalue(&spec(ModelKind::Exponential, lam), 0).unwrap();
            assert!((e - expect).abs() < 1e-11, "{lam}: {e} vs {expect}");
        }
    }

    #[test]
    fn large_lambda_terms() {
        let pt = spec(ModelKind::PoschlTeller, 1.0);
        assert_eq!(large_lambda(&pt, 0).subleading, Some(1.0));
        assert_eq!(large_lambda(&pt, 1).subleading, Some(3.0));
        let sq = large_lambda(&spec(ModelKind::Square, 1.0), 0);
        assert_eq!(sq.leading, -1.0);
        assert_eq!(sq.subleading, None);
        assert!(sq.note.is_some());
    }
}
