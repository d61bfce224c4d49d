//! Floating-point quantization conditions.
//!
//! Two renditions exist per model. [`residual`] is the physical condition in
//! the energy, restricted to the ground-state branch and used for root
//! finding. [`recast_residual`] is the analytic form in `(x, lambda)` that
//! the series machinery expands; it is defined for any real `lambda`,
//! including the negative values where branch points live.

use super::{ModelKind, ModelSpec};
use crate::error::{Error, Result};
use crate::series::{kernel_eval, AnalyticKernel};

const TERM_CAP: usize = 500;

/// `F(nu, lambda)` for the exponential well, with `nu = 2 sqrt(-e)`:
///
/// `2 lambda sum_m (-lambda)^m / (m! (nu+1)...(nu+m+1)) - nu sum_m (-lambda)^m / (m! (nu+1)...(nu+m))`
///
/// This is the even-parity Bessel condition `z J_{nu+1}(z) - nu J_nu(z) = 0`
/// at `z = 2 sqrt(lambda)`, divided by `lambda^(nu/2) / Gamma(nu+1)`.
pub fn exponential_condition(nu: f64, lambda: f64) -> Result<f64> {
    if nu <= -1.0 && (nu.fract() == 0.0) {
        return Err(Error::EvaluationFailure(format!("pole of the recast form at nu = {nu}")));
    }
    // t0 = 1/(nu+1) starts the S1 sum; the S0 sum starts at 1
    let mut term0 = 1.0; // (-lambda)^m / (m! (nu+1)...(nu+m))
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for m in 0..TERM_CAP {
        if m > 0 {
            term0 *= -lambda / (m as f64 * (nu + m as f64));
        }
        let term1 = term0 / (nu + m as f64 + 1.0);
        s0 += term0;
        s1 += term1;
        if !s0.is_finite() || !s1.is_finite() {
            return Err(Error::EvaluationFailure(format!("overflow at nu = {nu}, lambda = {lambda}")));
        }
        let small = |t: f64, s: f64| t.abs() < 1e-17 * s.abs() || t == 0.0;
        if m > 2 && small(term0, s0) && small(term1, s1) {
            return Ok(2.0 * lambda * s1 - nu * s0);
        }
    }
    Err(Error::EvaluationFailure(format!(
        "series did not converge within {TERM_CAP} terms at nu = {nu}, lambda = {lambda}"
    )))
}

/// The analytic quantization function in the model's natural unknown:
/// `e` for every model except the exponential well, where it is `nu`.
pub fn recast_residual(kind: ModelKind, x: f64, lambda: f64, box_length: Option<f64>) -> Result<f64> {
    let v = match kind {
        ModelKind::PoschlTeller => x * x + (2.0 * lambda + 1.0) * x + lambda * lambda,
        ModelKind::Square => {
            let z = lambda + x;
            z * kernel_eval(AnalyticKernel::TanSqSqrt, z) + x
        }
        ModelKind::Delta => match box_length {
            Some(l) => x + lambda / l * kernel_eval(AnalyticKernel::SqrtCoth, -x * l * l / 4.0),
            None => x + lambda * lambda / 4.0,
        },
        ModelKind::Exponential => exponential_condition(x, lambda)?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::EvaluationFailure(format!("{kind} recast residual at ({x}, {lambda})")))
    }
}

fn check_range(model: &ModelSpec, e: f64) -> Result<()> {
    let lam = model.lambda;
    let ok = match (model.kind, model.box_length, model.beta) {
        (ModelKind::Square, _, Some(_)) | (ModelKind::Delta, _, _) => e <= 0.0,
        _ => e <= 0.0 && e >= -lam,
    };
    if ok && e.is_finite() {
        Ok(())
    } else {
        Err(Error::OutsidePhysicalBranch(format!("e = {e} for {} at lambda = {lam}", model.kind)))
    }
}

/// The ground-state quantization condition `F(e) = 0` for `model`.
pub fn residual(model: &ModelSpec, e: f64) -> Result<f64> {
    check_range(model, e)?;
    let lam = model.lambda;
    let k = (-e).sqrt();
    let v = match model.kind {
        ModelKind::PoschlTeller => recast_residual(model.kind, e, lam, None)?,
        ModelKind::Square => {
            let z = lam + e;
            let k1 = z.max(0.0).sqrt();
            match (model.beta, model.box_length) {
                (Some(beta), _) => {
                    // k (2 cos k1 - beta sin k1 / k1) = beta cos k1 + 2 k1 sin k1, continued to z < 0
                    let c = kernel_eval(AnalyticKernel::CosSqrt, z);
                    let s = kernel_eval(AnalyticKernel::SincSqrt, z);
                    k * (2.0 * c - beta * s) - beta * c - 2.0 * z * s
                }
                (None, Some(l)) => {
                    // even state in a periodic box: the exterior solution is cosh(k (L/2 - |x|))
                    k1 * k1.tan() - k * (k * (l / 2.0 - 1.0)).tanh()
                }
                (None, None) => k1 * k1.tan() - k,
            }
        }
        ModelKind::Delta => match model.box_length {
            Some(l) => (-k * l).exp() * (2.0 * k + lam) - 2.0 * k + lam,
            None => 2.0 * k - lam,
        },
        ModelKind::Exponential => {
            if model.box_length.is_some() {
                return Err(Error::NotAvailable("exponential well in a box".into()));
            }
            exponential_condition(2.0 * k, lam)?
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::EvaluationFailure(format!("{} residual at e = {e}", model.kind)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_at_origin() {
        let m = ModelSpec::new(ModelKind::Square, 0.0).unwrap();
        assert_eq!(residual(&m, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn beta_form_at_expansion_point() {
        for beta in [0.5, 1.0, 2.0] {
            let m = ModelSpec::new(ModelKind::Square, 0.0).unwrap().with_beta(beta).unwrap();
            let r = residual(&m, -beta * beta / 4.0).unwrap();
            assert!(r.abs() < 1e-14, "{beta}: {r}");
        }
    }

    #[test]
    fn out_of_range() {
        let m = ModelSpec::new(ModelKind::Square, 1.0).unwrap();
        assert!(matches!(residual(&m, -1.5), Err(Error::OutsidePhysicalBranch(_))));
        assert!(matches!(residual(&m, 0.1), Err(Error::OutsidePhysicalBranch(_))));
    }

    #[test]
    fn exponential_condition_small_lambda() {
        // nu ~ 2 lambda at small lambda
        let lam = 1e-3;
        let f = |nu| exponential_condition(nu, lam).unwrap();
        assert!(f(1.9 * lam) * f(2.1 * lam) < 0.0);
    }

    #[test]
    fn recast_matches_physical_form_for_square() {
        // both vanish at the same root: k1 tan k1 = k  <=>  z tan² sqrt(z) = -e
        let lam = 1.0;
        let e = -0.453_753_165_860_328_2;
        let m = ModelSpec::new(ModelKind::Square, lam).unwrap();
        assert!(residual(&m, e).unwrap().abs() < 1e-14);
        assert!(recast_residual(ModelKind::Square, e, lam, None).unwrap().abs() < 1e-14);
    }
}
