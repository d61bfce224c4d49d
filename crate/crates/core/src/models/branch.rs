use serde::{Deserialize, Serialize};

use super::residual::recast_residual;
use super::{ModelKind, ModelSpec};
use crate::error::{Error, Result};
use crate::numeric::newton_2d;
use crate::numeric::roots::NEWTON_TOL;

/// Square-root branch point of the ground-state curve `e(lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub epsilon: f64,
    pub lambda: f64,
}

/// Solves `F = 0`, `dF/dx = 0` on the recast condition, with `dF/dx` by
/// central differences. For the exponential well `x = nu` and the returned
/// energy is `-nu²/4`.
pub fn branch_point(model: &ModelSpec) -> Result<BranchPoint> {
    let kind = model.kind;
    let start = match kind {
        ModelKind::Square => (-0.9, -0.4),
        ModelKind::PoschlTeller => (-0.2, -0.2),
        ModelKind::Exponential => (-0.5, -0.15),
        ModelKind::Delta => return Err(Error::NotAvailable("the delta well has no finite branch point".into())),
    };
    if model.box_length.is_some() || model.beta.is_some() {
        return Err(Error::NotAvailable(format!("branch point of the modified {kind} well")));
    }
    let f = |x: f64, lam: f64| recast_residual(kind, x, lam, None).unwrap_or(f64::NAN);
    let pair = |x: f64, lam: f64| {
        let h = 1e-5 * x.abs().max(1.0);
        (f(x, lam), (f(x + h, lam) - f(x - h, lam)) / (2.0 * h))
    };
    let (x, lambda) = newton_2d(pair, start, NEWTON_TOL)?;
    let epsilon = if kind == ModelKind::Exponential { -x * x / 4.0 } else { x };
    Ok(BranchPoint { epsilon, lambda })
}
