use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::series::TruncatedSeries;

/// Domb–Sykes estimate of the nearest singularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub radius: f64,
    /// `-1` for a singularity on the negative real axis.
    pub singularity_sign: i8,
    /// Radius extrapolated from each consecutive pair of ratios, in order.
    pub history: Vec<f64>,
}

const MIN_TERMS: usize = 10;

/// Domb–Sykes: `|c_j / c_(j-1)|` is fitted linearly in `1/j` through
/// consecutive pairs and extrapolated to `1/j = 0`, giving `1/R`. The fit is
/// exact for a pure `(1 - lambda/R)^g` singularity.
pub fn radius_estimate<T: Scalar>(series: &TruncatedSeries<T>) -> Result<RadiusEstimate> {
    let c: Vec<f64> = series.coeffs().iter().map(Scalar::to_f64).collect();
    let start = c.iter().position(|&x| x != 0.0).ok_or_else(|| Error::NoReliableEstimate("zero series".into()))?;
    let tail = &c[start..];
    let run = tail.iter().take_while(|&&x| x != 0.0 && x.is_finite()).count();
    if run < MIN_TERMS {
        return Err(Error::NoReliableEstimate(format!(
            "{run} consecutive nonzero coefficients from order {start}, need {MIN_TERMS}"
        )));
    }
    let tail = &tail[..run];
    let pts: Vec<(f64, f64)> =
        (1..run).map(|i| (1.0 / (start + i) as f64, (tail[i] / tail[i - 1]).abs())).collect();
    let history: Vec<f64> = pts
        .windows(2)
        .map(|w| {
            let ((x1, r1), (x2, r2)) = (w[0], w[1]);
            1.0 / (r2 - x2 * (r1 - r2) / (x1 - x2))
        })
        .collect();

    let late = &tail[run / 2..];
    let flips = late.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    let sign = if flips == late.len() - 1 {
        -1
    } else if flips == 0 {
        1
    } else {
        return Err(Error::NoReliableEstimate(format!(
            "{flips} sign changes in the last {} coefficients",
            late.len()
        )));
    };

    let n = history.len();
    let radius = history[n - 1];
    let spread = (history[n - 1] - history[n - 2]).abs().max((history[n - 2] - history[n - 3]).abs());
    if !(radius > 0.0) || !radius.is_finite() || spread > 0.05 * radius {
        return Err(Error::NoReliableEstimate(format!("estimates not settled: last three {:?}", &history[n - 3..])));
    }
    Ok(RadiusEstimate { radius, singularity_sign: sign, history })
}
