//! Entire functions of `z` built from trigonometric and hyperbolic functions
//! of `sqrt(z)`, so that quantization conditions written with `k = sqrt(-e)`
//! become power series in `e`.

use num_bigint::BigInt;
use num_traits::One;

use super::truncated::{TruncatedSeries, MAX_ORDER};
use crate::error::{Error, Result};
use crate::numeric::{BigRational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnalyticKernel {
    /// `cos(sqrt z)`
    CosSqrt,
    /// `sin(sqrt z) / sqrt z`
    SincSqrt,
    /// `cosh(sqrt z)`
    CoshSqrt,
    /// `sinh(sqrt z) / sqrt z`
    SinhcSqrt,
    /// `tan^2(sqrt z)`
    TanSqSqrt,
    /// `sqrt(u) coth(sqrt u)`
    SqrtCoth,
    Exp,
    /// `sqrt(1 + z)`
    Sqrt1p,
}

/// `1/k!` for `k = 0..=n`, exact.
pub(crate) fn inverse_factorials(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            f *= BigInt::from(k);
        }
        out.push(BigRational::new(BigInt::one(), f.clone()));
    }
    out
}

fn factorial_series<T: Scalar>(var: &str, order: usize, offset: usize, alternate: bool) -> TruncatedSeries<T> {
    let inv = inverse_factorials(2 * order + offset);
    let coeffs = (0..=order)
        .map(|m| {
            let c = T::from_rational(&inv[2 * m + offset]);
            if alternate && m % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    TruncatedSeries::new(var, coeffs)
}

/// The kernel's Maclaurin series through `order`.
pub fn kernel_series<T: Scalar>(kind: AnalyticKernel, order: usize) -> Result<TruncatedSeries<T>> {
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let var = if kind == AnalyticKernel::SqrtCoth { "u" } else { "z" };
    Ok(match kind {
        AnalyticKernel::CosSqrt => factorial_series(var, order, 0, true),
        AnalyticKernel::SincSqrt => factorial_series(var, order, 1, true),
        AnalyticKernel::CoshSqrt => factorial_series(var, order, 0, false),
        AnalyticKernel::SinhcSqrt => factorial_series(var, order, 1, false),
        AnalyticKernel::TanSqSqrt => {
            let c: TruncatedSeries<T> = factorial_series(var, order, 0, true);
            let s: TruncatedSeries<T> = factorial_series(var, order, 1, true);
            let z = TruncatedSeries::identity(var, order);
            (&z * &(&s * &s)).try_div(&(&c * &c))?
        }
        AnalyticKernel::SqrtCoth => {
            let c: TruncatedSeries<T> = factorial_series(var, order, 0, false);
            let s: TruncatedSeries<T> = factorial_series(var, order, 1, false);
            c.try_div(&s)?
        }
        AnalyticKernel::Exp => {
            let inv = inverse_factorials(order);
            TruncatedSeries::new(var, inv.iter().map(T::from_rational).collect())
        }
        AnalyticKernel::Sqrt1p => TruncatedSeries::<T>::identity(var, order).sqrt1p()?,
    })
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 * (1.0 + x2 / 20.0)
    } else {
        x.sinh() / x
    }
}

/// Pointwise value for real `z`, continued analytically to `z < 0`.
pub fn kernel_eval(kind: AnalyticKernel, z: f64) -> f64 {
    let r = z.abs().sqrt();
    let pos = z >= 0.0;
    match kind {
        AnalyticKernel::CosSqrt => {
            if pos {
                r.cos()
            } else {
                r.cosh()
            }
        }
        AnalyticKernel::SincSqrt => {
            if pos {
                sinc(r)
            } else {
                sinhc(r)
            }
        }
        AnalyticKernel::CoshSqrt => {
            if pos {
                r.cosh()
            } else {
                r.cos()
            }
        }
        AnalyticKernel::SinhcSqrt => {
            if pos {
                sinhc(r)
            } else {
                sinc(r)
            }
        }
        AnalyticKernel::TanSqSqrt => {
            if pos {
                r.tan().powi(2)
            } else {
                -r.tanh().powi(2)
            }
        }
        AnalyticKernel::SqrtCoth => {
            if r < 1e-4 {
                1.0 + z / 3.0
            } else if pos {
                r / r.tanh()
            } else {
                r / r.tan()
            }
        }
        AnalyticKernel::Exp => z.exp(),
        AnalyticKernel::Sqrt1p => (1.0 + z).sqrt(),
    }
}

/// Taylor coefficients of an entire kernel about `z0`, in binary64.
///
/// Obtained by re-expanding the Maclaurin series binomially; fails with
/// `PrecisionExhausted` when the re-expansion needs more terms than the
/// order cap or cancellation would destroy more than eight digits.
pub fn kernel_series_at(kind: AnalyticKernel, z0: f64, order: usize, var: &str) -> Result<TruncatedSeries<f64>> {
    match kind {
        AnalyticKernel::CosSqrt
        | AnalyticKernel::SincSqrt
        | AnalyticKernel::CoshSqrt
        | AnalyticKernel::SinhcSqrt
        | AnalyticKernel::Exp => {}
        _ => return Err(Error::NotAvailable(format!("{kind:?} is not entire; no shifted expansion"))),
    }
    if !z0.is_finite() {
        return Err(Error::PrecisionExhausted);
    }
    // |a_k| <= 1/k!, so the tail past order + j is bounded by |z0|^j / j!
    let mut extra = 8usize;
    let mut bound = 1.0f64;
    for j in 1..=4 * MAX_ORDER {
        bound *= z0.abs() / j as f64;
        if j >= 8 && bound < 1e-20 {
            extra = j;
            break;
        }
        extra = j;
    }
    let m = order + extra;
    if m > MAX_ORDER {
        return Err(Error::PrecisionExhausted);
    }
    let base: Vec<f64> = kernel_series::<BigRational>(kind, m)?.coeffs().iter().map(|c| c.to_f64()).collect();

    let mut out = vec![0.0; order + 1];
    for (n, slot) in out.iter_mut().enumerate() {
        // sum_{k >= n} a_k C(k, n) z0^(k - n)
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut weight = 1.0; // C(k, n) z0^(k - n)
        for k in n..=m {
            if k > n {
                weight *= z0 * k as f64 / (k - n) as f64;
            }
            let t = base[k] * weight;
            sum += t;
            abs_sum += t.abs();
        }
        if !sum.is_finite() || abs_sum * f64::EPSILON > 1e-8 * sum.abs() {
            return Err(Error::PrecisionExhausted);
        }
        *slot = sum;
    }
    Ok(TruncatedSeries::new(var, out))
}
