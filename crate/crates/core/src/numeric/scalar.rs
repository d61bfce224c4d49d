//! Coefficient fields used by the series and approximant code.
//!
//! Two fields are supported: exact rationals ([`BigRational`]) and binary64.
//! Everything generic in the crate is written against [`Scalar`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

/// Which field a series or approximant lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Rational,
    Float,
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const DOMAIN: Domain;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn to_f64(&self) -> f64;

    /// The exact value, for fields that have one.
    fn as_rational(&self) -> Option<BigRational>;

    /// Magnitude used for pivot selection. Exact fields only need it to be
    /// nonzero for nonzero values.
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// True when `self` must be treated as zero for elimination purposes,
    /// relative to `scale`.
    fn negligible(&self, scale: f64) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

impl Scalar for BigRational {
    const DOMAIN: Domain = Domain::Rational;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn magnitude(&self) -> f64 {
        let m = rational_to_f64(&self.abs());
        if m == 0.0 && !self.is_zero() {
            f64::MIN_POSITIVE
        } else {
            m
        }
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const DOMAIN: Domain = Domain::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_rational(&self) -> Option<BigRational> {
        None
    }

    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE)
    }
}

/// Converts a rational to the nearest-ish binary64, even when numerator and
/// denominator individually overflow.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    // scale to roughly unit magnitude, keeping 64 significant bits
    let (num, den) = if shift > 0 {
        (r.numer().clone(), r.denom() << (shift as usize))
    } else {
        (r.numer() << ((-shift) as usize), r.denom().clone())
    };
    let q = (num << 64usize) / den;
    ldexp(q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-64), shift)
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Exact binary value of a finite float as a rational.
pub fn f64_to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}
