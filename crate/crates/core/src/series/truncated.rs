use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numeric::{BigRational, Domain, Scalar};

/// Maximum supported truncation order.
pub const MAX_ORDER: usize = 200;

/// A power series `c_0 + c_1 x + ... + c_N x^N` with everything beyond `x^N`
/// discarded.
///
/// Binary operators on references panic when the operands disagree on
/// variable or order; [`ts_arith`] is the checked entry point.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    var: String,
    coeffs: Vec<T>,
}

pub type RationalSeries = TruncatedSeries<BigRational>;
pub type FloatSeries = TruncatedSeries<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn new(var: impl Into<String>, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        Self { var: var.into(), coeffs }
    }

    pub fn zero(var: impl Into<String>, order: usize) -> Self {
        Self::new(var, vec![T::zero(); order + 1])
    }

    pub fn constant(var: impl Into<String>, order: usize, c: T) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: impl Into<String>, order: usize) -> Self {
        Self::constant(var, order, T::one())
    }

    /// The series `x` itself.
    pub fn identity(var: impl Into<String>, order: usize) -> Self {
        Self::monomial(var, order, 1, T::one())
    }

    /// `c x^k`, or zero when `k` exceeds the order.
    pub fn monomial(var: impl Into<String>, order: usize, k: usize, c: T) -> Self {
        let mut s = Self::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn domain(&self) -> Domain {
        T::DOMAIN
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn renamed(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    /// Truncates or zero-pads to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, T::zero());
        Self { var: self.var.clone(), coeffs }
    }

    pub fn compatible(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::IncompatibleSeries(format!(
                "variables {} and {}",
                self.var, other.var
            )));
        }
        if self.order() != other.order() {
            return Err(Error::IncompatibleSeries(format!(
                "orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries { var: self.var.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_float(&self) -> FloatSeries {
        self.map(|c| c.to_f64())
    }

    /// Multiplication by `x^k`, truncated.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(self.var.clone(), n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Formal derivative. The top coefficient is unknown after
    /// differentiation and is set to zero, so the result is exact only
    /// through order `N - 1`.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(self.var.clone(), n);
        for k in 1..=n {
            out.coeffs[k - 1] = self.coeffs[k].clone() * T::from_int(k as i64);
        }
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { var: self.var.clone(), coeffs: out }
    }

    /// Power-series long division.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let b0 = &other.coeffs[0];
        if b0.negligible(other.coeffs.iter().fold(0.0, |m, c| m.max(c.magnitude()))) || b0.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let n = self.order();
        let mut q: Vec<T> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i {
                if !other.coeffs[j].is_zero() {
                    acc = acc - other.coeffs[j].clone() * q[i - j].clone();
                }
            }
            q.push(acc / b0.clone());
        }
        Ok(Self { var: self.var.clone(), coeffs: q })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.var.clone(), self.order()).try_div(self)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.var.clone(), self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `outer(inner(x))`, with `outer` a series in any variable and `inner`
    /// nilpotent (zero constant term). The result is in `inner`'s variable
    /// and order.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonNilpotentArgument);
        }
        let n = inner.order();
        // x^m vanishes beyond order n, so terms above n never contribute
        let top = outer.order().min(n);
        let mut acc = Self::constant(inner.var.clone(), n, outer.coeff(top));
        for k in (0..top).rev() {
            acc = acc.mul_impl(inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + outer.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// `sqrt(1 + self)` on the branch with constant term 1.
    pub fn sqrt1p(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::UnsupportedBranchPoint);
        }
        let n = self.order();
        let mut target = self.clone();
        target.coeffs[0] = T::one();
        let half = T::from_ratio(1, 2);
        let mut s = Self::one(self.var.clone(), n);
        let cap = (usize::BITS - n.leading_zeros()) as usize + 4;
        for _ in 0..cap {
            let next = (&s + &target.try_div(&s)?).scale(&half);
            let settled = next.coeffs.iter().zip(&s.coeffs).all(|(a, b)| {
                let d = a.clone() - b.clone();
                d.is_zero() || d.negligible(a.magnitude().max(1.0))
            });
            s = next;
            if settled {
                return Ok(s);
            }
        }
        Ok(s)
    }

    /// Horner evaluation in binary64.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        self.compatible(rhs).expect("series addition");
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        self.compatible(rhs).expect("series subtraction");
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        self.compatible(rhs).expect("series multiplication");
        self.mul_impl(rhs)
    }
}

impl<T: Scalar> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn neg(self) -> TruncatedSeries<T> {
        self.map(|c| -c.clone())
    }
}

/// Checked series arithmetic.
pub fn ts_arith<T: Scalar>(
    a: &TruncatedSeries<T>,
    b: &TruncatedSeries<T>,
    op: ArithOp,
) -> Result<TruncatedSeries<T>> {
    a.compatible(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.try_div(b)?,
    })
}

pub fn ts_compose<T: Scalar>(outer: &TruncatedSeries<T>, inner: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
    TruncatedSeries::compose(outer, inner)
}

pub fn ts_sqrt1p<T: Scalar>(a: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
    a.sqrt1p()
}

impl<T: Scalar + fmt::Display> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c}){}", self.var)?,
                _ => write!(f, "({c}){}^{k}", self.var)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

impl<T: Scalar> fmt::Debug for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("var", &self.var)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational;

    fn rs(c: &[(i64, i64)]) -> RationalSeries {
        TruncatedSeries::new("lambda", c.iter().map(|&(n, d)| rational(n, d)).collect())
    }

    #[test]
    fn product_of_conjugates() {
        let a = rs(&[(1, 1), (1, 1), (0, 1)]);
        let b = rs(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(&a * &b, rs(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn geometric_series() {
        let one = RationalSeries::one("lambda", 4);
        let d = rs(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(one.try_div(&d).unwrap(), rs(&[(1, 1); 5]));
    }

    #[test]
    fn additive_inverse() {
        let a = rs(&[(3, 7), (-2, 5), (9, 4)]);
        let z = RationalSeries::zero("lambda", 2);
        assert!((&a + &(&z - &a)).is_zero());
    }

    #[test]
    fn division_by_nilpotent() {
        let a = RationalSeries::one("lambda", 3);
        let b = RationalSeries::identity("lambda", 3);
        assert_eq!(a.try_div(&b), Err(Error::NonUnitDivisor));
    }

    #[test]
    fn incompatible_operands() {
        let a = RationalSeries::one("lambda", 3);
        assert!(matches!(
            ts_arith(&a, &RationalSeries::one("z", 3), ArithOp::Add),
            Err(Error::IncompatibleSeries(_))
        ));
        assert!(matches!(
            ts_arith(&a, &RationalSeries::one("lambda", 4), ArithOp::Mul),
            Err(Error::IncompatibleSeries(_))
        ));
    }

    #[test]
    fn compose_simple() {
        let outer = TruncatedSeries::new("z", vec![rational(1, 1), rational(1, 1), rational(0, 1)]);
        let inner = rs(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(ts_compose(&outer, &inner).unwrap(), rs(&[(1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn compose_exp() {
        // e^(l + l^2) = e^l e^(l^2) = (1 + l + l^2/2 + l^3/6)(1 + l^2)
        let exp = TruncatedSeries::new(
            "z",
            vec![rational(1, 1), rational(1, 1), rational(1, 2), rational(1, 6)],
        );
        let inner = rs(&[(0, 1), (1, 1), (1, 1), (0, 1)]);
        assert_eq!(ts_compose(&exp, &inner).unwrap(), rs(&[(1, 1), (1, 1), (3, 2), (7, 6)]));
    }

    #[test]
    fn compose_with_zero() {
        let outer = TruncatedSeries::new("z", vec![rational(5, 2), rational(1, 1), rational(3, 1)]);
        let zero = RationalSeries::zero("lambda", 2);
        assert_eq!(ts_compose(&outer, &zero).unwrap(), rs(&[(5, 2), (0, 1), (0, 1)]));
    }

    #[test]
    fn compose_needs_nilpotent() {
        let outer = RationalSeries::one("z", 2);
        let inner = RationalSeries::one("lambda", 2);
        assert_eq!(ts_compose(&outer, &inner), Err(Error::NonNilpotentArgument));
    }

    #[test]
    fn sqrt_one_plus_four_lambda() {
        let a = rs(&[(0, 1), (4, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(a.sqrt1p().unwrap(), rs(&[(1, 1), (2, 1), (-2, 1), (4, 1), (-10, 1)]));
        let z = RationalSeries::zero("lambda", 4);
        assert_eq!(z.sqrt1p().unwrap(), RationalSeries::one("lambda", 4));
        assert_eq!(RationalSeries::one("lambda", 4).sqrt1p(), Err(Error::UnsupportedBranchPoint));
    }

    #[test]
    fn float_sqrt() {
        let a = FloatSeries::new("x", vec![0.0, 4.0, 0.0, 0.0, 0.0]);
        let s = a.sqrt1p().unwrap();
        for (c, e) in s.coeffs().iter().zip([1.0, 2.0, -2.0, 4.0, -10.0]) {
            assert!((c - e).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_and_shift() {
        let a = rs(&[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(a.derivative(), rs(&[(2, 1), (6, 1), (0, 1)]));
        assert_eq!(a.shift_up(1), rs(&[(0, 1), (1, 1), (2, 1)]));
    }
}
