//! Quantization conditions recast as relations analytic in `(x, lambda)`.

use super::ModelKind;
use crate::energy::{EnergySeries, Method, SeriesCoefficients};
use crate::error::{Error, Result};
use crate::numeric::scalar::f64_to_rational;
use crate::numeric::{BigRational, Scalar};
use crate::series::{kernel_series, newton_implicit_series, AnalyticKernel, SeriesRelation, TruncatedSeries};

type Ts<T> = TruncatedSeries<T>;

fn lambda<T: Scalar>(order: usize) -> Ts<T> {
    Ts::identity("lambda", order)
}

/// `e² + (2 lambda + 1) e + lambda² = 0`.
pub struct PoschlTellerRelation;

impl<T: Scalar> SeriesRelation<T> for PoschlTellerRelation {
    fn residual(&self, e: &Ts<T>) -> Result<Ts<T>> {
        let n = e.order();
        let lam = lambda::<T>(n);
        let b = &lam.scale(&T::from_int(2)) + &Ts::one("lambda", n);
        Ok(&(&(e * e) + &(&b * e)) + &(&lam * &lam))
    }
    fn derivative(&self, e: &Ts<T>) -> Result<Ts<T>> {
        let n = e.order();
        let lam = lambda::<T>(n);
        Ok(&(&e.scale(&T::from_int(2)) + &lam.scale(&T::from_int(2))) + &Ts::one("lambda", n))
    }
    fn leading_order(&self) -> usize {
        2
    }
}

/// `z tan²(sqrt z) + e = 0` with `z = lambda + e`.
pub struct SquareRelation<T: Scalar> {
    tan_sq: Ts<T>,
    tan_sq_prime: Ts<T>,
}

impl<T: Scalar> SquareRelation<T> {
    pub fn new(order: usize) -> Result<Self> {
        let tan_sq = kernel_series::<T>(AnalyticKernel::TanSqSqrt, order + 1)?;
        let tan_sq_prime = tan_sq.derivative();
        Ok(Self { tan_sq, tan_sq_prime })
    }
}

impl<T: Scalar> SeriesRelation<T> for SquareRelation<T> {
    fn residual(&self, e: &Ts<T>) -> Result<Ts<T>> {
        let z = &lambda::<T>(e.order()) + e;
        let g = Ts::compose(&self.tan_sq, &z)?;
        Ok(&(&z * &g) + e)
    }
    fn derivative(&self, e: &Ts<T>) -> Result<Ts<T>> {
        let n = e.order();
        let z = &lambda::<T>(n) + e;
        let g = Ts::compose(&self.tan_sq, &z)?;
        let gp = Ts::compose(&self.tan_sq_prime, &z)?;
        Ok(&(&g + &(&z * &gp)) + &Ts::one("lambda", n))
    }
    fn leading_order(&self) -> usize {
        2
    }
}

/// `e + (lambda/L) sqrt(u) coth(sqrt u) = 0` with `u = -e L²/4`: the even
/// ground state of a delta well in a periodic box of length `L`.
pub struct DeltaPeriodicRelation<T: Scalar> {
    length: T,
    sqrtcoth: Ts<T>,
    sqrtcoth_prime: Ts<T>,
}

impl<T: Scalar> DeltaPeriodicRelation<T> {
    pub fn new(length: T, order: usize) -> Result<Self> {
        let sqrtcoth = kernel_series::<T>(AnalyticKernel::SqrtCoth, order + 1)?;
        let sqrtcoth_prime = sqrtcoth.derivative();
        Ok(Self { length, sqrtcoth, sqrtcoth_prime })
    }

    fn u(&self, e: &Ts<T>) -> Ts<T> {
        let c = -(self.length.clone() * self.length.clone()) / T::from_int(4);
        e.scale(&c)
    }
}

impl<T: Scalar> SeriesRelation<T> for DeltaPeriodicRelation<T> {
    fn residual(&self, e: &Ts<T>) -> Result<Ts<T>> {
        let h = Ts::compose(&self.sqrtcoth, &self.u(e))?;
        let lam = lambda::<T>(e.order()).scale(&(T::one() / self.length.clone()));
        Ok(e + &(&lam * &h))
    }
    fn derivative(&self, e: &Ts<T>) -> Result<Ts<T>> {
        let hp = Ts::compose(&self.sqrtcoth_prime, &self.u(e))?;
        // d/de of (lambda/L) h(-e L²/4) = -(lambda L / 4) h'
        let c = -self.length.clone() / T::from_int(4);
        let lam = lambda::<T>(e.order()).scale(&c);
        Ok(&Ts::one("lambda", e.order()) + &(&lam * &hp))
    }
    fn leading_order(&self) -> usize {
        1
    }
}

/// `e + lambda²/4 = 0`, the delta well on the line.
pub struct DeltaRelation;

impl<T: Scalar> SeriesRelation<T> for DeltaRelation {
    fn residual(&self, e: &Ts<T>) -> Result<Ts<T>> {
        let lam = lambda::<T>(e.order());
        Ok(e + &(&lam * &lam).scale(&T::from_ratio(1, 4)))
    }
    fn derivative(&self, e: &Ts<T>) -> Result<Ts<T>> {
        Ok(Ts::one("lambda", e.order()))
    }
    fn leading_order(&self) -> usize {
        2
    }
}

/// The Gamma-free exponential-well condition in `nu = 2 sqrt(-e)`:
/// `2 lambda S1 - nu S0 = 0` with
/// `S0 = sum_m (-lambda)^m / (m! (nu+1)...(nu+m))` and
/// `S1 = sum_m (-lambda)^m / (m! (nu+1)...(nu+m+1))`.
pub struct ExponentialRelation;

struct ExponentialSums<T: Scalar> {
    s0: Ts<T>,
    s1: Ts<T>,
    ds0: Ts<T>,
    ds1: Ts<T>,
}

impl ExponentialRelation {
    fn sums<T: Scalar>(nu: &Ts<T>) -> Result<ExponentialSums<T>> {
        let n = nu.order();
        let one = Ts::<T>::one("lambda", n);
        let lam = lambda::<T>(n);
        let mut s0 = Ts::zero("lambda", n);
        let mut s1 = Ts::zero("lambda", n);
        let mut ds0 = Ts::zero("lambda", n);
        let mut ds1 = Ts::zero("lambda", n);
        // prod = 1/((nu+1)...(nu+m)), harm = sum_{i<=m} 1/(nu+i)
        let mut prod = one.clone();
        let mut harm = Ts::zero("lambda", n);
        // (-lambda)^m / m!
        let mut pre = one.clone();
        for m in 0..=n {
            if m > 0 {
                pre = (&pre * &lam).scale(&T::from_ratio(-1, m as i64));
            }
            if pre.is_zero() {
                break;
            }
            let inv_next = one.try_div(&(nu + &Ts::constant("lambda", n, T::from_int(m as i64 + 1))))?;
            let a0 = &pre * &prod;
            let prod1 = &prod * &inv_next;
            let harm1 = &harm + &inv_next;
            let a1 = &pre * &prod1;
            ds0 = &ds0 - &(&a0 * &harm);
            ds1 = &ds1 - &(&a1 * &harm1);
            s0 = &s0 + &a0;
            s1 = &s1 + &a1;
            prod = prod1;
            harm = harm1;
        }
        Ok(ExponentialSums { s0, s1, ds0, ds1 })
    }
}

impl<T: Scalar> SeriesRelation<T> for ExponentialRelation {
    fn residual(&self, nu: &Ts<T>) -> Result<Ts<T>> {
        let s = Self::sums(nu)?;
        let lam2 = lambda::<T>(nu.order()).scale(&T::from_int(2));
        Ok(&(&lam2 * &s.s1) - &(nu * &s.s0))
    }
    fn derivative(&self, nu: &Ts<T>) -> Result<Ts<T>> {
        let s = Self::sums(nu)?;
        let lam2 = lambda::<T>(nu.order()).scale(&T::from_int(2));
        Ok(&(&(&lam2 * &s.ds1) - &s.s0) - &(nu * &s.ds0))
    }
    fn leading_order(&self) -> usize {
        1
    }
}

/// Solves the recast condition of `kind` for the ground-state series in
/// exact arithmetic. `box_length` selects the periodic-box delta well.
pub fn implicit_series_rational(kind: ModelKind, order: usize, box_length: Option<f64>) -> Result<TruncatedSeries<BigRational>> {
    match (kind, box_length) {
        (ModelKind::PoschlTeller, None) => newton_implicit_series(&PoschlTellerRelation, order),
        (ModelKind::Square, None) => newton_implicit_series(&SquareRelation::<BigRational>::new(order)?, order),
        (ModelKind::Delta, None) => newton_implicit_series(&DeltaRelation, order),
        (ModelKind::Delta, Some(l)) => {
            let l = f64_to_rational(l)
                .filter(|_| l > 0.0)
                .ok_or_else(|| Error::InvalidInput(format!("box length must be positive, got {l}")))?;
            newton_implicit_series(&DeltaPeriodicRelation::new(l, order)?, order)
        }
        (ModelKind::Exponential, None) => {
            let nu = newton_implicit_series(&ExponentialRelation, order)?;
            Ok((&nu * &nu).scale(&BigRational::from_ratio(-1, 4)))
        }
        (kind, Some(_)) => Err(Error::NotAvailable(format!("exact box series for the {kind} well"))),
    }
}

/// Ground-state energy series of `kind` from its recast quantization condition.
pub fn implicit_series(kind: ModelKind, order: usize, box_length: Option<f64>) -> Result<EnergySeries> {
    let s = implicit_series_rational(kind, order, box_length)?;
    let mut out = EnergySeries::new(kind, Method::Implicit, SeriesCoefficients::Rational(s));
    if box_length.is_some() {
        out.method = Method::LSeries;
        out.box_length = box_length;
    }
    Ok(out)
}

/// `(1/2)(sqrt(1 + 4 lambda) - 1 - 2 lambda)`, the Pöschl–Teller ground
/// state in closed form.
pub fn poschl_teller_closed_form(order: usize) -> Result<TruncatedSeries<BigRational>> {
    let lam = lambda::<BigRational>(order);
    let root = lam.scale(&BigRational::from_int(4)).sqrt1p()?;
    let rest = &Ts::one("lambda", order) + &lam.scale(&BigRational::from_int(2));
    Ok((&root - &rest).scale(&BigRational::from_ratio(1, 2)))
}
