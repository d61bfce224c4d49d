//! Scalar and planar root finding.

use crate::error::{Error, Result};

/// Default tolerance for bracketed root finding.
pub const ROOT_TOL: f64 = 1e-12;
/// Default residual tolerance for [`newton_2d`].
pub const NEWTON_TOL: f64 = 1e-10;

const MAX_BRACKET_ITERS: usize = 400;
const MAX_NEWTON_ITERS: usize = 100;

/// An interval on which a function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidInput(format!("bracket requires lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

fn eval(f: &impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::EvaluationFailure(format!("f({x}) = {y}")))
    }
}

/// Shrinks `b` around a sign change of `f` until its width is at most `tol`.
///
/// Secant (regula falsi with the Illinois modification) steps are taken
/// while they make progress; a bisection is forced whenever two consecutive
/// steps fail to halve the bracket, so the width always reaches `tol`.
pub fn refine_bracket(f: impl Fn(f64) -> f64, b: Bracket, tol: f64) -> Result<Bracket> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut c) = (b.lo, b.hi);
    let mut fa = eval(&f, a)?;
    let mut fc = eval(&f, c)?;
    if fa == 0.0 {
        return Ok(Bracket { lo: a, hi: a });
    }
    if fc == 0.0 {
        return Ok(Bracket { lo: c, hi: c });
    }
    if fa.signum() == fc.signum() {
        return Err(Error::InvalidBracket { lo: a, hi: c });
    }

    let mut side = 0i8;
    let mut last_width = c - a;
    let mut slow_steps = 0;
    for _ in 0..MAX_BRACKET_ITERS {
        let width = c - a;
        if width <= tol {
            return Ok(Bracket { lo: a, hi: c });
        }
        let mut x = if slow_steps >= 2 {
            slow_steps = 0;
            0.5 * (a + c)
        } else {
            (a * fc - c * fa) / (fc - fa)
        };
        if !(x > a && x < c) {
            x = 0.5 * (a + c);
        }
        // keep the secant iterate off the endpoints so the bracket shrinks
        let guard = 0.25 * tol;
        x = x.clamp(a + guard.min(0.5 * width), c - guard.min(0.5 * width));

        let fx = eval(&f, x)?;
        if fx == 0.0 {
            return Ok(Bracket { lo: x, hi: x });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fc *= 0.5;
            }
            side = -1;
        } else {
            c = x;
            fc = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        let new_width = c - a;
        if new_width > 0.5 * last_width {
            slow_steps += 1;
        } else {
            slow_steps = 0;
            last_width = new_width;
        }
    }
    Err(Error::NoConvergence(MAX_BRACKET_ITERS))
}

/// Root of `f` inside a sign-change bracket, located to within `tol`.
pub fn solve_bracketed(f: impl Fn(f64) -> f64, b: Bracket, tol: f64) -> Result<f64> {
    let fin = refine_bracket(&f, b, tol)?;
    if fin.lo == fin.hi {
        return Ok(fin.lo);
    }
    // report whichever endpoint has the smaller residual
    let (flo, fhi) = (f(fin.lo).abs(), f(fin.hi).abs());
    Ok(if flo <= fhi { fin.lo } else { fin.hi })
}

fn step(x: f64) -> f64 {
    (1e-6 * x.abs()).max(1e-6)
}

fn norm(v: (f64, f64)) -> f64 {
    v.0.hypot(v.1)
}

/// Damped Newton iteration for a planar system with a central-difference
/// Jacobian.
pub fn newton_2d(
    f: impl Fn(f64, f64) -> (f64, f64),
    start: (f64, f64),
    tol: f64,
) -> Result<(f64, f64)> {
    let eval2 = |x: f64, y: f64| -> Result<(f64, f64)> {
        let r = f(x, y);
        if r.0.is_finite() && r.1.is_finite() {
            Ok(r)
        } else {
            Err(Error::EvaluationFailure(format!("F({x}, {y}) = {r:?}")))
        }
    };

    let (mut x, mut y) = start;
    let mut r = eval2(x, y)?;
    let mut rn = norm(r);
    for _ in 0..MAX_NEWTON_ITERS {
        if rn <= tol {
            return Ok((x, y));
        }
        let (hx, hy) = (step(x), step(y));
        let fxp = eval2(x + hx, y)?;
        let fxm = eval2(x - hx, y)?;
        let fyp = eval2(x, y + hy)?;
        let fym = eval2(x, y - hy)?;
        let j11 = (fxp.0 - fxm.0) / (2.0 * hx);
        let j21 = (fxp.1 - fxm.1) / (2.0 * hx);
        let j12 = (fyp.0 - fym.0) / (2.0 * hy);
        let j22 = (fyp.1 - fym.1) / (2.0 * hy);
        let det = j11 * j22 - j12 * j21;
        let scale = (j11.abs() + j12.abs()) * (j21.abs() + j22.abs());
        if !(det.abs() > 1e-14 * scale) || !det.is_finite() {
            return Err(Error::SingularSystem);
        }
        let dx = (r.0 * j22 - r.1 * j12) / det;
        let dy = (j11 * r.1 - j21 * r.0) / det;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let (nx, ny) = (x - t * dx, y - t * dy);
            if let Ok(nr) = eval2(nx, ny) {
                if norm(nr) < rn || norm(nr) <= tol {
                    x = nx;
                    y = ny;
                    r = nr;
                    rn = norm(nr);
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            // residual floor reached; the full step no longer reduces it
            if rn <= tol * 10.0 {
                return Ok((x, y));
            }
            return Err(Error::NoConvergence(MAX_NEWTON_ITERS));
        }
    }
    if rn <= tol {
        Ok((x, y))
    } else {
        Err(Error::NoConvergence(MAX_NEWTON_ITERS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = solve_bracketed(|x| x * x - 2.0, Bracket::new(1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bracket_width_reaches_tolerance() {
        let f = |x: f64| (x - 0.3).powi(3);
        let b = refine_bracket(f, Bracket::new(0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!(b.width() <= 1e-12);
        assert!(b.lo <= 0.3 + 1e-12 && b.hi >= 0.3 - 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let err = solve_bracketed(|x| x * x + 1.0, Bracket::new(-1.0, 1.0).unwrap(), 1e-12);
        assert!(matches!(err, Err(Error::InvalidBracket { .. })));
    }

    #[test]
    fn non_finite_evaluation() {
        let err = solve_bracketed(|x| 1.0 / x - 0.5 / x, Bracket::new(0.0, 1.0).unwrap(), 1e-12);
        assert!(matches!(err, Err(Error::EvaluationFailure(_))));
    }

    #[test]
    fn newton_linear() {
        let (x, y) = newton_2d(|x, y| (x - 1.0, y + 2.0), (0.0, 0.0), 1e-10).unwrap();
        assert!((x - 1.0).abs() < 1e-10 && (y + 2.0).abs() < 1e-10);
    }

    #[test]
    fn newton_circle_line() {
        let (x, y) = newton_2d(|x, y| (x * x + y * y - 1.0, x - y), (1.0, 0.0), 1e-10).unwrap();
        let h = 0.5f64.sqrt();
        assert!((x - h).abs() < 1e-9 && (y - h).abs() < 1e-9);
    }

    #[test]
    fn newton_singular() {
        let err = newton_2d(|x, y| (x + y - 1.0, 2.0 * x + 2.0 * y - 3.0), (0.0, 0.0), 1e-10);
        assert_eq!(err, Err(Error::SingularSystem));
    }

    #[test]
    fn newton_no_root() {
        let err = newton_2d(|x, y| (x * x + 1.0, y), (0.5, 0.0), 1e-10);
        assert!(err.is_err());
    }
}
