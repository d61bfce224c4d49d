//! Acceptance run: one PASS/FAIL line per criterion, each inside its time
//! budget. Exits nonzero when any criterion fails.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use shortwell_core::lmethod::{ground_energy_diag, log_log_slope, rspt_coefficients, PlaneWaveBasis};
use shortwell_core::models::beta::beta_limit;
use shortwell_core::models::relations::{implicit_series_rational, poschl_teller_closed_form};
use shortwell_core::models::{
    beta_coefficient, beta_series_numeric, branch_point, delta_lseries_constants, delta_neumann_energy,
    delta_periodic_energy, exact_eigenvalue, ModelKind, ModelSpec,
};
use shortwell_core::numeric::{rational, BigRational, Scalar};
use shortwell_core::series::{kernel_series, AnalyticKernel, RationalSeries, TruncatedSeries};
use shortwell_core::summation::{pade, quadratic_pade, radius_estimate};
use shortwell_core::tmethod::{energy_series_from_w, w_coefficients};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn spec(kind: ModelKind, lambda: f64) -> ModelSpec {
    ModelSpec::new(kind, lambda).unwrap()
}

fn rationals(v: &[(i64, i64)]) -> Vec<BigRational> {
    v.iter().map(|&(p, q)| rational(p, q)).collect()
}

fn coeffs_from(s: &RationalSeries, start: usize, n: usize) -> Vec<BigRational> {
    (start..start + n).map(|j| s.coeff(j)).collect()
}

fn exact_series() -> Outcome {
    let pt = implicit_series_rational(ModelKind::PoschlTeller, 5, None).map_err(|e| e.to_string())?;
    check(coeffs_from(&pt, 2, 4) == rationals(&[(-1, 1), (2, 1), (-5, 1), (14, 1)]), "Pöschl–Teller")?;
    let sq = implicit_series_rational(ModelKind::Square, 6, None).map_err(|e| e.to_string())?;
    let want = rationals(&[(-1, 1), (4, 3), (-92, 45), (1072, 315), (-84752, 14175)]);
    check(coeffs_from(&sq, 2, 5) == want, "square well")?;
    let ex = implicit_series_rational(ModelKind::Exponential, 6, None).map_err(|e| e.to_string())?;
    let want = rationals(&[(-1, 1), (3, 1), (-143, 12), (3887, 72), (-71303, 270)]);
    check(coeffs_from(&ex, 2, 5) == want, "exponential")?;
    let dc = delta_lseries_constants(5).map_err(|e| e.to_string())?;
    let want = rationals(&[(-1, 1), (-1, 12), (-1, 180), (-1, 3780), (-1, 226800)]);
    check(coeffs_from(&dc, 1, 5) == want, "delta box constants")?;
    Ok("all four sets equal as rationals".into())
}

fn tmethod_cross_check() -> Outcome {
    let mut worst = Vec::new();
    for (kind, tol) in [(ModelKind::Square, 1e-10), (ModelKind::Exponential, 1e-8)] {
        let w = w_coefficients(&spec(kind, 1.0), 4).map_err(|e| e.to_string())?;
        let t = energy_series_from_w(&w).map_err(|e| e.to_string())?;
        let exact = implicit_series_rational(kind, 5, None).map_err(|e| e.to_string())?;
        let err = (2..=5)
            .map(|j| (t.coefficients.coeff_f64(j) - exact.coeff(j).to_f64()).abs())
            .fold(0.0, f64::max);
        check(err < tol, format!("{kind}: max error {err:e} vs {tol:e}"))?;
        worst.push(format!("{kind} {err:.1e}"));
    }
    Ok(format!("max |error| orders 2-5: {}", worst.join(", ")))
}

fn branch_points() -> Outcome {
    let sq = branch_point(&spec(ModelKind::Square, 0.0)).map_err(|e| e.to_string())?;
    check(
        (sq.epsilon + 1.0).abs() < 1e-9 && (sq.lambda + 0.439_228_839_8).abs() < 1e-9,
        format!("square ({}, {})", sq.epsilon, sq.lambda),
    )?;
    let pt = branch_point(&spec(ModelKind::PoschlTeller, 0.0)).map_err(|e| e.to_string())?;
    check((pt.lambda + 0.25).abs() < 1e-10, format!("Pöschl–Teller lambda_c {}", pt.lambda))?;
    Ok(format!("square ({:.10}, {:.10}), Pöschl–Teller lambda_c {:.12}", sq.epsilon, sq.lambda, pt.lambda))
}

fn beta_method() -> Outcome {
    let s = beta_series_numeric(1.0, 5).map_err(|e| e.to_string())?;
    for j in 0..=3 {
        let (got, want) = (s.coefficients.coeff_f64(j), beta_coefficient(j, 1.0).map_err(|e| e.to_string())?);
        check((got - want).abs() < 1e-10, format!("numeric series at beta = 1, order {j}: {got} vs {want}"))?;
    }
    let e2 = beta_limit(2, 1.0, 4).map_err(|e| e.to_string())?;
    let e3 = beta_limit(3, 1.0, 4).map_err(|e| e.to_string())?;
    let (d2, d3) = (e2 + 1.0, e3 - 4.0 / 3.0);
    check(
        d2.abs() < 1e-4 && d3.abs() < 1e-4,
        format!("Richardson over beta = 1..1/8 gives e2 = {e2:.6} (off {d2:.1e}), e3 = {e3:.6} (off {d3:.1e}); need 1e-4"),
    )?;
    Ok(format!("e2 -> {e2:.8}, e3 -> {e3:.8}"))
}

fn lmethod_blowup() -> Outcome {
    let consts = delta_lseries_constants(5).map_err(|e| e.to_string())?;
    for l in [5i64, 10, 20] {
        let s = implicit_series_rational(ModelKind::Delta, 5, Some(l as f64)).map_err(|e| e.to_string())?;
        for j in 1..=5usize {
            let p = 2 - j as i32;
            let scale = if p >= 0 { rational(l.pow(p as u32), 1) } else { rational(1, l.pow((-p) as u32)) };
            check(s.coeff(j) * scale == consts.coeff(j), format!("L = {l}, order {j}"))?;
        }
    }
    let sizes = [50.0, 100.0, 200.0, 400.0];
    let mut slopes = Vec::new();
    for j in [2usize, 3] {
        let err: Vec<f64> = sizes
            .iter()
            .map(|&n| {
                let basis = PlaneWaveBasis::even(10.0, n as usize).unwrap();
                let r = rspt_coefficients(&spec(ModelKind::Delta, 0.0), &basis, j).unwrap();
                r.coefficients[j - 1] - consts.coeff(j).to_f64() * 10f64.powi(j as i32 - 2)
            })
            .collect();
        let slope = log_log_slope(&sizes, &err);
        check((slope + 1.0).abs() <= 0.1, format!("order {j}: tail slope {slope:.3}"))?;
        slopes.push(format!("j={j} {slope:.3}"));
    }
    Ok(format!("homogeneity exact at L = 5, 10, 20; RSPT tail slopes {}", slopes.join(", ")))
}

fn exponential_error_law() -> Outcome {
    let (lam, lengths) = (2.0, [6.0, 8.0, 10.0, 12.0]);
    let err: Vec<f64> = lengths
        .iter()
        .map(|&l| delta_periodic_energy(lam, l).map(|e| (e + lam * lam / 4.0).abs().ln()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let n = lengths.len() as f64;
    let (mx, my) = (lengths.iter().sum::<f64>() / n, err.iter().sum::<f64>() / n);
    let slope = lengths.iter().zip(&err).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / lengths.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    let k = lam / 2.0;
    check(((slope + k) / k).abs() < 0.01, format!("slope {slope} vs {}", -k))?;
    let mut worst: f64 = 0.0;
    for lam in [0.5, 1.0, 2.0, 4.0] {
        for l in [3.0, 6.0, 10.0, 20.0] {
            let (p, q) = (delta_periodic_energy(lam, l).unwrap(), delta_neumann_energy(lam, l).unwrap());
            worst = worst.max((p - q).abs());
        }
    }
    check(worst < 1e-12, format!("Neumann vs periodic differ by {worst:e}"))?;
    Ok(format!("log-slope {slope:.5} (k = {k}), Neumann/periodic max diff {worst:.1e}"))
}

fn summation_quality() -> Outcome {
    let pt = implicit_series_rational(ModelKind::PoschlTeller, 6, None).map_err(|e| e.to_string())?;
    let q = quadratic_pade(&pt, (2, 1, 0)).map_err(|e| e.to_string())?;
    check(
        q.p == rationals(&[(0, 1), (0, 1), (1, 1)]) && q.q == rationals(&[(1, 1), (2, 1)]) && q.r == rationals(&[(1, 1)]),
        "Pöschl–Teller quadratic Padé is not lambda² + (2 lambda + 1) w + w²",
    )?;
    let ex = implicit_series_rational(ModelKind::Exponential, 6, None).map_err(|e| e.to_string())?;
    let p = pade(&ex, 3, 3).map_err(|e| e.to_string())?;
    let mut errs = Vec::new();
    for (lam, tol) in [(0.25, 2e-3), (0.5, 1.5e-2), (0.75, 4e-2)] {
        let exact = exact_eigenvalue(&spec(ModelKind::Exponential, lam), 0).map_err(|e| e.to_string())?;
        let rel = ((p.eval(lam).map_err(|e| e.to_string())? - exact) / exact).abs();
        check(rel < tol, format!("[3/3] at {lam}: relative error {rel:.3e} vs {tol:e}"))?;
        errs.push(format!("{lam}: {rel:.2e}"));
    }
    Ok(format!("quadratic Padé exact; [3/3] relative errors {}", errs.join(", ")))
}

fn radius_estimates() -> Outcome {
    let pt = radius_estimate(&poschl_teller_closed_form(30).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    check((pt.radius - 0.25).abs() < 1e-4 && pt.singularity_sign == -1, format!("Pöschl–Teller {pt:?}"))?;
    let sq = implicit_series_rational(ModelKind::Square, 30, None).map_err(|e| e.to_string())?;
    let sq = radius_estimate(&sq).map_err(|e| e.to_string())?;
    check((sq.radius - 0.43923).abs() < 1e-3 && sq.singularity_sign == -1, format!("square {:?}", sq.radius))?;
    Ok(format!("Pöschl–Teller {:.6}, square {:.6}", pt.radius, sq.radius))
}

fn rational_series(n: usize, unit: bool) -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec((-40i64..40, 1i64..15), n + 1).prop_map(move |c| {
        let mut v: Vec<BigRational> = c.into_iter().map(|(p, q)| rational(p, q)).collect();
        if unit && v[0].is_zero() {
            v[0] = BigRational::one();
        }
        TruncatedSeries::new("lambda", v)
    })
}

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: 48, failure_persistence: None, ..Config::default() })
}

fn property_suites() -> Outcome {
    let mut report = Vec::new();
    let mut timed = |name: &str, f: &dyn Fn() -> Result<(), String>| -> Result<(), String> {
        let t = Instant::now();
        f().map_err(|e| format!("{name}: {e}"))?;
        let dt = t.elapsed();
        check(dt < Duration::from_secs(30), format!("{name} took {dt:?}"))?;
        report.push(format!("{name} {:.2}s", dt.as_secs_f64()));
        Ok(())
    };
    timed("ring axioms", &|| {
        let strat = (1usize..8).prop_flat_map(|n| (rational_series(n, false), rational_series(n, false), rational_series(n, true)));
        runner()
            .run(&strat, |(a, b, c)| {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&c * &c.recip().unwrap(), TruncatedSeries::one("lambda", c.order()));
                Ok(())
            })
            .map_err(|e| e.to_string())
    })?;
    timed("kernel identities", &|| {
        runner()
            .run(&(1usize..25), |n| {
                let k = |kind| kernel_series::<BigRational>(kind, n).unwrap().renamed("z");
                let z = TruncatedSeries::identity("z", n);
                let (c, s) = (k(AnalyticKernel::CosSqrt), k(AnalyticKernel::SincSqrt));
                prop_assert_eq!(&(&c * &c) + &(&z * &(&s * &s)), TruncatedSeries::one("z", n));
                let (ch, sh) = (k(AnalyticKernel::CoshSqrt), k(AnalyticKernel::SinhcSqrt));
                prop_assert_eq!(&(&ch * &ch) - &(&z * &(&sh * &sh)), TruncatedSeries::one("z", n));
                prop_assert_eq!(&k(AnalyticKernel::TanSqSqrt) * &(&c * &c), &z * &(&s * &s));
                Ok(())
            })
            .map_err(|e| e.to_string())
    })?;
    timed("Padé re-expansion", &|| {
        let strat = (0usize..5, 0usize..5).prop_flat_map(|(l, m)| (rational_series(l + m, false), Just(l), Just(m)));
        runner()
            .run(&strat, |(s, l, m)| {
                if let Ok(p) = pade(&s, l, m) {
                    let n = p.l_deg + p.m_deg;
                    prop_assert_eq!(p.expand(n).unwrap(), s.with_order(n));
                }
                Ok(())
            })
            .map_err(|e| e.to_string())
    })?;
    timed("RSPT small-lambda slopes", &|| {
        let lams: [f64; 4] = [1e-3, 2e-3, 5e-3, 1e-2];
        for kind in ModelKind::ALL {
            let basis = PlaneWaveBasis::even(10.0, 200).unwrap();
            let r = rspt_coefficients(&spec(kind, 0.0), &basis, 3).map_err(|e| e.to_string())?;
            for order in [2usize, 3] {
                let gap: Vec<f64> = lams
                    .iter()
                    .map(|&l| {
                        let sum: f64 = r.coefficients[..order].iter().enumerate().map(|(i, c)| c * l.powi(i as i32 + 1)).sum();
                        sum - ground_energy_diag(&spec(kind, l), &basis, l).unwrap()
                    })
                    .collect();
                let slope = log_log_slope(&lams, &gap);
                check(slope >= order as f64 + 0.9, format!("{kind} J={order}: slope {slope:.3}"))?;
            }
        }
        Ok(())
    })?;
    timed("variational monotonicity", &|| {
        for kind in ModelKind::ALL {
            for lam in [0.5, 1.0, 2.0] {
                let e: Vec<f64> = [50, 100, 200]
                    .iter()
                    .map(|&n| ground_energy_diag(&spec(kind, lam), &PlaneWaveBasis::even(10.0, n).unwrap(), lam).unwrap())
                    .collect();
                check(e[1] <= e[0] + 1e-12 && e[2] <= e[1] + 1e-12, format!("{kind} at {lam}: {e:?}"))?;
            }
        }
        Ok(())
    })?;
    Ok(report.join(", "))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("exact series reproduction", 1, exact_series),
        ("T-method cross-validation", 60, tmethod_cross_check),
        ("branch points", 1, branch_points),
        ("beta-method limit", 5, beta_method),
        ("L-method blow-up", 30, lmethod_blowup),
        ("exponential error law", 1, exponential_error_law),
        ("summation quality", 5, summation_quality),
        ("radius estimates", 5, radius_estimates),
        ("property suites", 150, property_suites),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        let outcome = match outcome {
            Ok(d) if dt > Duration::from_secs(*budget) => Err(format!("{d}; took {dt:?}, budget {budget} s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({:.2} s) {detail}", i + 1, dt.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({:.2} s) {why}", i + 1, dt.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
