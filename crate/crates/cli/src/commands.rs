use serde_json::{json, Value};
use shortwell_core::io::{
    coefficients_of, ApproximantPayload, BranchPayload, ExactPayload, LMethodPayload, Payload, ResultDocument,
    ScanTable, SeriesPayload,
};
use shortwell_core::lmethod::{ground_energy_diag, rspt_coefficients, rspt_extrapolated, PlaneWaveBasis};
use shortwell_core::models::relations::implicit_series_rational;
use shortwell_core::models::{
    beta_series_numeric, branch_point, exact_eigenvalue, implicit_series, large_lambda, ModelKind, ModelSpec,
};
use shortwell_core::numeric::roots::NEWTON_TOL;
use shortwell_core::numeric::scalar::f64_to_rational;
use shortwell_core::numeric::{BigRational, Scalar};
use shortwell_core::summation::{pade, quadratic_pade, two_point_pade};
use shortwell_core::tmethod::{energy_series_from_w, w_coefficients, QUADRATURE_TOL};
use shortwell_core::{Error, SeriesCoefficients, TruncatedSeries};

use crate::{Cli, Command, Failure, Format, SeriesMethod, SumKind};

pub struct Rendered {
    pub text: String,
    /// Present for `scan --plot`.
    pub plot: Option<ScanTable>,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn spec(kind: ModelKind, lambda: f64) -> Result<ModelSpec, Failure> {
    Ok(ModelSpec::new(kind, lambda)?)
}

pub fn compute(cli: &Cli) -> Result<Rendered, Failure> {
    let (config, payload, provenance, plot) = match &cli.command {
        Command::Series { model, method, order, beta, length } => {
            let config = json!({"command": "series", "model": model, "method": format!("{method:?}").to_lowercase(),
                "order": order, "beta": beta, "L": length});
            let (series, note) = match method {
                SeriesMethod::Implicit => {
                    if beta.is_some() || length.is_some() {
                        return Err(usage("--beta and --L need --method beta or lseries"));
                    }
                    (implicit_series(*model, *order, None)?, "exact rationals, formal Newton iteration on the recast condition")
                }
                SeriesMethod::Beta => {
                    if *model != ModelKind::Square {
                        return Err(usage("--method beta is defined for the square well"));
                    }
                    let b = beta.ok_or_else(|| usage("--method beta needs --beta"))?;
                    (beta_series_numeric(b, *order)?, "binary64 Newton iteration about e0 = -beta²/4")
                }
                SeriesMethod::Lseries => {
                    let l = length.ok_or_else(|| usage("--method lseries needs --L"))?;
                    (implicit_series(*model, *order, Some(l))?, "exact rationals from the periodic-box condition; L taken exactly from its binary64 value")
                }
            };
            (config, Payload::Series(SeriesPayload::from(&series)), vec![note.to_string()], None)
        }
        Command::Tmethod { model, order } => {
            let config = json!({"command": "tmethod", "model": model, "order": order});
            let w = w_coefficients(&spec(*model, 1.0)?, *order)?;
            let series = energy_series_from_w(&w)?;
            let notes = vec![
                "tensor Gauss–Legendre over sorted simplices cut at the potential's panel edges".to_string(),
                format!("error = |rule(n) - rule(n - 2)|, accepted below {QUADRATURE_TOL:e} relative"),
            ];
            (config, Payload::Tmethod { w, series: SeriesPayload::from(&series) }, notes, None)
        }
        Command::Lmethod { model, length, nmax, order, lambda, extrapolate } => {
            let config = json!({"command": "lmethod", "model": model, "L": length, "nmax": nmax, "order": order,
                "lambda": lambda, "extrapolate": extrapolate});
            let m = spec(*model, lambda.unwrap_or(0.0))?;
            let basis = PlaneWaveBasis::even(*length, *nmax)?;
            let r = rspt_coefficients(&m, &basis, *order)?;
            let mut notes = vec![format!("even cosine basis, n_max = {nmax}, basis size {}", r.basis_size)];
            let extrapolated = if *extrapolate {
                notes.push("Richardson in 1/n_max over n_max, 2 n_max, 4 n_max".into());
                Some(rspt_extrapolated(&m, *length, *nmax, *order)?)
            } else {
                None
            };
            let (partial_sum, diagonal_energy) = match lambda {
                Some(x) => (Some(r.partial_sum(*x)), Some(ground_energy_diag(&m, &basis, *x)?)),
                None => (None, None),
            };
            let p = LMethodPayload {
                model: *model,
                length: *length,
                n_max: *nmax,
                basis_size: r.basis_size,
                coefficients: r.coefficients,
                extrapolated,
                lambda: *lambda,
                partial_sum,
                diagonal_energy,
            };
            (config, Payload::Lmethod(p), notes, None)
        }
        Command::Exact { model, lambda, n, length } => {
            let config = json!({"command": "exact", "model": model, "lambda": lambda, "n": n, "L": length});
            let mut m = spec(*model, *lambda)?;
            if let Some(l) = length {
                m = m.with_box(*l)?;
            }
            let energy = exact_eigenvalue(&m, *n)?;
            let p = ExactPayload { model: *model, lambda: *lambda, n: *n, box_length: *length, energy };
            (config, Payload::Exact(p), vec!["root of the quantization condition".into()], None)
        }
        Command::Branch { model } => {
            let config = json!({"command": "branch", "model": model});
            let b = branch_point(&spec(*model, 0.0)?)?;
            let p = BranchPayload { model: *model, epsilon_c: b.epsilon, lambda_c: b.lambda };
            (config, Payload::Branch(p), vec![format!("Newton on F = dF/de = 0, tolerance {NEWTON_TOL:e}")], None)
        }
        Command::Sum { kind, degrees, at, series_file, large } => {
            let text = std::fs::read_to_string(series_file)
                .map_err(|e| usage(format!("cannot read {}: {e}", series_file.display())))?;
            let doc = ResultDocument::from_json(&text)?;
            let series = doc.energy_series()?;
            let config = json!({"command": "sum", "kind": format!("{kind:?}").to_lowercase(), "degrees": degrees,
                "at": at, "series": doc.payload, "large": large});
            let degrees = parse_list::<usize>(degrees, "degrees")?;
            let large = match large {
                Some(s) => parse_list::<f64>(s, "large")?,
                None => default_large(series.model),
            };
            let p = match &series.coefficients {
                SeriesCoefficients::Rational(s) => approximant(s, *kind, &degrees, *at, &large)?,
                SeriesCoefficients::Float(s) => approximant(s, *kind, &degrees, *at, &large)?,
            };
            (config, Payload::Sum(p), vec![format!("series from {}", doc.provenance.join("; "))], None)
        }
        Command::Scan { model, lambda_min, lambda_max, steps, methods, order, plot } => {
            let config = json!({"command": "scan", "model": model, "lambda_min": lambda_min, "lambda_max": lambda_max,
                "steps": steps, "methods": methods, "order": order, "plot": plot.is_some()});
            let (table, notes) = scan(*model, *lambda_min, *lambda_max, *steps, methods, *order)?;
            let plot = plot.as_ref().map(|_| table.clone());
            (config, Payload::Scan(table), notes, plot)
        }
    };
    let mut config = config;
    config["format"] = json!(match cli.format {
        Format::Json => "json",
        Format::Csv => "csv",
    });
    let doc = ResultDocument::new(strip_nulls(config), payload, provenance);
    let text = match cli.format {
        Format::Json => doc.to_json()?,
        Format::Csv => doc.to_csv()?,
    };
    Ok(Rendered { text, plot })
}

fn strip_nulls(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.into_iter().filter(|(_, v)| !v.is_null()).collect()),
        v => v,
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| usage(format!("bad --{what} entry {x:?}"))))
        .collect()
}

fn default_large(kind: ModelKind) -> Vec<f64> {
    let l = large_lambda(&ModelSpec { kind, lambda: 1.0, box_length: None, beta: None }, 0);
    std::iter::once(l.leading).chain(l.subleading).collect()
}

fn lift<T: Scalar>(x: f64) -> Result<T, Failure> {
    let r: BigRational = f64_to_rational(x).ok_or_else(|| usage(format!("not finite: {x}")))?;
    Ok(T::from_rational(&r))
}

fn approximant<T: Scalar>(
    s: &TruncatedSeries<T>,
    kind: SumKind,
    degrees: &[usize],
    at: f64,
    large: &[f64],
) -> Result<ApproximantPayload, Failure> {
    let want = |n: usize| {
        if degrees.len() == n {
            Ok(())
        } else {
            Err(usage(format!("--degrees needs {n} entries for this kind")))
        }
    };
    let mut notes = Vec::new();
    let (name, variable, polynomials, value) = match kind {
        SumKind::Pade => {
            want(2)?;
            let p = pade(s, degrees[0], degrees[1])?;
            if p.reduced() {
                notes.push(format!("degenerate entry: denominator degree reduced to {}", p.m_deg));
            }
            let v = p.eval(at)?;
            ("pade", "lambda", vec![("numerator".into(), coefficients_of(&p.numerator)), ("denominator".into(), coefficients_of(&p.denominator))], v)
        }
        SumKind::Qpade => {
            want(3)?;
            let q = quadratic_pade(s, (degrees[0], degrees[1], degrees[2]))?;
            notes.push(format!("root (-Q {} sqrt(Q² - 4PR)) / 2R", if q.branch_sign > 0.0 { "+" } else { "-" }));
            let v = q.eval(at)?;
            ("qpade", "lambda", vec![("P".into(), coefficients_of(&q.p)), ("Q".into(), coefficients_of(&q.q)), ("R".into(), coefficients_of(&q.r))], v)
        }
        SumKind::Tppade => {
            want(2)?;
            let large = large.iter().map(|&x| lift::<T>(x)).collect::<Result<Vec<_>, _>>()?;
            let t = two_point_pade(s, &large, degrees[0], degrees[1])?;
            let v = t.eval(at)?;
            ("tppade", "sqrt_lambda", vec![("numerator".into(), coefficients_of(&t.numerator)), ("denominator".into(), coefficients_of(&t.denominator))], v)
        }
    };
    Ok(ApproximantPayload {
        approximant: name.into(),
        degrees: degrees.to_vec(),
        variable: variable.into(),
        polynomials,
        notes,
        at,
        value,
    })
}

const SCAN_METHODS: [&str; 5] = ["exact", "series", "pade", "qpade", "tppade"];

/// Padé degrees derived from the series order for the scan columns.
fn scan_degrees(order: usize) -> ((usize, usize), (usize, usize, usize)) {
    let r = (order - 1) / 3;
    let q = (order - 1 - r) / 2;
    ((order / 2, order - order / 2), (order - 1 - r - q, q, r))
}

fn scan(
    kind: ModelKind,
    lo: f64,
    hi: f64,
    steps: usize,
    methods: &str,
    order: usize,
) -> Result<(ScanTable, Vec<String>), Failure> {
    if steps == 0 || !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(usage("scan needs 0 <= lambda-min < lambda-max and steps >= 1"));
    }
    if order < 2 {
        return Err(usage("scan needs --order >= 2"));
    }
    let methods: Vec<&str> = methods.split(',').map(str::trim).collect();
    if let Some(bad) = methods.iter().find(|m| !SCAN_METHODS.contains(m)) {
        return Err(usage(format!("unknown scan method {bad:?}; choose from {}", SCAN_METHODS.join(","))));
    }
    let series = implicit_series_rational(kind, order, None)?;
    let ((pl, pm), qd) = scan_degrees(order);
    let mut notes = vec![format!("series: exact order-{order} implicit series")];
    let mut evaluators: Vec<Box<dyn Fn(f64) -> Result<f64, Error>>> = Vec::new();
    for m in &methods {
        let f: Box<dyn Fn(f64) -> Result<f64, Error>> = match *m {
            "exact" => Box::new(move |x| exact_eigenvalue(&ModelSpec::new(kind, x)?, 0)),
            "series" => {
                let s = series.clone();
                Box::new(move |x| Ok(s.eval_f64(x)))
            }
            "pade" => match pade(&series, pl, pm) {
                Ok(p) => {
                    notes.push(format!("pade: [{}/{}]", p.l_deg, p.m_deg));
                    Box::new(move |x| p.eval(x))
                }
                Err(e) => failed(&mut notes, m, e),
            },
            "qpade" => match quadratic_pade(&series, qd) {
                Ok(q) => {
                    notes.push(format!("qpade: degrees {qd:?}"));
                    Box::new(move |x| q.eval(x))
                }
                Err(e) => failed(&mut notes, m, e),
            },
            _ => match scan_two_point(kind, &series, order) {
                Ok((t, note)) => {
                    notes.push(note);
                    Box::new(move |x| t.eval(x))
                }
                Err(e) => failed(&mut notes, m, e),
            },
        };
        evaluators.push(f);
    }
    let mut columns = vec!["lambda".to_string()];
    columns.extend(methods.iter().map(|m| m.to_string()));
    let rows = (0..=steps)
        .map(|i| {
            let x = if i == steps { hi } else { lo + (hi - lo) * i as f64 / steps as f64 };
            let mut row = vec![Some(x)];
            row.extend(evaluators.iter().map(|f| f(x).ok().filter(|v| v.is_finite())));
            row
        })
        .collect();
    notes.push("empty cells: the method failed at that point".into());
    Ok((ScanTable { model: kind, columns, rows }, notes))
}

fn failed(notes: &mut Vec<String>, method: &str, e: Error) -> Box<dyn Fn(f64) -> Result<f64, Error>> {
    notes.push(format!("{method}: {e}"));
    Box::new(move |_| Err(e.clone()))
}

/// Highest-order two-point approximant the series supports, stepping the
/// denominator degree down past singular matching systems.
fn scan_two_point(
    kind: ModelKind,
    series: &TruncatedSeries<BigRational>,
    order: usize,
) -> Result<(shortwell_core::summation::TwoPointPade<BigRational>, String), Error> {
    let large: Vec<BigRational> = default_large(kind)
        .into_iter()
        .map(|x| f64_to_rational(x).ok_or_else(|| Error::InvalidInput(format!("{x}"))))
        .collect::<Result<_, _>>()?;
    let q = large.len();
    let max_small = 2 * order + 1;
    let mut last = Error::NoTwoPoint("series too short".into());
    for d in (0..=(max_small + q).saturating_sub(3) / 2).rev() {
        let p = 2 * d + 3 - q;
        if p > max_small {
            continue;
        }
        match two_point_pade(series, &large, p, q) {
            Ok(t) => return Ok((t, format!("tppade: p_small = {p}, q_large = {q}"))),
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_from_order() {
        assert_eq!(scan_degrees(6), ((3, 3), (2, 2, 1)));
        assert_eq!(scan_degrees(2), ((1, 1), (1, 0, 0)));
    }
}
