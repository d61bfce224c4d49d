//! Direct evaluation of the integrals in the expansion
//! `-(-e)^(1/2) = sum_j w_j lambda^j`.
//!
//! The integrand of order `j` is `prod_i v(x_i)` times a kernel built from
//! `|x_a - x_b|`. Both factors are symmetric under relabelling once the
//! kernel is summed over all `j!` permutations, so only the sorted simplex
//! `x_1 <= ... <= x_j` is integrated. Every absolute value then resolves to
//! a polynomial. The axis is cut at the panel edges; each non-decreasing
//! assignment of variables to panels factors into nested sorted simplices,
//! one per occupied panel, each mapped onto the unit cube and integrated by
//! tensor Gauss–Legendre.

use std::collections::HashMap;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::energy::{EnergySeries, Method, SeriesCoefficients};
use crate::error::{Error, Result};
use crate::models::{ModelKind, ModelSpec};
use crate::numeric::{gauss_legendre, QuadratureRule};
use crate::series::TruncatedSeries;

pub const MAX_T_ORDER: usize = 4;

/// Assignments whose bound falls below this are skipped.
const PRUNE_BOUND: f64 = 1e-18;

/// Refinement disagreement that counts as converged, relative to `max(1, |w_j|)`.
pub const QUADRATURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Extent {
    /// The potential vanishes outside `[-a, a]`.
    FiniteBox { half_width: f64 },
    /// `|v(x)| <= amplitude exp(-decay |x|)`, truncated at `|x| = cutoff`.
    ExponentialTail { cutoff: f64, decay: f64, amplitude: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrationDomain {
    pub extent: Extent,
    /// Non-negative panel edges starting at 0 and ending at the extent,
    /// mirrored to the negative axis.
    pub edges: Vec<f64>,
    pub gl_order: usize,
}

impl IntegrationDomain {
    /// Defaults per model: the square well on its support, the exponential
    /// well cut at 40 and Pöschl–Teller at 25, both on graded panels.
    pub fn default_for(kind: ModelKind) -> Self {
        match kind {
            ModelKind::Square | ModelKind::Delta => {
                Self { extent: Extent::FiniteBox { half_width: 1.0 }, edges: vec![0.0, 1.0], gl_order: 24 }
            }
            ModelKind::Exponential => Self {
                extent: Extent::ExponentialTail { cutoff: 40.0, decay: 1.0, amplitude: 1.0 },
                edges: vec![0.0, 1.0, 3.0, 6.0, 11.0, 19.0, 40.0],
                gl_order: 10,
            },
            ModelKind::PoschlTeller => Self {
                extent: Extent::ExponentialTail { cutoff: 25.0, decay: 2.0, amplitude: 4.0 },
                edges: vec![0.0, 1.0, 2.0, 3.5, 5.5, 8.5, 13.0, 25.0],
                gl_order: 10,
            },
        }
    }

    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        if let Extent::ExponentialTail { decay, amplitude, .. } = self.extent {
            self.extent = Extent::ExponentialTail { cutoff, decay, amplitude };
            self.edges.retain(|&e| e < cutoff);
            self.edges.push(cutoff);
        }
        self
    }

    pub fn with_gl_order(mut self, n: usize) -> Self {
        self.gl_order = n;
        self
    }

    fn reach(&self) -> f64 {
        match self.extent {
            Extent::FiniteBox { half_width } => half_width,
            Extent::ExponentialTail { cutoff, .. } => cutoff,
        }
    }

    /// Bound on the part of any `w_j` (`j <= 4`) lost by truncating the axis.
    pub fn tail_bound(&self) -> f64 {
        match self.extent {
            Extent::FiniteBox { .. } => 0.0,
            Extent::ExponentialTail { cutoff, decay, amplitude } => {
                // ∫_X^∞ A e^{-d x} (x + 1)³ dx, the kernel growing at most cubically
                2.0 * amplitude * (-decay * cutoff).exp() * (cutoff + 1.0).powi(3) / decay
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let e = &self.edges;
        let ok = e.len() >= 2
            && e[0] == 0.0
            && e.windows(2).all(|w| w[0] < w[1])
            && (e[e.len() - 1] - self.reach()).abs() <= 1e-12 * self.reach().max(1.0);
        if !ok {
            return Err(Error::InvalidInput(format!("panel edges {e:?} must rise from 0 to {}", self.reach())));
        }
        if self.tail_bound() >= 1e-12 {
            return Err(Error::InvalidInput(format!("tail bound {:e} exceeds 1e-12", self.tail_bound())));
        }
        Ok(())
    }

    fn segments(&self) -> Vec<(f64, f64)> {
        let mut all: Vec<f64> = self.edges.iter().rev().map(|&x| -x).collect();
        all.extend(self.edges.iter().skip(1));
        all.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Coefficients `w_1..w_J` with the refinement difference of each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WCoefficients {
    pub model: ModelKind,
    pub w: Vec<f64>,
    pub errors: Vec<f64>,
}

fn prefactor(j: usize) -> f64 {
    match j {
        1 => 1.0 / 2.0,
        2 => 1.0 / 4.0,
        3 => 1.0 / 48.0,
        _ => 1.0 / 96.0,
    }
}

/// The order-`j` kernel for the variables `p` given pairwise distances `d`
/// (unsymmetrized, without prefactor).
fn kernel(j: usize, d: &[[f64; MAX_T_ORDER]; MAX_T_ORDER], p: &[usize]) -> f64 {
    match j {
        1 => 1.0,
        2 => d[p[0]][p[1]],
        3 => {
            let s = d[p[0]][p[1]] + d[p[1]][p[2]] + d[p[2]][p[0]];
            s * s
        }
        _ => {
            let (xy, xz, zt) = (d[p[0]][p[1]], d[p[0]][p[2]], d[p[2]][p[3]]);
            xy * xy * (xy + 6.0 * xz + 3.0 * zt) + 6.0 * xy * xz * zt
        }
    }
}

fn permutations(j: usize) -> Vec<Vec<usize>> {
    if j == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(j - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, j - 1);
            out.push(q);
        }
    }
    out
}

/// `sum_sigma K(x_sigma)` for sorted `x`, with the argument relabelled by
/// `labels` first.
struct SymmetricKernel {
    j: usize,
    perms: Vec<Vec<usize>>,
}

impl SymmetricKernel {
    fn new(j: usize, labels: &[usize]) -> Self {
        let perms = permutations(j)
            .into_iter()
            .map(|p| p.iter().map(|&i| labels[i]).collect())
            .collect();
        Self { j, perms }
    }

    fn eval(&self, s: &[f64]) -> f64 {
        let mut d = [[0.0; MAX_T_ORDER]; MAX_T_ORDER];
        for a in 0..self.j {
            for b in 0..a {
                d[a][b] = s[a] - s[b];
                d[b][a] = d[a][b];
            }
        }
        self.perms.iter().map(|p| kernel(self.j, &d, p)).sum()
    }
}

/// Points of a sorted `g`-simplex in `[a, b]` with weights that include the
/// map's Jacobian and `prod v(s_i)`.
struct SimplexNodes {
    g: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

fn simplex_nodes(kind: ModelKind, a: f64, b: f64, g: usize, rule: &QuadratureRule) -> SimplexNodes {
    let unit: Vec<(f64, f64)> = rule.mapped(0.0, 1.0).collect();
    let n = unit.len();
    let total = n.pow(g as u32);
    let mut points = Vec::with_capacity(total * g);
    let mut weights = Vec::with_capacity(total);
    let mut s = vec![0.0; g];
    for flat in 0..total {
        let mut idx = flat;
        let mut top = b;
        let mut w = 1.0;
        // s_g = a + (b - a) u_g, then s_i = a + (s_{i+1} - a) u_i
        for i in (0..g).rev() {
            let (u, wu) = unit[idx % n];
            idx /= n;
            s[i] = a + (top - a) * u;
            w *= wu * (top - a);
            top = s[i];
        }
        for &x in &s {
            w *= kind.potential(x).unwrap_or(0.0);
        }
        points.extend_from_slice(&s);
        weights.push(w);
    }
    SimplexNodes { g, points, weights }
}

fn max_abs_v(kind: ModelKind, a: f64, b: f64) -> f64 {
    let nearest = if a <= 0.0 && b >= 0.0 { 0.0 } else if a > 0.0 { a } else { b };
    // square-well edges sit on panel edges; probe just inside
    let inside = nearest.clamp(a + 1e-12 * (b - a), b - 1e-12 * (b - a));
    kind.potential(inside).unwrap_or(0.0).abs()
}

/// Non-decreasing sequences of `j` segment indices below `segs`.
fn assignments(j: usize, segs: usize) -> Vec<Vec<usize>> {
    fn rec(j: usize, start: usize, segs: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for s in start..segs {
            cur.push(s);
            rec(j, s, segs, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(j, 0, segs, &mut Vec::with_capacity(j), &mut out);
    out
}

/// Groups consecutive equal entries: `[0, 0, 2]` -> `[(0, 2), (2, 1)]`.
fn groups(assign: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &s in assign {
        match out.last_mut() {
            Some((seg, g)) if *seg == s => *g += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn assignment_bound(kind: ModelKind, j: usize, segs: &[(f64, f64)], assign: &[usize]) -> f64 {
    let span = segs[assign[j - 1]].1 - segs[assign[0]].0;
    let mut b = factorial(j) * 16.0 * span.powi(3).max(1.0);
    for (seg, g) in groups(assign) {
        let (a, c) = segs[seg];
        b *= max_abs_v(kind, a, c).powi(g as i32) * (c - a).powi(g as i32) / factorial(g);
    }
    b
}

fn integrate_assignment(
    nodes: &[&SimplexNodes],
    kernel: &SymmetricKernel,
    s: &mut [f64; MAX_T_ORDER],
    depth: usize,
    offset: usize,
    weight: f64,
) -> f64 {
    if depth == nodes.len() {
        return weight * kernel.eval(&s[..offset]);
    }
    let set = nodes[depth];
    let g = set.g;
    let mut sum = 0.0;
    for (p, &w) in set.weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        s[offset..offset + g].copy_from_slice(&set.points[p * g..(p + 1) * g]);
        sum += integrate_assignment(nodes, kernel, s, depth + 1, offset + g, weight * w);
    }
    sum
}

fn integral(kind: ModelKind, j: usize, dom: &IntegrationDomain, order: usize, labels: &[usize]) -> Result<f64> {
    let rule = gauss_legendre(order)?;
    let segs = dom.segments();
    // x -> -x maps the sorted simplex of one assignment onto that of its
    // mirror image, so only one of each pair is integrated
    let mirror = |a: &[usize]| -> Vec<usize> { a.iter().rev().map(|&p| segs.len() - 1 - p).collect() };
    let mut live: Vec<Vec<usize>> = Vec::new();
    let mut multiplicity: Vec<f64> = Vec::new();
    for a in assignments(j, segs.len()) {
        let m = mirror(&a);
        if m < a || assignment_bound(kind, j, &segs, &a) < PRUNE_BOUND {
            continue;
        }
        multiplicity.push(if m == a { 1.0 } else { 2.0 });
        live.push(a);
    }

    let mut cache: HashMap<(usize, usize), SimplexNodes> = HashMap::new();
    for a in &live {
        for (seg, g) in groups(a) {
            cache
                .entry((seg, g))
                .or_insert_with(|| simplex_nodes(kind, segs[seg].0, segs[seg].1, g, &rule));
        }
    }
    let kernel = SymmetricKernel::new(j, labels);

    let workers = thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(live.len().max(1));
    let mut parts = vec![0.0; live.len()];
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|t| {
                let (live, cache, kernel) = (&live, &cache, &kernel);
                scope.spawn(move || {
                    (t..live.len())
                        .step_by(workers)
                        .map(|i| {
                            let sets: Vec<&SimplexNodes> = groups(&live[i]).iter().map(|k| &cache[k]).collect();
                            (i, integrate_assignment(&sets, kernel, &mut [0.0; MAX_T_ORDER], 0, 0, 1.0))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, v) in h.join().expect("quadrature worker panicked") {
                parts[i] = v;
            }
        }
    });
    // ordered summation keeps runs bit-reproducible
    Ok(prefactor(j) * parts.iter().zip(&multiplicity).map(|(v, m)| v * m).sum::<f64>())
}

fn check_order(j: usize) -> Result<()> {
    if j == 0 || j > MAX_T_ORDER {
        return Err(Error::UnsupportedOrder(j));
    }
    Ok(())
}

/// `w_j` with the difference against a rule two points coarser.
pub fn w_coefficient_with_error(model: &ModelSpec, j: usize, dom: &IntegrationDomain) -> Result<(f64, f64)> {
    check_order(j)?;
    if model.kind == ModelKind::Delta {
        // the delta collapses every integral; the kernels vanish on the diagonal
        return Ok((if j == 1 { -0.5 } else { 0.0 }, 0.0));
    }
    dom.validate()?;
    let labels: Vec<usize> = (0..j).collect();
    let fine = integral(model.kind, j, dom, dom.gl_order, &labels)?;
    let coarse = integral(model.kind, j, dom, dom.gl_order.saturating_sub(2).max(2), &labels)?;
    let err = (fine - coarse).abs();
    if err > QUADRATURE_TOL * fine.abs().max(1.0) {
        return Err(Error::QuadratureNotConverged { coarse, fine });
    }
    Ok((fine, err))
}

pub fn w_coefficient(model: &ModelSpec, j: usize, dom: &IntegrationDomain) -> Result<f64> {
    w_coefficient_with_error(model, j, dom).map(|(w, _)| w)
}

/// `w_1..w_order` on the model's default domain.
pub fn w_coefficients(model: &ModelSpec, order: usize) -> Result<WCoefficients> {
    check_order(order)?;
    let dom = IntegrationDomain::default_for(model.kind);
    let mut w = Vec::with_capacity(order);
    let mut errors = Vec::with_capacity(order);
    for j in 1..=order {
        let (v, e) = w_coefficient_with_error(model, j, &dom)?;
        w.push(v);
        errors.push(e);
    }
    Ok(WCoefficients { model: model.kind, w, errors })
}

/// `e = -(sum_j w_j lambda^j)²`, kept through order `len(w) + 1`, the last
/// order fixed by the known `w_j`.
pub fn energy_series_from_w(w: &WCoefficients) -> Result<EnergySeries> {
    if w.w.first().map_or(true, |&w1| w1 == 0.0) {
        return Err(Error::InvalidInput("w_1 must be nonzero".into()));
    }
    let order = w.w.len() + 1;
    let mut coeffs = vec![0.0; order + 1];
    coeffs[1..=w.w.len()].copy_from_slice(&w.w);
    let s = TruncatedSeries::new("lambda", coeffs);
    let e = -&(&s * &s);
    Ok(EnergySeries::new(w.model, Method::TMethod, SeriesCoefficients::Float(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ModelSpec {
        ModelSpec::new(ModelKind::Square, 0.0).unwrap()
    }

    #[test]
    fn square_low_orders() {
        let dom = IntegrationDomain::default_for(ModelKind::Square);
        assert!((w_coefficient(&square(), 1, &dom).unwrap() + 1.0).abs() < 1e-14);
        assert!((w_coefficient(&square(), 2, &dom).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((w_coefficient(&square(), 3, &dom).unwrap() + 0.8).abs() < 1e-13);
    }

    #[test]
    fn square_stable_under_refinement() {
        for j in 1..=4 {
            let a = w_coefficient(&square(), j, &IntegrationDomain::default_for(ModelKind::Square).with_gl_order(8)).unwrap();
            let b = w_coefficient(&square(), j, &IntegrationDomain::default_for(ModelKind::Square).with_gl_order(12)).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn relabelled_order_three() {
        let dom = IntegrationDomain::default_for(ModelKind::Exponential).with_gl_order(10);
        let a = integral(ModelKind::Exponential, 3, &dom, 10, &[0, 1, 2]).unwrap();
        let b = integral(ModelKind::Exponential, 3, &dom, 10, &[2, 0, 1]).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn delta_is_analytic() {
        let m = ModelSpec::new(ModelKind::Delta, 0.0).unwrap();
        let w = w_coefficients(&m, 4).unwrap();
        assert_eq!(w.w, vec![-0.5, 0.0, 0.0, 0.0]);
        let e = energy_series_from_w(&w).unwrap();
        assert_eq!(e.coefficients.coeff_f64(2), -0.25);
    }

    #[test]
    fn series_from_w() {
        let w = WCoefficients { model: ModelKind::Square, w: vec![-1.0, 0.0, 0.0, 0.0], errors: vec![0.0; 4] };
        let e = energy_series_from_w(&w).unwrap();
        let c: Vec<f64> = (0..=5).map(|j| e.coefficients.coeff_f64(j)).collect();
        assert_eq!(c, vec![0.0, 0.0, -1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn unsupported_orders() {
        let dom = IntegrationDomain::default_for(ModelKind::Square);
        assert_eq!(w_coefficient(&square(), 5, &dom), Err(Error::UnsupportedOrder(5)));
        assert_eq!(w_coefficient(&square(), 0, &dom), Err(Error::UnsupportedOrder(0)));
    }

    #[test]
    fn tail_bounds() {
        assert!(IntegrationDomain::default_for(ModelKind::Exponential).tail_bound() < 1e-12);
        assert!(IntegrationDomain::default_for(ModelKind::PoschlTeller).tail_bound() < 1e-12);
        assert!(IntegrationDomain::default_for(ModelKind::Exponential).with_cutoff(10.0).validate().is_err());
    }
}
