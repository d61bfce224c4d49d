//! Dense elimination over any [`Scalar`]: exact for rationals, partially
//! pivoted for binary64.

use crate::numeric::Scalar;

fn row_scale<T: Scalar>(rows: &[Vec<T>]) -> f64 {
    rows.iter().flatten().fold(0.0f64, |m, x| m.max(x.magnitude()))
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
fn rref<T: Scalar>(a: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let scale = row_scale(a);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let best = (r..a.len())
            .filter(|&i| !a[i][c].negligible(scale))
            .max_by(|&i, &j| a[i][c].magnitude().total_cmp(&a[j][c].magnitude()));
        let Some(p) = best else { continue };
        a.swap(r, p);
        let inv = T::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..a[r].len() {
                    let d = f.clone() * a[r][k].clone();
                    a[i][k] = a[i][k].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves the square system `a x = b`; `None` when singular.
pub(crate) fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = b.len();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    let x: Vec<T> = aug.iter().map(|r| r[n].clone()).collect();
    x.iter().all(|v| v.to_f64().is_finite() || T::DOMAIN == crate::numeric::Domain::Rational).then_some(x)
}

/// A basis of `{x : a x = 0}`.
pub(crate) fn null_space<T: Scalar>(a: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![T::zero(); ncols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}
