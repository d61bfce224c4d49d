use crate::error::{Error, Result};

/// Richardson extrapolation of `values[i] = A(h_0 / ratio^i)` to `h = 0`,
/// assuming `A(h) = A + c_p h^p + c_{p+1} h^(p+1) + ...` with `p = first_power`.
///
/// Returns the full tableau; row `i` holds the estimates built from
/// `values[..=i]`, and the last entry of the last row uses every value.
pub fn richardson_table(values: &[f64], ratio: f64, first_power: i32) -> Result<Vec<Vec<f64>>> {
    if values.is_empty() || !(ratio > 1.0) {
        return Err(Error::InvalidInput("Richardson needs values and a refinement ratio > 1".into()));
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(values.len());
    for (i, &v) in values.iter().enumerate() {
        let mut row = vec![v];
        for k in 1..=i {
            let f = ratio.powi(first_power + k as i32 - 1);
            let next = (f * row[k - 1] - table[i - 1][k - 1]) / (f - 1.0);
            row.push(next);
        }
        table.push(row);
    }
    Ok(table)
}

/// The most refined Richardson estimate from [`richardson_table`].
pub fn richardson(values: &[f64], ratio: f64, first_power: i32) -> Result<f64> {
    let t = richardson_table(values, ratio, first_power)?;
    Ok(*t.last().and_then(|r| r.last()).expect("non-empty table"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomial_error() {
        // A(h) = 3 + 2h - h² + 0.5h³ is recovered exactly from four halvings
        let a = |h: f64| 3.0 + 2.0 * h - h * h + 0.5 * h * h * h;
        let v: Vec<f64> = (0..4).map(|i| a(0.5f64.powi(i))).collect();
        assert!((richardson(&v, 2.0, 1).unwrap() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn second_order_start() {
        let a = |h: f64| 1.0 + h * h;
        let v = [a(1.0), a(0.5)];
        assert!((richardson(&v, 2.0, 2).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_ratio() {
        assert!(richardson(&[1.0], 1.0, 1).is_err());
    }
}
