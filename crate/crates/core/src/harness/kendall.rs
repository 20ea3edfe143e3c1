use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Kendall's tau-b between two paired score lists, by exact pair counting.
///
/// Ties are corrected for in the denominator. When either list is constant
/// the coefficient is undefined and [`Error::AllTied`] is returned.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two paired scores, got {n}"
        )));
    }
    if let Some(v) = a.iter().chain(b).find(|v| v.is_nan()) {
        return Err(Error::InvalidArgument(format!("score {v} cannot be ranked")));
    }
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut ties_a, mut ties_b) = (0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let sa = a[i].partial_cmp(&a[j]).unwrap();
            let sb = b[i].partial_cmp(&b[j]).unwrap();
            if sa == Ordering::Equal {
                ties_a += 1;
            }
            if sb == Ordering::Equal {
                ties_b += 1;
            }
            if sa != Ordering::Equal && sb != Ordering::Equal {
                if sa == sb {
                    concordant += 1;
                } else {
                    discordant += 1;
                }
            }
        }
    }
    let total = (n * (n - 1) / 2) as i64;
    let denom = ((total - ties_a) as f64 * (total - ties_b) as f64).sqrt();
    if denom == 0.0 {
        return Err(Error::AllTied);
    }
    Ok((concordant - discordant) as f64 / denom)
}
