use alloc::vec::Vec;

use super::RMat;
use crate::{Error, Result};

fn antisymmetric_copy(a: &RMat) -> Result<RMat> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    let residual = (a + a.transpose()).abs().max();
    let scale = a.abs().max().max(1.0);
    if residual > 1e-8 * scale {
        return Err(Error::NotAntisymmetric { residual });
    }
    Ok((a - a.transpose()) * 0.5)
}

/// Parlett–Reid reduction with partial pivoting. Returns the pivots
/// `A[k][k+1]` and the number of row exchanges, or `None` at an exactly zero
/// pivot column.
fn reduce(mut a: RMat) -> Option<(Vec<f64>, usize)> {
    let n = a.nrows();
    let mut pivots = Vec::with_capacity(n / 2);
    let mut flips = 0;
    let mut k = 0;
    while k + 1 < n {
        let mut kp = k + 1;
        let mut best = a[(k + 1, k)].abs();
        for i in (k + 2)..n {
            let v = a[(i, k)].abs();
            if v > best {
                best = v;
                kp = i;
            }
        }
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            flips += 1;
        }
        if a[(k + 1, k)] == 0.0 {
            return None;
        }
        let pivot = a[(k, k + 1)];
        pivots.push(pivot);
        if k + 2 < n {
            let m = n - k - 2;
            let tau: RMat = a.view((k, k + 2), (1, m)).transpose() / pivot;
            let col: RMat = a.view((k + 2, k + 1), (m, 1)).into_owned();
            let update = &tau * col.transpose() - &col * tau.transpose();
            let mut trailing = a.view_mut((k + 2, k + 2), (m, m));
            trailing += update;
        }
        k += 2;
    }
    Some((pivots, flips))
}

/// Pfaffian of a real antisymmetric matrix.
///
/// Odd dimensions give exactly 0. The input is antisymmetrized after the
/// residual check, so tiny asymmetries from upstream arithmetic are harmless.
pub fn pfaffian(a: &RMat) -> Result<f64> {
    let a = antisymmetric_copy(a)?;
    if a.nrows() % 2 == 1 {
        return Ok(0.0);
    }
    let Some((pivots, flips)) = reduce(a) else {
        return Ok(0.0);
    };
    let pf: f64 = pivots.iter().product();
    Ok(if flips % 2 == 0 { pf } else { -pf })
}

/// `(sign, ln|Pf|)`, avoiding overflow for large matrices. A vanishing
/// Pfaffian is reported as `(0, -inf)`.
pub fn pfaffian_sign_and_log(a: &RMat) -> Result<(f64, f64)> {
    let a = antisymmetric_copy(a)?;
    if a.nrows() % 2 == 1 {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    let Some((pivots, flips)) = reduce(a) else {
        return Ok((0.0, f64::NEG_INFINITY));
    };
    let negatives = pivots.iter().filter(|&&p| p < 0.0).count();
    let sign = if (negatives + flips) % 2 == 0 { 1.0 } else { -1.0 };
    let log = pivots.iter().map(|p| libm::log(p.abs())).sum();
    Ok((sign, log))
}
