use alloc::vec::Vec;

use super::{CMat, C64};
use crate::{Error, Result};

/// Relative singular-value threshold used when no tolerance is given.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-7;

/// Orthonormal kernel basis together with the singular values it was cut from.
#[derive(Clone, Debug)]
pub struct Kernel {
    /// Columns span the kernel, ordered by increasing singular value.
    pub basis: CMat,
    /// Right singular vectors above the cut, i.e. the orthogonal complement
    /// of the kernel. For normal matrices this is also the range.
    pub complement: CMat,
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
    /// Absolute cut `tol · σ_max` (or `tol · scale` if larger).
    pub cut: f64,
    /// Smallest singular value above the cut (infinite if there is none).
    pub gap: f64,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthogonal projection onto the kernel.
    pub fn projector(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }
}

/// Kernel of `a` by SVD: singular values `σ ≤ tol · σ_max` are kept.
///
/// Fails with [`Error::AmbiguousKernel`] when a singular value falls in the
/// band `(tol, 10·tol) · σ_max`, because the dimension would then depend on a
/// threshold choice. A zero matrix has the whole space as kernel.
pub fn kernel(a: &CMat, tol: f64) -> Result<Kernel> {
    kernel_with_scale(a, tol, 0.0)
}

/// As [`kernel`], with the cut taken relative to `max(σ_max, scale)`.
///
/// Operators with a natural size, such as sums of unitaries, pass that size
/// so that a difference that is pure rounding noise counts as zero.
pub fn kernel_with_scale(a: &CMat, tol: f64, scale: f64) -> Result<Kernel> {
    let (m, n) = (a.nrows(), a.ncols());
    if n == 0 {
        return Ok(Kernel {
            basis: CMat::zeros(0, 0),
            complement: CMat::zeros(0, 0),
            singular_values: Vec::new(),
            cut: 0.0,
            gap: f64::INFINITY,
        });
    }
    // pad wide matrices so the right singular vectors cover all of Cⁿ
    let square = if m < n {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let sv: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let smax = sv.first().copied().unwrap_or(0.0).max(scale);

    if smax == 0.0 {
        return Ok(Kernel {
            basis: CMat::identity(n, n),
            complement: CMat::zeros(n, 0),
            singular_values: sv,
            cut: 0.0,
            gap: f64::INFINITY,
        });
    }
    let cut = tol * smax;
    let upper = 10.0 * tol * smax;
    if let Some(&s) = sv.iter().find(|&&s| s > cut && s < upper) {
        return Err(Error::AmbiguousKernel { singular_value: s, cut, upper });
    }
    let gap = sv.iter().copied().filter(|&s| s > cut).fold(f64::INFINITY, f64::min);
    let mut cols: Vec<usize> = order.iter().copied().filter(|&k| svd.singular_values[k] <= cut).collect();
    cols.reverse();
    let rest: Vec<usize> = order.iter().copied().filter(|&k| svd.singular_values[k] > cut).collect();
    let pick = |idx: &[usize]| CMat::from_fn(n, idx.len(), |i, j| -> C64 { v_t[(idx[j], i)].conj() });
    Ok(Kernel { basis: pick(&cols), complement: pick(&rest), singular_values: sv, cut, gap })
}
