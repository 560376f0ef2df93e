//! Real-structure-aware dense linear algebra.
//!
//! Matrix helpers shared by every other module: operator norms, sorted
//! Hermitian eigendecompositions, kernels with an explicit ambiguity band,
//! realification with respect to a [`RealStructure`], spectral flattening and
//! the Pfaffian of real antisymmetric matrices.

mod flatten;
mod kernel;
mod pfaffian;
mod real_structure;

pub use flatten::{flatten, flatten_with_eigen, RealSkewUnitary};
pub use kernel::{kernel, kernel_with_scale, Kernel, DEFAULT_KERNEL_TOL};
pub use pfaffian::{pfaffian, pfaffian_sign_and_log};
pub use real_structure::{complexify, is_real, realify, RealStructure};

use alloc::vec::Vec;
use nalgebra::{Complex, DMatrix};

use crate::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type RMat = DMatrix<f64>;

/// Default tolerance for structural checks (Hermiticity, reality, unitarity).
pub const STRUCTURAL_TOL: f64 = 1e-8;

#[cfg(test)]
pub(crate) const ZERO: C64 = Complex { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = Complex { re: 1.0, im: 0.0 };
pub(crate) const I: C64 = Complex { re: 0.0, im: 1.0 };

/// Modulus of a complex number (`num-complex` only provides it with `std`).
#[cfg(test)]
pub(crate) fn cabs(z: C64) -> f64 {
    libm::hypot(z.re, z.im)
}

pub fn to_complex(a: &RMat) -> CMat {
    a.map(|x| Complex::new(x, 0.0))
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub(crate) fn ensure_square(a: &CMat) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    Ok(a.nrows())
}

pub(crate) fn ensure_dim(a: &CMat, n: usize) -> Result<()> {
    let m = ensure_square(a)?;
    if m != n {
        return Err(Error::DimensionMismatch { expected: n, found: m });
    }
    Ok(())
}

/// Largest singular value; zero for empty matrices.
pub fn op_norm(a: &CMat) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    a.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn op_norm_real(a: &RMat) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    a.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Singular values in descending order.
pub fn singular_values(a: &CMat) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    /// Smallest eigenvalue magnitude, or infinity for an empty matrix.
    pub fn min_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min)
    }

    /// Recombine as `U f(D) U†`.
    pub fn apply(&self, f: impl Fn(f64) -> C64) -> CMat {
        let n = self.vectors.nrows();
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let fv = f(v);
            for i in 0..n {
                scaled[(i, j)] *= fv;
            }
        }
        &scaled * self.vectors.adjoint()
    }
}

/// The input is symmetrized before diagonalization; callers check
/// Hermiticity themselves when it matters.
pub fn hermitian_eigen(h: &CMat) -> HermitianEigen {
    let n = h.nrows();
    if n == 0 {
        return HermitianEigen { values: Vec::new(), vectors: CMat::zeros(0, 0) };
    }
    let sym = (h + h.adjoint()) * Complex::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

pub fn hermitian_eigenvalues(h: &CMat) -> Vec<f64> {
    if h.nrows() == 0 {
        return Vec::new();
    }
    let sym = (h + h.adjoint()) * Complex::new(0.5, 0.0);
    let mut v: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Residual `‖A − A†‖`.
pub fn hermiticity_residual(a: &CMat) -> f64 {
    op_norm(&(a - a.adjoint()))
}

/// Residual `‖A + A†‖`.
pub fn skewness_residual(a: &CMat) -> f64 {
    op_norm(&(a + a.adjoint()))
}

/// Residual `‖A†A − 1‖`.
pub fn unitarity_residual(a: &CMat) -> f64 {
    let n = a.ncols();
    op_norm(&(a.adjoint() * a - identity(n)))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &CMat, b: &CMat) -> CMat {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = CMat::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Scale used by relative structural tolerances: `max(1, ‖A‖)`.
pub(crate) fn scale(a: &CMat) -> f64 {
    op_norm(a).max(1.0)
}
