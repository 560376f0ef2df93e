use nalgebra::Complex;

use super::{
    ensure_dim, hermitian_eigen, hermiticity_residual, op_norm, realify, scale, skewness_residual, unitarity_residual,
    CMat, HermitianEigen, RMat, RealStructure, I, STRUCTURAL_TOL,
};
use crate::{Error, Result};

/// A skew-adjoint unitary `J` (so `J² = −1`) that is Real for its structure.
#[derive(Clone, Debug)]
pub struct RealSkewUnitary {
    matrix: CMat,
    gamma: RealStructure,
}

impl RealSkewUnitary {
    pub fn new(matrix: CMat, gamma: RealStructure, tol: f64) -> Result<Self> {
        ensure_dim(&matrix, gamma.dim())?;
        let skew = skewness_residual(&matrix);
        if skew > tol {
            return Err(Error::NotSkewUnitary { reason: "J† ≠ −J", residual: skew });
        }
        let unitary = unitarity_residual(&matrix);
        if unitary > tol {
            return Err(Error::NotSkewUnitary { reason: "J†J ≠ 1", residual: unitary });
        }
        let real = gamma.reality_residual(&matrix);
        if real > tol {
            return Err(Error::NotReal { residual: real });
        }
        Ok(Self { matrix, gamma })
    }

    /// Skips validation; used where the construction guarantees the invariants.
    pub(crate) fn new_unchecked(matrix: CMat, gamma: RealStructure) -> Self {
        Self { matrix, gamma }
    }

    /// `J = i(2P − 1)` for a basis projection `P`.
    pub fn from_basis_projection(p: &CMat, gamma: RealStructure, tol: f64) -> Result<Self> {
        let n = gamma.dim();
        let j = (p * Complex::new(2.0, 0.0) - CMat::identity(n, n)) * I;
        Self::new(j, gamma, tol)
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn gamma(&self) -> &RealStructure {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    /// The basis projection `P = (1 − iJ)/2`.
    pub fn basis_projection(&self) -> CMat {
        let n = self.dim();
        (CMat::identity(n, n) - &self.matrix * I) * Complex::new(0.5, 0.0)
    }

    /// Real antisymmetric orthogonal matrix of `J` in the standard real basis.
    pub fn realify(&self) -> Result<RMat> {
        realify(&self.matrix, &self.gamma)
    }

    pub fn neg(&self) -> Self {
        Self { matrix: -&self.matrix, gamma: self.gamma.clone() }
    }

    /// `O J O†` for a unitary `O` that is Real for the same structure.
    pub fn conjugate_by(&self, o: &CMat, tol: f64) -> Result<Self> {
        Self::new(o * &self.matrix * o.adjoint(), self.gamma.clone(), tol)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { matrix: super::direct_sum(&self.matrix, &other.matrix), gamma: self.gamma.direct_sum(&other.gamma) }
    }

    /// True when both operators live on the same real structure.
    pub fn compatible(&self, other: &Self) -> bool {
        self.dim() == other.dim() && op_norm(&(self.gamma.c_matrix() - other.gamma.c_matrix())) <= STRUCTURAL_TOL
    }
}

/// `J = i·sgn(H)` for a gapped particle-hole symmetric Hamiltonian.
pub fn flatten(h: &CMat, g: &RealStructure, gap_tol: f64) -> Result<RealSkewUnitary> {
    flatten_with_eigen(h, g, gap_tol).map(|(j, _)| j)
}

/// As [`flatten`], also returning the eigendecomposition of `H`.
pub fn flatten_with_eigen(h: &CMat, g: &RealStructure, gap_tol: f64) -> Result<(RealSkewUnitary, HermitianEigen)> {
    ensure_dim(h, g.dim())?;
    let s = scale(h);
    let herm = hermiticity_residual(h);
    if herm > STRUCTURAL_TOL * s {
        return Err(Error::NotHermitian { residual: herm });
    }
    let ph = g.odd_residual(h);
    if ph > STRUCTURAL_TOL * s {
        return Err(Error::NotParticleHoleSymmetric { residual: ph });
    }
    let eig = hermitian_eigen(h);
    if let Some(&e) = eig.values.iter().min_by(|a, b| a.abs().total_cmp(&b.abs())) {
        if e.abs() <= gap_tol {
            return Err(Error::GapClosed { eigenvalue: e, gap_tol });
        }
    }
    let sgn = eig.apply(|x| Complex::new(if x > 0.0 { 1.0 } else { -1.0 }, 0.0));
    let sgn = (&sgn + sgn.adjoint()) * Complex::new(0.5, 0.0);
    // push the tiny Γ-asymmetry left by the eigensolver back onto the Real subspace
    let j = g.real_part(&(sgn * I));
    let j = (&j - j.adjoint()) * Complex::new(0.5, 0.0);
    Ok((RealSkewUnitary::new_unchecked(j, g.clone()), eig))
}
