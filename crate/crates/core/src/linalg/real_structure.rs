use alloc::vec::Vec;
use nalgebra::{Complex, DVector};

use super::{ensure_dim, ensure_square, op_norm, scale, to_complex, CMat, RMat, C64, I, ONE, STRUCTURAL_TOL};
use crate::{Error, Result};

/// An antiunitary involution `Γv = c · conj(v)` on `Cⁿ`, stored through `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealStructure {
    c: CMat,
}

impl RealStructure {
    /// Validates that `c` is unitary and `c · conj(c) = 1`.
    pub fn new(c: CMat, tol: f64) -> Result<Self> {
        let n = ensure_square(&c)?;
        let unitary = op_norm(&(c.adjoint() * &c - CMat::identity(n, n)));
        if unitary > tol {
            return Err(Error::InvalidRealStructure { reason: "c is not unitary", residual: unitary });
        }
        let involution = op_norm(&(&c * c.conjugate() - CMat::identity(n, n)));
        if involution > tol {
            return Err(Error::InvalidRealStructure { reason: "Γ² ≠ 1", residual: involution });
        }
        Ok(Self { c })
    }

    /// Plain complex conjugation on `Cⁿ`.
    pub fn conjugation(dim: usize) -> Self {
        Self { c: CMat::identity(dim, dim) }
    }

    /// `Γ = conj ∘ (1 ⊗ σ₁)` in the (particle block, hole block) ordering.
    pub fn nambu(half_dim: usize) -> Self {
        assert!(half_dim >= 1, "nambu_involution needs half_dim >= 1");
        let n = 2 * half_dim;
        let mut c = CMat::zeros(n, n);
        for j in 0..half_dim {
            c[(j, j + half_dim)] = ONE;
            c[(j + half_dim, j)] = ONE;
        }
        Self { c }
    }

    pub fn dim(&self) -> usize {
        self.c.nrows()
    }

    pub fn c_matrix(&self) -> &CMat {
        &self.c
    }

    /// `Γv`.
    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.c * v.conjugate()
    }

    /// The conjugated operator `ΓAΓ = c · conj(A) · c†`.
    pub fn conjugate_op(&self, a: &CMat) -> CMat {
        &self.c * a.conjugate() * self.c.adjoint()
    }

    /// `‖ΓAΓ − A‖`.
    pub fn reality_residual(&self, a: &CMat) -> f64 {
        op_norm(&(self.conjugate_op(a) - a))
    }

    /// `‖ΓAΓ + A‖`, the particle-hole residual of a Hamiltonian.
    pub fn odd_residual(&self, a: &CMat) -> f64 {
        op_norm(&(self.conjugate_op(a) + a))
    }

    /// Projects onto Real operators, `(A + ΓAΓ)/2`.
    pub fn real_part(&self, a: &CMat) -> CMat {
        (a + self.conjugate_op(a)) * Complex::new(0.5, 0.0)
    }

    pub fn direct_sum(&self, other: &RealStructure) -> RealStructure {
        RealStructure { c: super::direct_sum(&self.c, &other.c) }
    }

    pub fn kron(&self, other: &RealStructure) -> RealStructure {
        RealStructure { c: self.c.kronecker(&other.c) }
    }

    /// Restriction to a Γ-invariant subspace spanned by the orthonormal
    /// columns of `basis`: `c' = B† c conj(B)`.
    pub fn compress(&self, basis: &CMat, tol: f64) -> Result<RealStructure> {
        let c = basis.adjoint() * &self.c * basis.conjugate();
        RealStructure::new(c, tol)
    }

    /// Orthonormal basis of the fixed space `{v : Γv = v}` as columns of a
    /// unitary matrix.
    ///
    /// Deterministic Gram–Schmidt over the candidates `e_j + Γe_j` and
    /// `i e_j + Γ(i e_j)`, visited in the order `j = 0, 1, …`. Pfaffian signs
    /// of realified operators depend on this basis; only products of signs of
    /// two operators realified in the same basis are basis independent.
    pub fn real_basis(&self) -> Result<CMat> {
        let n = self.dim();
        if n == 0 {
            return Ok(CMat::zeros(0, 0));
        }
        let mut basis: Vec<DVector<C64>> = Vec::with_capacity(n);
        'outer: for j in 0..n {
            for phase in [ONE, I] {
                if basis.len() == n {
                    break 'outer;
                }
                let mut v = DVector::<C64>::zeros(n);
                v[j] = phase;
                let mut cand = &v + self.apply(&v);
                let initial = cand.norm();
                if initial < 1e-12 {
                    continue;
                }
                // two passes of modified Gram–Schmidt
                for _ in 0..2 {
                    for b in &basis {
                        let coeff = b.dotc(&cand).re;
                        cand -= b * Complex::new(coeff, 0.0);
                    }
                }
                let norm = cand.norm();
                if norm > 1e-6 * initial {
                    basis.push(cand / Complex::new(norm, 0.0));
                }
            }
        }
        if basis.len() != n {
            return Err(Error::InvalidRealStructure {
                reason: "fixed space has the wrong dimension",
                residual: (n - basis.len()) as f64,
            });
        }
        Ok(CMat::from_columns(&basis))
    }
}

/// True iff `‖c conj(A) c† − A‖ ≤ tol`.
pub fn is_real(a: &CMat, g: &RealStructure, tol: f64) -> Result<bool> {
    ensure_dim(a, g.dim())?;
    Ok(g.reality_residual(a) <= tol)
}

/// Matrix of a Real operator in the orthonormal real basis of `fix(Γ)`.
pub fn realify(a: &CMat, g: &RealStructure) -> Result<RMat> {
    ensure_dim(a, g.dim())?;
    let residual = g.reality_residual(a);
    if residual > STRUCTURAL_TOL * scale(a) {
        return Err(Error::NotReal { residual });
    }
    let b = g.real_basis()?;
    Ok((b.adjoint() * a * &b).map(|z| z.re))
}

/// Inverse of [`realify`]: the complex-linear extension of a real matrix.
pub fn complexify(r: &RMat, g: &RealStructure) -> Result<CMat> {
    if r.nrows() != g.dim() || r.ncols() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: r.nrows() });
    }
    let b = g.real_basis()?;
    Ok(&b * to_complex(r) * b.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, ZERO};

    #[test]
    fn nambu_one_mode_is_sigma_x() {
        let g = RealStructure::nambu(1);
        let expected = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        assert_eq!(g.c_matrix(), &expected);
    }

    #[test]
    fn nambu_two_modes_has_identity_off_diagonal_blocks() {
        let g = RealStructure::nambu(2);
        let c = g.c_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if (i + 2) % 4 == j { ONE } else { ZERO };
                assert_eq!(c[(i, j)], expected);
            }
        }
        assert!(op_norm(&(c * c.conjugate() - CMat::identity(4, 4))) == 0.0);
    }

    #[test]
    fn identity_is_real_and_i_is_not() {
        let g = RealStructure::nambu(3);
        let id = CMat::identity(6, 6);
        assert!(is_real(&id, &g, 1e-12).unwrap());
        let i_id = &id * I;
        assert!(!is_real(&i_id, &g, 1e-12).unwrap());
    }

    #[test]
    fn realify_identity_is_identity() {
        let g = RealStructure::nambu(2);
        let r = realify(&CMat::identity(4, 4), &g).unwrap();
        assert!((r - RMat::identity(4, 4)).abs().max() < 1e-14);
    }

    #[test]
    fn real_basis_is_unitary_and_fixed() {
        let g = RealStructure::nambu(3);
        let b = g.real_basis().unwrap();
        assert!(op_norm(&(b.adjoint() * &b - CMat::identity(6, 6))) < 1e-13);
        for j in 0..6 {
            let v = b.column(j).into_owned();
            assert!((g.apply(&v) - v).norm() < 1e-13);
        }
    }

    #[test]
    fn rejects_quaternionic_structure() {
        // c = iσ_y gives Γ² = −1
        let c = CMat::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO]);
        assert!(matches!(RealStructure::new(c, 1e-10), Err(Error::InvalidRealStructure { .. })));
    }

    #[test]
    fn realify_rejects_non_real() {
        let g = RealStructure::nambu(1);
        let a = CMat::identity(2, 2) * I;
        assert!(matches!(realify(&a, &g), Err(Error::NotReal { .. })));
    }
}
