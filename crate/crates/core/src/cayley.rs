//! Relative Cayley transforms of pairs of Real unitaries.
//!
//! For Real skew-adjoint unitaries `J₀, J₁` with `‖J₀ − J₁‖ < 2` the relative
//! Cayley transform `C = J₀(J₁+J₀)(J₁−J₀)⁻¹` lives on the range of `J₁ − J₀`.
//! With `U = J₁J₀` it equals `J₀(U−1)(U+1)⁻¹` there, and its bounded
//! transform is `F = ½J₀(U−U†)·(2+U+U†)^{−1/2}`, so that
//! `F² = ¼(−2+U+U†)` and `1+F² = −¼(J₀−J₁)²`.
//!
//! Full-space convention: on `ker(J₁−J₀)` we set `F = J₀`. Both identities
//! force `F² = −1` there, and `J₀` is the Real skew unitary already present.
//! Consequently `{F, J₀} = 0` holds on the range only, while `{F, κⱼ} = 0`
//! holds everywhere.
//!
//! Numerically `2+U+U† = −D²` for `D = J₁ − J₀` is a difference of O(1)
//! terms that is only O(σ²) along small singular values `σ` of `D`, so it is
//! never formed. On the range the same operator is
//! `F = (1 − ½J₀D)·sgn(D)`, which needs only `D` and its spectral sign.
//!
//! The graded self-adjoint variant takes odd self-adjoint Real unitaries
//! `V₀, V₁` and `U = V₁V₀`: `C = V₀(U+1)(U−1)⁻¹` and
//! `F = ½V₀(U†−U)·(2−U−U†)^{−1/2}`, with `F = V₀` on `ker(V₁−V₀)`. On the
//! range this is `(1 + ½V₀D)·sgn(D)`.

use alloc::vec::Vec;

use nalgebra::Complex;

use crate::linalg::{
    anticommutator, hermitian_eigen, hermiticity_residual, identity, kernel_with_scale, op_norm, skewness_residual,
    unitarity_residual, CMat, RealSkewUnitary, RealStructure,
};
use crate::{Error, Result};

/// Relative cut for the pseudo-inverse of `J₁ − J₀`.
pub const PINV_TOL: f64 = 1e-10;
/// `‖J₀ − J₁‖` must stay below `2 − NORM_MARGIN`.
pub const NORM_MARGIN: f64 = 1e-9;
/// Tolerance on the anticommutation of symmetries with the pair.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Eigenvalues of square-root arguments in `[−SQRT_CLAMP, 0]` are clamped.
pub const SQRT_CLAMP: f64 = 1e-10;

const HALF: Complex<f64> = Complex { re: 0.5, im: 0.0 };

/// A validated pair of Real skew unitaries with shared symmetries.
#[derive(Clone, Debug)]
pub struct CayleyPair {
    j0: RealSkewUnitary,
    j1: RealSkewUnitary,
    kappas: Vec<RealSkewUnitary>,
    range_basis: CMat,
    kernel_basis: CMat,
    calkin_gap: f64,
    difference_norm: f64,
}

/// Range and kernel of a normal difference operator, split at `PINV_TOL`.
fn split_difference(d: &CMat) -> Result<(CMat, CMat, f64, f64)> {
    let norm = op_norm(d);
    if norm >= 2.0 - NORM_MARGIN {
        return Err(Error::NormCondition { norm });
    }
    // differences of unitaries have natural size 1
    let k = kernel_with_scale(d, PINV_TOL, 1.0)?;
    Ok((k.complement, k.basis, k.gap, norm))
}

fn check_anticommutes(a: &CMat, b: &CMat, what: &str) -> Result<()> {
    let r = op_norm(&anticommutator(a, b));
    if r > SYMMETRY_TOL {
        return Err(Error::InvalidSymmetry { what: what.into(), residual: r });
    }
    Ok(())
}

impl CayleyPair {
    pub fn new(j0: RealSkewUnitary, j1: RealSkewUnitary, kappas: Vec<RealSkewUnitary>) -> Result<Self> {
        if !j0.compatible(&j1) || kappas.iter().any(|k| !j0.compatible(k)) {
            return Err(Error::InvalidInput("pair members must share dimension and real structure".into()));
        }
        for k in &kappas {
            check_anticommutes(k.matrix(), j0.matrix(), "kappa does not anticommute with J0")?;
            check_anticommutes(k.matrix(), j1.matrix(), "kappa does not anticommute with J1")?;
        }
        let (range_basis, kernel_basis, calkin_gap, difference_norm) = split_difference(&(j1.matrix() - j0.matrix()))?;
        Ok(Self { j0, j1, kappas, range_basis, kernel_basis, calkin_gap, difference_norm })
    }

    /// The pair with its members exchanged.
    pub fn swapped(&self) -> Result<Self> {
        Self::new(self.j1.clone(), self.j0.clone(), self.kappas.clone())
    }

    pub fn j0(&self) -> &RealSkewUnitary {
        &self.j0
    }

    pub fn j1(&self) -> &RealSkewUnitary {
        &self.j1
    }

    pub fn kappas(&self) -> &[RealSkewUnitary] {
        &self.kappas
    }

    pub fn dim(&self) -> usize {
        self.j0.dim()
    }

    /// Orthonormal basis of the range of `J₁ − J₀`.
    pub fn range_basis(&self) -> &CMat {
        &self.range_basis
    }

    /// Orthonormal basis of `ker(J₁ − J₀)`.
    pub fn kernel_basis(&self) -> &CMat {
        &self.kernel_basis
    }

    /// Smallest nonzero singular value of `J₀ − J₁`; infinite when `J₀ = J₁`.
    pub fn calkin_gap(&self) -> f64 {
        self.calkin_gap
    }

    pub fn difference_norm(&self) -> f64 {
        self.difference_norm
    }

    /// `R† A R` for the range basis `R`.
    pub fn compress(&self, a: &CMat) -> CMat {
        self.range_basis.adjoint() * a * &self.range_basis
    }

    /// `R A R†`, the inverse of [`compress`](Self::compress) on range operators.
    pub fn embed(&self, a: &CMat) -> CMat {
        &self.range_basis * a * self.range_basis.adjoint()
    }

    /// The real structure restricted to the range.
    pub fn compressed_real_structure(&self) -> Result<RealStructure> {
        self.j0.gamma().compress(&self.range_basis, 1e-8)
    }
}

/// `C = J₀(J₁+J₀)(J₁−J₀)⁻¹` as a matrix on the range basis.
pub fn relative_cayley(p: &CayleyPair) -> Result<CMat> {
    let (j0, j1) = (p.j0.matrix(), p.j1.matrix());
    compressed_cayley(&p.range_basis, &(j0 * (j1 + j0)), &(j1 - j0))
}

fn compressed_cayley(r: &CMat, numerator: &CMat, difference: &CMat) -> Result<CMat> {
    let m = r.ncols();
    if m == 0 {
        return Ok(CMat::zeros(0, 0));
    }
    let d = r.adjoint() * difference * r;
    let inv =
        d.try_inverse().ok_or(Error::AmbiguousKernel { singular_value: 0.0, cut: PINV_TOL, upper: 10.0 * PINV_TOL })?;
    Ok(r.adjoint() * numerator * r * inv)
}

/// `R sgn(R†DR) R†` for a normal `D`, self-adjoint or skew-adjoint, whose
/// compression to the range basis `R` is invertible.
fn sign_on_range(r: &CMat, d: &CMat, skew: bool) -> CMat {
    let c = r.adjoint() * d * r;
    let s = if skew {
        // D = −iH with H = iD Hermitian
        hermitian_eigen(&(c * crate::linalg::I)).apply(|l| Complex::new(0.0, -l.signum()))
    } else {
        hermitian_eigen(&c).apply(|l| Complex::new(l.signum(), 0.0))
    };
    r * s * r.adjoint()
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(a: &CMat) -> Result<CMat> {
    let eig = hermitian_eigen(a);
    if let Some(&v) = eig.values.first() {
        if v < -SQRT_CLAMP {
            return Err(Error::NegativeSquareRoot { eigenvalue: v });
        }
    }
    Ok(eig.apply(|v| Complex::new(libm::sqrt(v.max(0.0)), 0.0)))
}

/// Bounded transform `F` on the full space.
pub fn bounded_transform(p: &CayleyPair) -> Result<CMat> {
    let n = p.dim();
    let j0 = p.j0.matrix();
    let d = p.j1.matrix() - j0;
    let r = &p.range_basis;
    let k = &p.kernel_basis;
    let mut f = j0 * k * k.adjoint();
    if r.ncols() > 0 {
        f += (identity(n) - j0 * &d * HALF) * sign_on_range(r, &d, true);
    }
    Ok(f)
}

/// Bounded transform of a skew-adjoint matrix, `C(1 − C²)^{−1/2}`.
pub fn skew_bounded_transform(c: &CMat) -> CMat {
    let n = c.nrows();
    let eig = hermitian_eigen(&(identity(n) - c * c));
    c * eig.apply(|v| Complex::new(1.0 / libm::sqrt(v), 0.0))
}

/// Bounded transform of a self-adjoint matrix, `C(1 + C²)^{−1/2}`.
pub fn self_adjoint_bounded_transform(c: &CMat) -> CMat {
    let n = c.nrows();
    let eig = hermitian_eigen(&(identity(n) + c * c));
    c * eig.apply(|v| Complex::new(1.0 / libm::sqrt(v), 0.0))
}

/// Operator-norm residuals of the closed-form identities for one pair.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    /// `‖F² − ¼(−2 + J₁J₀ + J₀J₁)‖`
    pub f_square: f64,
    /// `‖(1 + F²) + ¼(J₀ − J₁)²‖`
    pub one_plus_f_square: f64,
    /// `‖{F, J₀}‖` on the range of `J₁ − J₀`
    pub anticommute_j0: f64,
    /// `maxⱼ ‖{F, κⱼ}‖`
    pub anticommute_kappa: f64,
    /// `‖F + F†‖`
    pub skew: f64,
    /// Reality residual of `F`.
    pub reality: f64,
    /// `‖(1 − C²)^{−1/2} − ½|J₀ − J₁|‖` on the range
    pub inverse_sqrt: f64,
    /// `‖R†FR − C(1 − C²)^{−1/2}‖`
    pub consistency: f64,
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        [
            self.f_square,
            self.one_plus_f_square,
            self.anticommute_j0,
            self.anticommute_kappa,
            self.skew,
            self.reality,
            self.inverse_sqrt,
            self.consistency,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn identity_report(p: &CayleyPair) -> Result<IdentityReport> {
    let n = p.dim();
    let (j0, j1) = (p.j0.matrix(), p.j1.matrix());
    let one = identity(n);
    let f = bounded_transform(p)?;
    let f2 = &f * &f;
    let sum = j1 * j0 + j0 * j1;
    let d = j0 - j1;
    let quarter = Complex::new(0.25, 0.0);
    let f_square = op_norm(&(&f2 - (&sum - &one * Complex::new(2.0, 0.0)) * quarter));
    let one_plus_f_square = op_norm(&(&one + &f2 + &d * &d * quarter));
    let r = &p.range_basis;
    let on_range = r * r.adjoint();
    let anticommute_j0 = op_norm(&(anticommutator(&f, j0) * &on_range));
    let anticommute_kappa = p.kappas.iter().map(|k| op_norm(&anticommutator(&f, k.matrix()))).fold(0.0, f64::max);
    let skew = skewness_residual(&f);
    let reality = p.j0.gamma().reality_residual(&f);
    let (inverse_sqrt, consistency) = if r.ncols() == 0 {
        (0.0, 0.0)
    } else {
        let c = relative_cayley(p)?;
        let m = r.ncols();
        let lhs = hermitian_eigen(&(identity(m) - &c * &c)).apply(|v| Complex::new(1.0 / libm::sqrt(v), 0.0));
        let abs = psd_sqrt(&(d.adjoint() * &d))?;
        let inverse_sqrt = op_norm(&(lhs - p.compress(&abs) * HALF));
        let consistency = op_norm(&(p.compress(&f) - skew_bounded_transform(&c)));
        (inverse_sqrt, consistency)
    };
    Ok(IdentityReport {
        f_square,
        one_plus_f_square,
        anticommute_j0,
        anticommute_kappa,
        skew,
        reality,
        inverse_sqrt,
        consistency,
    })
}

/// Result of the graded self-adjoint Cayley transform.
#[derive(Clone, Debug)]
pub struct OsuCayley {
    /// Orthonormal basis of the range of `V₁ − V₀`.
    pub range_basis: CMat,
    /// Orthonormal basis of `ker(V₁ − V₀)`.
    pub kernel_basis: CMat,
    /// `V₀(V₁+V₀)(V₁−V₀)⁻¹` on the range basis.
    pub cayley: CMat,
    /// Bounded transform on the full space, `V₀` on the kernel.
    pub bounded: CMat,
}

impl OsuCayley {
    /// `R C R†` on the full space.
    pub fn embedded_cayley(&self) -> CMat {
        &self.range_basis * &self.cayley * self.range_basis.adjoint()
    }
}

fn check_odd_self_adjoint_unitary(v: &CMat, grading: &CMat, g: &RealStructure) -> Result<()> {
    let bad = |reason, residual: f64| Error::NotOddSelfAdjointUnitary { reason, residual };
    let r = hermiticity_residual(v);
    if r > SYMMETRY_TOL {
        return Err(bad("not self-adjoint", r));
    }
    let r = unitarity_residual(v);
    if r > SYMMETRY_TOL {
        return Err(bad("not unitary", r));
    }
    let r = op_norm(&anticommutator(v, grading));
    if r > SYMMETRY_TOL {
        return Err(bad("not odd", r));
    }
    let r = g.reality_residual(v);
    if r > SYMMETRY_TOL {
        return Err(bad("not Real", r));
    }
    Ok(())
}

/// Cayley transform of odd self-adjoint Real unitaries `V₀, V₁` that
/// anticommute with the generators `gammas`.
pub fn cayley_osu(v0: &CMat, v1: &CMat, gammas: &[CMat], grading: &CMat, g: &RealStructure) -> Result<OsuCayley> {
    let n = g.dim();
    for a in [v0, v1, grading].into_iter().chain(gammas) {
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.nrows() });
        }
    }
    let gr = hermiticity_residual(grading).max(unitarity_residual(grading));
    if gr > SYMMETRY_TOL {
        return Err(Error::InvalidSymmetry { what: "grading is not a self-adjoint unitary".into(), residual: gr });
    }
    check_odd_self_adjoint_unitary(v0, grading, g)?;
    check_odd_self_adjoint_unitary(v1, grading, g)?;
    for gamma in gammas {
        check_anticommutes(gamma, v0, "generator does not anticommute with V0")?;
        check_anticommutes(gamma, v1, "generator does not anticommute with V1")?;
    }
    let (range_basis, kernel_basis, _, _) = split_difference(&(v1 - v0))?;
    let cayley = compressed_cayley(&range_basis, &(v0 * (v1 + v0)), &(v1 - v0))?;
    let d = v1 - v0;
    let mut bounded = v0 * &kernel_basis * kernel_basis.adjoint();
    if range_basis.ncols() > 0 {
        bounded += (identity(n) + v0 * &d * HALF) * sign_on_range(&range_basis, &d, false);
    }
    Ok(OsuCayley { range_basis, kernel_basis, cayley, bounded })
}
