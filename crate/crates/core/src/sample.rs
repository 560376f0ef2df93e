//! Seeded random constructions used by property tests, the acceptance suite
//! and the `verify` command.
//!
//! Everything is generic over [`rand::Rng`] so callers pick the generator;
//! the CLI and the tests use `ChaCha8Rng` for reproducibility.

use core::f64::consts::PI;

use nalgebra::Complex;
use rand::Rng;

use crate::linalg::{
    complexify, hermitian_eigen, op_norm_real, to_complex, CMat, RMat, RealSkewUnitary, RealStructure,
};
use crate::{Error, Result};

/// Standard normal deviate by Box–Muller.
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * PI * u2)
}

pub fn gaussian_matrix<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> RMat {
    RMat::from_fn(n, m, |_, _| standard_normal(rng))
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// sign of `R`'s diagonal fixed).
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMat {
    if n == 0 {
        return RMat::zeros(0, 0);
    }
    let qr = gaussian_matrix(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Haar-distributed unitary matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let z = CMat::from_fn(n, n, |_, _| Complex::new(standard_normal(rng), standard_normal(rng)));
    let (mut q, r) = z.qr().unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let modulus = libm::hypot(d.re, d.im);
        let phase = if modulus > 0.0 { d / Complex::new(modulus, 0.0) } else { Complex::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// A generic real structure `c = U Uᵀ`; its fixed space is spanned by the
/// columns of `U`.
pub fn random_real_structure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealStructure {
    let u = random_unitary(n, rng);
    RealStructure::new(&u * u.transpose(), 1e-9).expect("U Uᵀ is a real structure")
}

/// Real antisymmetric matrix with operator norm `norm`.
pub fn random_antisymmetric<R: Rng + ?Sized>(n: usize, norm: f64, rng: &mut R) -> RMat {
    let x = gaussian_matrix(n, n, rng);
    let k = &x - x.transpose();
    let s = op_norm_real(&k);
    if s == 0.0 {
        return k;
    }
    k * (norm / s)
}

/// `exp(K)` for real antisymmetric `K`, computed from the Hermitian
/// eigendecomposition of `iK`.
pub fn exp_antisymmetric(k: &RMat) -> RMat {
    let ik = to_complex(k) * Complex::new(0.0, 1.0);
    let eig = hermitian_eigen(&ik);
    // K = −i·(iK), so exp(K) = V exp(−iλ) V†
    eig.apply(|l| Complex::new(libm::cos(l), -libm::sin(l))).map(|z| z.re)
}

/// `ε ⊕ ε ⊕ …` with `ε = [[0, 1], [−1, 0]]`.
pub fn standard_complex_structure(n: usize) -> RMat {
    assert!(n.is_multiple_of(2), "complex structures need even dimension");
    let mut e = RMat::zeros(n, n);
    for b in (0..n).step_by(2) {
        e[(b, b + 1)] = 1.0;
        e[(b + 1, b)] = -1.0;
    }
    e
}

/// Promote a real antisymmetric orthogonal matrix to a Real skew unitary.
pub fn from_realified(jr: &RMat, g: &RealStructure) -> Result<RealSkewUnitary> {
    let j = complexify(jr, g)?;
    RealSkewUnitary::new(j, g.clone(), 1e-9)
}

/// Random Real skew unitary `Q (⊕ε) Qᵀ` in realified coordinates.
pub fn random_real_skew_unitary<R: Rng + ?Sized>(g: &RealStructure, rng: &mut R) -> Result<RealSkewUnitary> {
    let n = g.dim();
    if n % 2 == 1 {
        return Err(Error::InvalidInput("Real skew unitaries need even dimension".into()));
    }
    let q = random_orthogonal(n, rng);
    let jr = &q * standard_complex_structure(n) * q.transpose();
    from_realified(&jr, g)
}

/// `J₁ = e^K J₀ e^{−K}` for a random real antisymmetric `K` (in realified
/// coordinates) of operator norm `norm`.
pub fn rotated_pair<R: Rng + ?Sized>(j0: &RealSkewUnitary, norm: f64, rng: &mut R) -> Result<RealSkewUnitary> {
    let jr = j0.realify()?;
    let o = exp_antisymmetric(&random_antisymmetric(j0.dim(), norm, rng));
    let j1 = &o * jr * o.transpose();
    from_realified(&j1, j0.gamma())
}

/// A pair with `dim Ker(J₀ + J₁) = 2m` exactly.
///
/// With `J₀ = Q(⊕ε)Qᵀ`, `J₁` flips the sign of the first `m` blocks and is
/// rotated by a small random orthogonal map on the remaining blocks, which
/// keeps `J₀ + J₁` invertible there.
pub fn planted_kernel_pair<R: Rng + ?Sized>(
    g: &RealStructure,
    m: usize,
    rng: &mut R,
) -> Result<(RealSkewUnitary, RealSkewUnitary)> {
    let n = g.dim();
    if n % 2 == 1 || 2 * m > n {
        return Err(Error::InvalidInput("planted kernel does not fit".into()));
    }
    let e = standard_complex_structure(n);
    let mut e1 = e.clone();
    for b in 0..m {
        e1[(2 * b, 2 * b + 1)] = -1.0;
        e1[(2 * b + 1, 2 * b)] = 1.0;
    }
    let rest = n - 2 * m;
    if rest > 0 {
        let o = exp_antisymmetric(&random_antisymmetric(rest, 0.4, rng));
        let block = e1.view((2 * m, 2 * m), (rest, rest)).into_owned();
        let rotated = &o * block * o.transpose();
        e1.view_mut((2 * m, 2 * m), (rest, rest)).copy_from(&rotated);
    }
    let q = random_orthogonal(n, rng);
    let j0 = from_realified(&(&q * e * q.transpose()), g)?;
    let j1 = from_realified(&(&q * e1 * q.transpose()), g)?;
    Ok((j0, j1))
}

/// A Real orthogonal map on the full space, i.e. `B O B†` for random `O`.
pub fn random_real_orthogonal<R: Rng + ?Sized>(g: &RealStructure, rng: &mut R) -> Result<CMat> {
    complexify(&random_orthogonal(g.dim(), rng), g)
}
