use nalgebra::Complex;

use crate::linalg::{pfaffian, realify, CMat, RealStructure};
use crate::{Error, Result};

/// Bloch BdG matrix of the Kitaev chain at momentum `k`,
/// `[[ξ_k, 2iΔ sin k], [−2iΔ sin k, −ξ_k]]` with `ξ_k = −2t cos k − μ`.
pub fn kitaev_bloch_hamiltonian(t: f64, mu: f64, delta: f64, k: f64) -> CMat {
    let xi = -2.0 * t * libm::cos(k) - mu;
    let d = Complex::new(0.0, 2.0 * delta * libm::sin(k));
    CMat::from_row_slice(2, 2, &[Complex::new(xi, 0.0), d, -d, Complex::new(-xi, 0.0)])
}

/// Translation-invariant Z₂ label of the Kitaev chain.
///
/// At the particle-hole invariant momenta `k = 0, π` the Bloch matrix is
/// Real-odd, so `iH_k` realifies to a 2×2 antisymmetric matrix whose Pfaffian
/// is taken directly. The bit is 1 when the two Pfaffian signs differ.
pub fn kitaev_bloch_invariant(t: f64, mu: f64, delta: f64) -> Result<u8> {
    if delta == 0.0 {
        return Err(Error::CriticalParameters("pairing vanishes, the gap closes at the Fermi points"));
    }
    if (mu.abs() - 2.0 * t.abs()).abs() < 1e-12 {
        return Err(Error::CriticalParameters("|mu| = 2|t| closes the gap at k = 0 or pi"));
    }
    let g = RealStructure::nambu(1);
    let mut signs = [0.0; 2];
    for (s, k) in signs.iter_mut().zip([0.0, core::f64::consts::PI]) {
        let h = kitaev_bloch_hamiltonian(t, mu, delta, k);
        // sin π is not exactly zero; project back onto the Γ-odd part
        let h = (&h - g.conjugate_op(&h)) * Complex::new(0.5, 0.0);
        let a = realify(&(h * Complex::new(0.0, 1.0)), &g)?;
        *s = pfaffian(&a)?.signum();
    }
    Ok(u8::from(signs[0] != signs[1]))
}
