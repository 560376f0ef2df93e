use alloc::vec::Vec;

use nalgebra::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{pair_index_z2, pfaffian_pair_index};
use crate::linalg::{
    complexify, hermitian_eigenvalues, hermiticity_residual, pfaffian_sign_and_log, realify, scale, singular_values,
    CMat, RealSkewUnitary, RealStructure, DEFAULT_KERNEL_TOL, I, STRUCTURAL_TOL,
};
use crate::sample::random_antisymmetric;
use crate::{Error, Result};

/// Gap policy for [`z2_spectral_flow`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowPolicy {
    /// Samples with `min |eig H| ≤ gap_tol` are singular.
    pub gap_tol: f64,
    /// Refinement stops below this step of the path parameter.
    pub min_step: f64,
}

impl Default for FlowPolicy {
    fn default() -> Self {
        Self { gap_tol: 1e-8, min_step: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralFlow {
    pub bit: u8,
    pub endpoint_signs: (f64, f64),
    /// Parameters where the Pfaffian sign changes between resolved samples.
    pub flips: Vec<f64>,
    /// Parameters of samples found singular.
    pub singular_samples: Vec<f64>,
    pub min_abs_eigenvalue: f64,
}

/// `samples` equally spaced points of `(1−s)H₀ + sH₁`, endpoints included.
pub fn linear_path(h0: &CMat, h1: &CMat, samples: usize) -> Vec<CMat> {
    let last = samples.saturating_sub(1).max(1) as f64;
    (0..samples)
        .map(|i| {
            let s = i as f64 / last;
            h0 * Complex::new(1.0 - s, 0.0) + h1 * Complex::new(s, 0.0)
        })
        .collect()
}

struct Path<'a> {
    points: &'a [CMat],
    g: &'a RealStructure,
}

impl Path<'_> {
    fn at(&self, s: f64) -> CMat {
        let last = (self.points.len() - 1) as f64;
        let x = (s * last).clamp(0.0, last);
        let i = (libm::floor(x) as usize).min(self.points.len() - 2);
        let w = x - i as f64;
        &self.points[i] * Complex::new(1.0 - w, 0.0) + &self.points[i + 1] * Complex::new(w, 0.0)
    }

    /// Pfaffian sign of `realify(iH)` and the smallest `|eig H|`.
    fn sample(&self, h: &CMat, policy: &FlowPolicy) -> Result<(Option<f64>, f64)> {
        let min_abs = hermitian_eigenvalues(h).iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        if min_abs <= policy.gap_tol {
            return Ok((None, min_abs));
        }
        let (sign, _) = pfaffian_sign_and_log(&realify(&(h * I), self.g)?)?;
        Ok((Some(sign), min_abs))
    }
}

fn check_hamiltonian(h: &CMat, g: &RealStructure) -> Result<()> {
    let n = g.dim();
    if h.nrows() != n || h.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.nrows() });
    }
    let s = scale(h);
    let r = hermiticity_residual(h);
    if r > STRUCTURAL_TOL * s {
        return Err(Error::NotHermitian { residual: r });
    }
    let r = g.odd_residual(h);
    if r > STRUCTURAL_TOL * s {
        return Err(Error::NotParticleHoleSymmetric { residual: r });
    }
    Ok(())
}

/// Z₂ spectral flow along a piecewise linear path of BdG Hamiltonians.
///
/// The bit is the endpoint Pfaffian sign comparison of `realify(iHₜ)`.
/// Interior samples only serve to locate sign changes. A singular interior
/// sample is bracketed by nonsingular points at offsets halving down to
/// `min_step`; if neither side resolves, the degeneracy is reported as an
/// error.
pub fn z2_spectral_flow(path: &[CMat], g: &RealStructure, policy: &FlowPolicy) -> Result<SpectralFlow> {
    if path.is_empty() {
        return Err(Error::InvalidInput("empty path".into()));
    }
    for h in path {
        check_hamiltonian(h, g)?;
    }
    let points: Vec<CMat> = if path.len() == 1 { alloc::vec![path[0].clone(), path[0].clone()] } else { path.to_vec() };
    let p = Path { points: &points, g };
    let last = (points.len() - 1) as f64;
    let step = 1.0 / last;
    let mut resolved: Vec<(f64, f64)> = Vec::new();
    let mut singular = Vec::new();
    let mut min_abs = f64::INFINITY;
    for (i, h) in points.iter().enumerate() {
        let s = i as f64 / last;
        let (sign, m) = p.sample(h, policy)?;
        min_abs = min_abs.min(m);
        match sign {
            Some(sign) => resolved.push((s, sign)),
            None if i == 0 || i + 1 == points.len() => {
                return Err(Error::GapClosed { eigenvalue: m, gap_tol: policy.gap_tol })
            }
            None => {
                singular.push(s);
                let mut found = false;
                let mut d = step / 2.0;
                while d >= policy.min_step && !found {
                    for t in [s - d, s + d] {
                        let (sign, m) = p.sample(&p.at(t), policy)?;
                        min_abs = min_abs.min(m);
                        if let Some(sign) = sign {
                            resolved.push((t, sign));
                            found = true;
                        }
                    }
                    d /= 2.0;
                }
                if !found {
                    return Err(Error::UnresolvableDegeneracy { parameter: s });
                }
            }
        }
    }
    resolved.sort_by(|a, b| a.0.total_cmp(&b.0));
    let flips = resolved.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| 0.5 * (w[0].0 + w[1].0)).collect();
    let endpoint_signs = (resolved[0].1, resolved[resolved.len() - 1].1);
    Ok(SpectralFlow {
        bit: u8::from(endpoint_signs.0 != endpoint_signs.1),
        endpoint_signs,
        flips,
        singular_samples: singular,
        min_abs_eigenvalue: min_abs,
    })
}

/// One interpolation attempt `A(t) = (1−t)J₀ + tJ₁ + t(1−t)X`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub perturbation_norm: f64,
    pub min_singular_value: f64,
    /// Parameter where the smallest singular value was seen.
    pub at: f64,
    /// Whether the Pfaffian sign of `realify A(t)` changes along the path.
    pub sign_change: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyReport {
    pub z2: u8,
    pub pfaffian_index: u8,
    pub gap_tol: f64,
    pub trials: Vec<TrialReport>,
    /// Every attempt met a singular point: `min_singular_value < gap_tol`.
    pub obstructed: bool,
}

const GRID: usize = 33;
const BISECTIONS: usize = 60;

/// Interpolates `trials` times between `J₀` and `J₁` and records how close
/// each straight or bent path comes to a non-invertible operator.
///
/// The first attempt is the straight line; later ones add a random Real skew
/// bend so that the polar parts `A(t)|A(t)|⁻¹` form a candidate path of Real
/// skew unitaries. A change of Pfaffian sign forces a zero of `A(t)`, which is
/// then located by bisection. The harness reports; it does not prove.
pub fn homotopy_obstruction_test(
    j0: &RealSkewUnitary,
    j1: &RealSkewUnitary,
    trials: usize,
    gap_tol: f64,
) -> Result<HomotopyReport> {
    let z2 = pair_index_z2(j0, j1, DEFAULT_KERNEL_TOL)?.z2;
    let g = j0.gamma();
    let pfaffian_index = pfaffian_pair_index(j0, j1, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ j0.dim() as u64);
    let mut reports = Vec::with_capacity(trials);
    for trial in 0..trials {
        let norm = if trial == 0 { 0.0 } else { 0.5 };
        let x = if trial == 0 {
            CMat::zeros(j0.dim(), j0.dim())
        } else {
            complexify(&random_antisymmetric(j0.dim(), norm, &mut rng), g)?
        };
        let a = |t: f64| -> CMat {
            j0.matrix() * Complex::new(1.0 - t, 0.0)
                + j1.matrix() * Complex::new(t, 0.0)
                + &x * Complex::new(t * (1.0 - t), 0.0)
        };
        let sign = |t: f64| -> Result<f64> { Ok(pfaffian_sign_and_log(&realify(&a(t), g)?)?.0) };
        let smin = |t: f64| singular_values(&a(t)).last().copied().unwrap_or(0.0);
        let mut best = (f64::INFINITY, 0.0);
        let mut sign_change = false;
        let mut prev = (0.0, sign(0.0)?);
        for i in 0..GRID {
            let t = i as f64 / (GRID - 1) as f64;
            let s = smin(t);
            if s < best.0 {
                best = (s, t);
            }
            let sg = sign(t)?;
            if i > 0 && sg != prev.1 {
                sign_change = true;
                let (mut lo, mut hi) = (prev.0, t);
                let slo = prev.1;
                for _ in 0..BISECTIONS {
                    let mid = 0.5 * (lo + hi);
                    let sm = sign(mid)?;
                    if sm == 0.0 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if sm == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                for t in [lo, hi] {
                    let s = smin(t);
                    if s < best.0 {
                        best = (s, t);
                    }
                }
            }
            prev = (t, sg);
        }
        reports.push(TrialReport { perturbation_norm: norm, min_singular_value: best.0, at: best.1, sign_change });
    }
    let obstructed = !reports.is_empty() && reports.iter().all(|r| r.min_singular_value < gap_tol);
    Ok(HomotopyReport { z2, pfaffian_index, gap_tol, trials: reports, obstructed })
}
