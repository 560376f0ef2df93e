//! Pair indices of two Real skew unitaries `J₀, J₁`.
//!
//! `Ker(J₀ + J₁)` has even complex dimension, and its half-dimension mod 2 is
//! the Z₂ pair index. The same bit is the relative sign of the Pfaffians of
//! the realified operators in a common basis. With `n` extra symmetries
//! `κⱼ`, the kernel is an ungraded Cl_{0,n+1} module generated by `J₀` and
//! the `κⱼ`, and its class lands in `KO_{n+2}(ℝ)`.

mod boundary;
mod equivariant;
mod flow;

pub use boundary::{half_space_boundary, BoundaryReport, EdgeComponent};
pub use equivariant::{equivariant_kernel_character, CharacterEntry, KernelCharacter};
pub use flow::{
    homotopy_obstruction_test, linear_path, z2_spectral_flow, FlowPolicy, HomotopyReport, SpectralFlow, TrialReport,
};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::clifford::{abs_class, CliffordModule, KoClass};
use crate::linalg::{
    anticommutator, kernel_with_scale, op_norm, pfaffian, CMat, Kernel, RealSkewUnitary, RealStructure,
};
use crate::{Error, Result};

/// Tolerance on the symmetry relations of [`SymmetryData`].
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Pfaffians below this magnitude have no reliable sign.
pub const PFAFFIAN_FLOOR: f64 = 1e-10;
/// Tolerance for generators leaving the kernel invariant.
pub const INVARIANCE_TOL: f64 = 1e-8;

/// Conditioning data recorded with every index.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexDiagnostics {
    pub kernel_tol: f64,
    /// Absolute singular-value cut used for the kernel.
    pub cut: f64,
    /// Smallest singular value of `J₀ + J₁` above the cut.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairIndexResult {
    pub kernel_dim: usize,
    pub z2: u8,
    pub ko: Option<KoClass>,
    pub pfaffian_signs: Option<(f64, f64)>,
    pub diagnostics: IndexDiagnostics,
}

/// One element of a finite symmetry group acting on the one-particle space.
///
/// A linear element acts by `W`. An antiunitary element acts by `v ↦ W v̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub label: String,
    pub matrix: CMat,
    pub antiunitary: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SymmetryData {
    pub kappas: Vec<RealSkewUnitary>,
    pub group_reps: Vec<GroupElement>,
}

impl SymmetryData {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn with_kappas(kappas: Vec<RealSkewUnitary>) -> Self {
        Self { kappas, group_reps: Vec::new() }
    }

    /// Checks the relations against the pair.
    ///
    /// `κ`'s mutually anticommute and anticommute with both `J`'s. Linear
    /// elements commute with `Γ` and both `J`'s. Antiunitary elements commute
    /// with `Γ` and anticommute with both `J`'s, since they reverse `i`.
    pub fn validate(&self, j0: &RealSkewUnitary, j1: &RealSkewUnitary) -> Result<()> {
        let n = j0.dim();
        let bad = |what: String, residual: f64| Err(Error::InvalidSymmetry { what, residual });
        for (a, k) in self.kappas.iter().enumerate() {
            if !k.compatible(j0) {
                return Err(Error::InvalidInput(format!("kappa {a} does not share the real structure")));
            }
            for (name, j) in [("J0", j0), ("J1", j1)] {
                let r = op_norm(&anticommutator(k.matrix(), j.matrix()));
                if r > SYMMETRY_TOL {
                    return bad(format!("kappa {a} does not anticommute with {name}"), r);
                }
            }
            for (b, l) in self.kappas.iter().enumerate().skip(a + 1) {
                let r = op_norm(&anticommutator(k.matrix(), l.matrix()));
                if r > SYMMETRY_TOL {
                    return bad(format!("kappas {a} and {b} do not anticommute"), r);
                }
            }
        }
        let g = j0.gamma();
        for e in &self.group_reps {
            let w = &e.matrix;
            if w.nrows() != n || w.ncols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: w.nrows() });
            }
            let r = crate::linalg::unitarity_residual(w);
            if r > SYMMETRY_TOL {
                return bad(format!("{} is not unitary", e.label), r);
            }
            // an antiunitary A = W∘conj has ΓA = c·W̄∘conj and AΓ = W·c̄∘conj
            let c = g.c_matrix();
            let (gamma_res, j_res) = if e.antiunitary {
                let gr = op_norm(&(c * w.conjugate() - w * c.conjugate()));
                let jr = [j0, j1]
                    .iter()
                    .map(|j| op_norm(&(w * j.matrix().conjugate() + j.matrix() * w)))
                    .fold(0.0, f64::max);
                (gr, jr)
            } else {
                let gr = op_norm(&(g.conjugate_op(w) - w));
                let jr = [j0, j1].iter().map(|j| op_norm(&(w * j.matrix() - j.matrix() * w))).fold(0.0, f64::max);
                (gr, jr)
            };
            if gamma_res > SYMMETRY_TOL {
                return bad(format!("{} does not commute with the real structure", e.label), gamma_res);
            }
            if j_res > SYMMETRY_TOL {
                return bad(format!("{} is not a symmetry of the pair", e.label), j_res);
            }
        }
        Ok(())
    }
}

fn check_pair(j0: &RealSkewUnitary, j1: &RealSkewUnitary) -> Result<()> {
    if !j0.compatible(j1) {
        return Err(Error::InvalidInput("pair members must share dimension and real structure".into()));
    }
    Ok(())
}

fn pair_kernel(j0: &RealSkewUnitary, j1: &RealSkewUnitary, tol: f64) -> Result<(Kernel, IndexDiagnostics)> {
    check_pair(j0, j1)?;
    // sums of unitaries have natural size 1
    let k = kernel_with_scale(&(j0.matrix() + j1.matrix()), tol, 1.0)?;
    if k.dim() % 2 == 1 {
        return Err(Error::OddKernel { dim: k.dim() });
    }
    let diagnostics = IndexDiagnostics { kernel_tol: tol, cut: k.cut, gap: k.gap };
    Ok((k, diagnostics))
}

/// Z₂ index from the dimension of `Ker(J₀ + J₁)`.
pub fn pair_index_z2(j0: &RealSkewUnitary, j1: &RealSkewUnitary, tol: f64) -> Result<PairIndexResult> {
    let (k, diagnostics) = pair_kernel(j0, j1, tol)?;
    let kernel_dim = k.dim();
    Ok(PairIndexResult { kernel_dim, z2: ((kernel_dim / 2) % 2) as u8, ko: None, pfaffian_signs: None, diagnostics })
}

/// Clifford-module class of `Ker(J₀ + J₁)` in `KO_{n+2}(ℝ)`.
pub fn pair_index_ko(
    j0: &RealSkewUnitary,
    j1: &RealSkewUnitary,
    sym: &SymmetryData,
    tol: f64,
) -> Result<PairIndexResult> {
    sym.validate(j0, j1)?;
    let (k, diagnostics) = pair_kernel(j0, j1, tol)?;
    let kernel_dim = k.dim();
    let b = &k.basis;
    let n = sym.kappas.len();
    let outside = CMat::identity(j0.dim(), j0.dim()) - b * b.adjoint();
    let mut gens = Vec::with_capacity(n + 1);
    for (name, op) in core::iter::once((String::from("J0"), j0.matrix()))
        .chain(sym.kappas.iter().enumerate().map(|(a, k)| (format!("kappa {a}"), k.matrix())))
    {
        let leak = op_norm(&(&outside * op * b));
        if leak > INVARIANCE_TOL {
            return Err(Error::KernelNotInvariant { what: name, residual: leak });
        }
        gens.push(b.adjoint() * op * b);
    }
    let rs = j0.gamma().compress(b, INVARIANCE_TOL)?;
    let module = CliffordModule::ungraded(gens, rs)?;
    let ko = abs_class(&module, n + 1)?;
    Ok(PairIndexResult {
        kernel_dim,
        z2: ((kernel_dim / 2) % 2) as u8,
        ko: Some(ko),
        pfaffian_signs: None,
        diagnostics,
    })
}

/// Signs of `Pf(realify J₀)` and `Pf(realify J₁)` in the common real basis of
/// `Γ`.
pub fn pfaffian_signs(j0: &RealSkewUnitary, j1: &RealSkewUnitary) -> Result<(f64, f64)> {
    check_pair(j0, j1)?;
    let mut out = [0.0; 2];
    for (s, j) in out.iter_mut().zip([j0, j1]) {
        let pf = pfaffian(&j.realify()?)?;
        if pf.abs() < PFAFFIAN_FLOOR {
            return Err(Error::PfaffianConditioning { value: pf.abs() });
        }
        *s = pf.signum();
    }
    Ok((out[0], out[1]))
}

/// 1 when the Pfaffian signs of the realified pair differ.
pub fn pfaffian_pair_index(j0: &RealSkewUnitary, j1: &RealSkewUnitary, g: &RealStructure) -> Result<u8> {
    if j0.gamma() != g || j1.gamma() != g {
        return Err(Error::InvalidInput("pair is not Real for the given structure".into()));
    }
    let (a, b) = pfaffian_signs(j0, j1)?;
    Ok(u8::from(a != b))
}
