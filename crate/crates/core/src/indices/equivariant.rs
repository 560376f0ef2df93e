use alloc::string::String;
use alloc::vec::Vec;

use super::{pair_kernel, SymmetryData, INVARIANCE_TOL};
use crate::linalg::{op_norm, CMat, RealSkewUnitary};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterEntry {
    pub label: String,
    pub antiunitary: bool,
    /// Trace over the real form of `Ker(J₀ + J₁)`.
    pub trace: f64,
}

/// Character row of the symmetry group on `Ker(J₀ + J₁)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelCharacter {
    pub kernel_dim: usize,
    pub entries: Vec<CharacterEntry>,
    /// `J₀` preserves the kernel, which is then a Cl_{0,1} module.
    pub cl01_structure: bool,
}

/// Traces of the group elements restricted to the kernel.
///
/// Traces are taken over the real form `{v ∈ Ker : Γv = v}`, where both
/// linear and antiunitary elements act real-linearly. For a linear Real `W`
/// this equals the complex trace. An antiunitary element anticommutes with
/// `J₀`, which is invertible on the kernel, so its trace vanishes; it is still
/// reported, in its own entry.
pub fn equivariant_kernel_character(
    j0: &RealSkewUnitary,
    j1: &RealSkewUnitary,
    sym: &SymmetryData,
    tol: f64,
) -> Result<KernelCharacter> {
    sym.validate(j0, j1)?;
    let (k, _) = pair_kernel(j0, j1, tol)?;
    let b = &k.basis;
    let n = j0.dim();
    let outside = CMat::identity(n, n) - b * b.adjoint();
    let cl01_structure = op_norm(&(&outside * j0.matrix() * b)) <= INVARIANCE_TOL;
    let real_form =
        if k.dim() == 0 { CMat::zeros(n, 0) } else { b * j0.gamma().compress(b, INVARIANCE_TOL)?.real_basis()? };
    let mut entries = Vec::with_capacity(sym.group_reps.len());
    for e in &sym.group_reps {
        let image = if e.antiunitary { &e.matrix * b.conjugate() } else { &e.matrix * b };
        let leak = op_norm(&(&outside * &image));
        if leak > INVARIANCE_TOL {
            return Err(Error::KernelNotInvariant { what: e.label.clone(), residual: leak });
        }
        let acted = if e.antiunitary { &e.matrix * real_form.conjugate() } else { &e.matrix * &real_form };
        let trace = (0..real_form.ncols()).map(|a| real_form.column(a).dotc(&acted.column(a)).re).sum();
        entries.push(CharacterEntry { label: e.label.clone(), antiunitary: e.antiunitary, trace });
    }
    Ok(KernelCharacter { kernel_dim: k.dim(), entries, cl01_structure })
}
