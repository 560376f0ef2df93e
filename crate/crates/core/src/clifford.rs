//! Clifford modules and their classification in real K-theory.
//!
//! A `Cl_{r,s}` module carries `r` self-adjoint unitaries `γ` (square `+1`)
//! and `s` skew-adjoint unitaries `ρ` (square `−1`), all pairwise
//! anticommuting. Ungraded `Cl_{0,k}` modules modulo those that extend to
//! `Cl_{0,k+1}` form the group `KO_{k+1}(ℝ)`; [`abs_class`] computes that
//! class from the irreducible-dimension table and, in the two-irrep degrees,
//! from the trace of the volume element `ω = ρ₁⋯ρ_k`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{
    anticommutator, complexify, hermitian_eigen, op_norm, op_norm_real, realify, to_complex, CMat, RMat, RealStructure,
};
use crate::sample::gaussian_matrix;
use crate::{Error, Result};

/// Largest supported `r + s`.
pub const MAX_GENERATORS: usize = 10;

/// Tolerance for the Clifford relations of module inputs.
pub const RELATION_TOL: f64 = 1e-9;

/// Real dimension of the irreducible ungraded `Cl_{0,k}` module, `k = 0..=10`.
pub const IRREP_DIMS: [usize; 11] = [1, 2, 4, 4, 8, 8, 8, 8, 16, 32, 64];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CliffordSignature {
    pub r: usize,
    pub s: usize,
}

impl CliffordSignature {
    pub fn new(r: usize, s: usize) -> Self {
        Self { r, s }
    }

    pub fn len(&self) -> usize {
        self.r + self.s
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Generators are stored with the `r` self-adjoint ones first.
#[derive(Clone, Debug)]
pub struct CliffordModule {
    pub generators: Vec<CMat>,
    pub signature: CliffordSignature,
    pub grading: Option<CMat>,
    pub real_structure: Option<RealStructure>,
    dim: usize,
}

impl CliffordModule {
    /// Validates the relations at [`RELATION_TOL`].
    pub fn new(
        dim: usize,
        generators: Vec<CMat>,
        signature: CliffordSignature,
        grading: Option<CMat>,
        real_structure: Option<RealStructure>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(dim, generators, signature, grading, real_structure)?;
        if let Some((relation, residual)) = check_relations(&m).first_failure(RELATION_TOL) {
            return Err(Error::CliffordRelations { relation, residual });
        }
        Ok(m)
    }

    /// Checks only shapes; relations are left to [`check_relations`].
    pub fn new_unchecked(
        dim: usize,
        generators: Vec<CMat>,
        signature: CliffordSignature,
        grading: Option<CMat>,
        real_structure: Option<RealStructure>,
    ) -> Result<Self> {
        if signature.len() > MAX_GENERATORS {
            return Err(Error::SignatureTooLarge { r: signature.r, s: signature.s });
        }
        if generators.len() != signature.len() {
            return Err(Error::InvalidInput("generator count does not match the signature".into()));
        }
        for g in generators.iter().chain(grading.iter()) {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.nrows() });
            }
        }
        if let Some(rs) = &real_structure {
            if rs.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: rs.dim() });
            }
        }
        Ok(Self { generators, signature, grading, real_structure, dim })
    }

    /// Ungraded `Cl_{0,k}` module from skew generators.
    pub fn ungraded(generators: Vec<CMat>, real_structure: RealStructure) -> Result<Self> {
        let k = generators.len();
        let dim = real_structure.dim();
        Self::new(dim, generators, CliffordSignature::new(0, k), None, Some(real_structure))
    }

    /// Module over plain conjugation from real matrices.
    pub fn from_real(generators: &[RMat], signature: CliffordSignature) -> Result<Self> {
        let dim = generators.first().map_or(0, |g| g.nrows());
        Self::from_real_with_dim(dim, generators, signature)
    }

    fn from_real_with_dim(dim: usize, generators: &[RMat], signature: CliffordSignature) -> Result<Self> {
        let gens = generators.iter().map(to_complex).collect();
        Self::new(dim, gens, signature, None, Some(RealStructure::conjugation(dim)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    pub fn gammas(&self) -> &[CMat] {
        &self.generators[..self.signature.r]
    }

    pub fn rhos(&self) -> &[CMat] {
        &self.generators[self.signature.r..]
    }

    /// Restriction to the invariant subspace spanned by the orthonormal
    /// columns of `basis`.
    pub fn restrict(&self, basis: &CMat) -> Result<Self> {
        let gens = self.generators.iter().map(|g| basis.adjoint() * g * basis).collect();
        let grading = self.grading.as_ref().map(|g| basis.adjoint() * g * basis);
        let rs = match &self.real_structure {
            Some(rs) => Some(rs.compress(basis, 1e-8)?),
            None => None,
        };
        Self::new(basis.ncols(), gens, self.signature, grading, rs)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.signature != other.signature {
            return Err(Error::WrongSignature {
                expected: self.signature.s,
                r: other.signature.r,
                s: other.signature.s,
            });
        }
        let gens =
            self.generators.iter().zip(&other.generators).map(|(a, b)| crate::linalg::direct_sum(a, b)).collect();
        let grading = match (&self.grading, &other.grading) {
            (Some(a), Some(b)) => Some(crate::linalg::direct_sum(a, b)),
            (None, None) => None,
            _ => return Err(Error::InvalidInput("cannot sum graded and ungraded modules".into())),
        };
        let rs = match (&self.real_structure, &other.real_structure) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        Self::new(self.dim + other.dim, gens, self.signature, grading, rs)
    }

    /// `n` copies of the module.
    pub fn copies(&self, n: usize) -> Result<Self> {
        let mut out = self.empty_like();
        for _ in 0..n {
            out = out.direct_sum(self)?;
        }
        Ok(out)
    }

    /// The zero-dimensional module with the same signature.
    pub fn empty_like(&self) -> Self {
        let gens = vec![CMat::zeros(0, 0); self.signature.len()];
        let rs = self.real_structure.as_ref().map(|_| RealStructure::conjugation(0));
        let grading = self.grading.as_ref().map(|_| CMat::zeros(0, 0));
        Self { generators: gens, signature: self.signature, grading, real_structure: rs, dim: 0 }
    }

    /// Drops the last skew generator: `Cl_{r,s}` becomes `Cl_{r,s−1}`.
    pub fn forget_last(&self) -> Self {
        let mut m = self.clone();
        if m.signature.s > 0 {
            m.generators.pop();
            m.signature.s -= 1;
        }
        m
    }

    /// Replaces the last generator by its negative. For odd `k` this swaps
    /// the two irreducible `Cl_{0,k}` modules when `k ≡ 3 mod 4`.
    pub fn flip_last(&self) -> Self {
        let mut m = self.clone();
        if let Some(g) = m.generators.last_mut() {
            *g = -g.clone();
        }
        m
    }

    /// Appends a generator and validates the enlarged module.
    pub fn extend_with(&self, generator: CMat, self_adjoint: bool) -> Result<Self> {
        let mut gens = self.generators.clone();
        let mut sig = self.signature;
        if self_adjoint {
            gens.insert(sig.r, generator);
            sig.r += 1;
        } else {
            gens.push(generator);
            sig.s += 1;
        }
        Self::new(self.dim, gens, sig, self.grading.clone(), self.real_structure.clone())
    }

    /// The volume element `ω = ρ₁⋯ρ_k` of the skew generators.
    pub fn volume_element(&self) -> CMat {
        let mut w = CMat::identity(self.dim, self.dim);
        for rho in self.rhos() {
            w *= rho;
        }
        w
    }
}

/// Largest residual of each relation class.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RelationReport {
    pub self_adjoint: f64,
    pub gamma_square: f64,
    pub skew_adjoint: f64,
    pub rho_square: f64,
    pub anticommutation: f64,
    pub grading: f64,
    pub reality: f64,
}

impl RelationReport {
    pub fn entries(&self) -> [(&'static str, f64); 7] {
        [
            ("γ = γ†", self.self_adjoint),
            ("γ² = 1", self.gamma_square),
            ("ρ = −ρ†", self.skew_adjoint),
            ("ρ² = −1", self.rho_square),
            ("generators anticommute", self.anticommutation),
            ("grading", self.grading),
            ("generators Real", self.reality),
        ]
    }

    pub fn max_residual(&self) -> f64 {
        self.entries().iter().map(|e| e.1).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }

    pub fn first_failure(&self, tol: f64) -> Option<(&'static str, f64)> {
        self.entries().into_iter().find(|e| e.1 > tol)
    }
}

pub fn check_relations(m: &CliffordModule) -> RelationReport {
    let n = m.dim();
    let id = CMat::identity(n, n);
    let mut rep = RelationReport::default();
    for g in m.gammas() {
        rep.self_adjoint = rep.self_adjoint.max(op_norm(&(g - g.adjoint())));
        rep.gamma_square = rep.gamma_square.max(op_norm(&(g * g - &id)));
    }
    for r in m.rhos() {
        rep.skew_adjoint = rep.skew_adjoint.max(op_norm(&(r + r.adjoint())));
        rep.rho_square = rep.rho_square.max(op_norm(&(r * r + &id)));
    }
    for (i, a) in m.generators.iter().enumerate() {
        for b in &m.generators[i + 1..] {
            rep.anticommutation = rep.anticommutation.max(op_norm(&anticommutator(a, b)));
        }
    }
    if let Some(gr) = &m.grading {
        rep.grading = op_norm(&(gr - gr.adjoint())).max(op_norm(&(gr * gr - &id)));
        for g in &m.generators {
            rep.grading = rep.grading.max(op_norm(&anticommutator(g, gr)));
        }
    }
    if let Some(rs) = &m.real_structure {
        for g in m.generators.iter().chain(m.grading.iter()) {
            rep.reality = rep.reality.max(rs.reality_residual(g));
        }
    }
    rep
}

fn real2(a: f64, b: f64, c: f64, d: f64) -> RMat {
    RMat::from_row_slice(2, 2, &[a, b, c, d])
}

fn pauli(c: char) -> RMat {
    match c {
        '1' => RMat::identity(2, 2),
        'x' => real2(0.0, 1.0, 1.0, 0.0),
        'z' => real2(1.0, 0.0, 0.0, -1.0),
        'e' => real2(0.0, 1.0, -1.0, 0.0),
        _ => unreachable!("unknown Pauli label"),
    }
}

fn word(w: &str) -> RMat {
    let mut out = RMat::identity(1, 1);
    for c in w.chars() {
        out = out.kronecker(&pauli(c));
    }
    out
}

// seven anticommuting antisymmetric 8×8 words; the first q give Cl_{0,q} for q = 4..7
const CL07_WORDS: [&str; 7] = ["11e", "1ex", "xez", "zez", "e1z", "exx", "ezx"];

fn product(mats: &[RMat], dim: usize) -> RMat {
    mats.iter().fold(RMat::identity(dim, dim), |acc, m| acc * m)
}

/// Real irreducible skew generators of `Cl_{0,q}`, `q ≤ 10`.
fn skew_irrep(q: usize) -> (usize, Vec<RMat>) {
    match q {
        0 => (1, Vec::new()),
        1 => (2, vec![pauli('e')]),
        2 | 3 => {
            let all = [word("e1"), word("xe"), word("ze")];
            (4, all[..q].to_vec())
        }
        4..=7 => (8, CL07_WORDS[..q].iter().map(|w| word(w)).collect()),
        8 => {
            let (_, seven) = skew_irrep(7);
            let mut g: Vec<RMat> = seven.iter().map(|r| r.kronecker(&pauli('z'))).collect();
            g.push(RMat::identity(8, 8).kronecker(&pauli('e')));
            (16, g)
        }
        _ => {
            let (d8, eight) = skew_irrep(8);
            let omega = product(&eight, d8);
            let (dj, tail) = skew_irrep(q - 8);
            let mut g: Vec<RMat> = eight.iter().map(|r| r.kronecker(&RMat::identity(dj, dj))).collect();
            g.extend(tail.iter().map(|t| omega.kronecker(t)));
            (d8 * dj, g)
        }
    }
}

/// Real irreducible generators of `Cl_{r,s}` as (self-adjoint, skew) lists.
fn real_irrep(r: usize, s: usize) -> (usize, Vec<RMat>, Vec<RMat>) {
    if r == 0 {
        let (d, rho) = skew_irrep(s);
        return (d, Vec::new(), rho);
    }
    if s == 0 {
        if r == 1 {
            return (1, vec![RMat::identity(1, 1)], Vec::new());
        }
        // Cl_{p,0} ≅ Cl_{1,p−1} via e₁ = a, e_{j+1} = b_j a
        let (d, a, b) = real_irrep(1, r - 1);
        let a1 = &a[0];
        let mut gam = vec![a1.clone()];
        gam.extend(b.iter().map(|bj| bj * a1));
        return (d, gam, Vec::new());
    }
    // Cl_{r,s} ≅ Cl_{r−1,s−1} ⊗ Cl_{1,1}
    let (d, gam, rho) = real_irrep(r - 1, s - 1);
    let z = pauli('z');
    let mut g: Vec<RMat> = gam.iter().map(|x| x.kronecker(&z)).collect();
    g.push(RMat::identity(d, d).kronecker(&pauli('x')));
    let mut h: Vec<RMat> = rho.iter().map(|x| x.kronecker(&z)).collect();
    h.push(RMat::identity(d, d).kronecker(&(-pauli('e'))));
    (2 * d, g, h)
}

/// The standard real irreducible `Cl_{r,s}` module over plain conjugation.
///
/// All generators are real signed permutation matrices, so the relations
/// hold exactly. `(1,1)` gives `γ = σ₁`, `ρ = −iσ₂`.
pub fn standard_generators(sig: CliffordSignature) -> Result<CliffordModule> {
    if sig.len() > MAX_GENERATORS {
        return Err(Error::SignatureTooLarge { r: sig.r, s: sig.s });
    }
    let (d, gam, rho) = real_irrep(sig.r, sig.s);
    let mut all = gam;
    all.extend(rho);
    CliffordModule::from_real_with_dim(d, &all, sig)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KoGroup {
    Z,
    Z2,
    Zero,
}

impl KoGroup {
    /// Bott table `KO_0..7(ℝ) = Z, Z₂, Z₂, 0, Z, 0, 0, 0`.
    pub fn of_degree(degree: usize) -> Self {
        match degree % 8 {
            0 | 4 => KoGroup::Z,
            1 | 2 => KoGroup::Z2,
            _ => KoGroup::Zero,
        }
    }
}

/// An element of `KO_degree(ℝ)`; `value` is the integer, the bit, or 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KoClass {
    degree: usize,
    value: i64,
}

impl KoClass {
    pub fn new(degree: usize, value: i64) -> Self {
        let degree = degree % 8;
        let value = match KoGroup::of_degree(degree) {
            KoGroup::Z => value,
            KoGroup::Z2 => value.rem_euclid(2),
            KoGroup::Zero => 0,
        };
        Self { degree, value }
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(degree, 0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> KoGroup {
        KoGroup::of_degree(self.degree)
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn is_trivial(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::InvalidInput("KO classes of different degree".into()));
        }
        Ok(Self::new(self.degree, self.value + other.value))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.degree, -self.value)
    }
}

impl fmt::Display for KoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group() {
            KoGroup::Z => write!(f, "{} in KO_{} = Z", self.value, self.degree),
            KoGroup::Z2 => write!(f, "{} in KO_{} = Z2", self.value, self.degree),
            KoGroup::Zero => write!(f, "0 in KO_{} = 0", self.degree),
        }
    }
}

fn validate_ungraded(m: &CliffordModule, k: usize) -> Result<RealStructure> {
    if m.signature.r != 0 || m.signature.s != k || m.is_graded() {
        return Err(Error::WrongSignature { expected: k, r: m.signature.r, s: m.signature.s });
    }
    if k >= IRREP_DIMS.len() {
        return Err(Error::UnsupportedDegree { k });
    }
    let rs = m.real_structure.clone().ok_or(Error::MissingRealStructure)?;
    if let Some((relation, residual)) = check_relations(m).first_failure(RELATION_TOL) {
        return Err(Error::CliffordRelations { relation, residual });
    }
    if !m.dim().is_multiple_of(IRREP_DIMS[k]) {
        return Err(Error::MalformedModule { dim: m.dim(), irrep_dim: IRREP_DIMS[k] });
    }
    Ok(rs)
}

/// Class of an ungraded Real `Cl_{0,k}` module in `KO_{k+1}(ℝ)`.
///
/// The degree is `k + 1`: the quotient of `Cl_{0,k}` modules by restrictions
/// of `Cl_{0,k+1}` modules is `KO_{k+1}`. In the `Z₂` degrees the class is the
/// parity of the number of irreducible summands; in the `Z` degrees it is
/// `tr_ℝ(ω) / d_k`, the difference of the multiplicities of the `ω = +1` and
/// `ω = −1` irreducibles.
pub fn abs_class(m: &CliffordModule, k: usize) -> Result<KoClass> {
    let rs = validate_ungraded(m, k)?;
    let degree = k + 1;
    let d = IRREP_DIMS[k];
    if m.dim() == 0 {
        return Ok(KoClass::zero(degree));
    }
    match KoGroup::of_degree(degree) {
        KoGroup::Zero => Ok(KoClass::zero(degree)),
        KoGroup::Z2 => Ok(KoClass::new(degree, ((m.dim() / d) % 2) as i64)),
        KoGroup::Z => {
            let omega = realify(&m.volume_element(), &rs)?;
            let tr = omega.trace();
            let v = libm::round(tr / d as f64);
            if (tr - v * d as f64).abs() > 1e-6 {
                return Err(Error::MalformedModule { dim: m.dim(), irrep_dim: d });
            }
            Ok(KoClass::new(degree, v as i64))
        }
    }
}

/// Multiplicities of the `ω = +1` and `ω = −1` irreducibles for `k ≡ 3 mod 4`,
/// counted from the eigenspaces of the volume element.
pub fn omega_multiplicities(m: &CliffordModule, k: usize) -> Result<(usize, usize)> {
    let rs = validate_ungraded(m, k)?;
    if k % 4 != 3 {
        return Err(Error::UnsupportedDegree { k });
    }
    let d = IRREP_DIMS[k];
    let omega = to_complex(&realify(&m.volume_element(), &rs)?);
    let eig = hermitian_eigen(&omega);
    let plus = eig.values.iter().filter(|&&v| v > 0.0).count();
    let minus = eig.values.len() - plus;
    if plus % d != 0 || !minus.is_multiple_of(d) {
        return Err(Error::MalformedModule { dim: m.dim(), irrep_dim: d });
    }
    Ok((plus / d, minus / d))
}

/// A Real skew unitary anticommuting with every generator, if one exists.
///
/// The anticommutation constraints are linear: the orthogonal projector onto
/// real antisymmetric `X` with `ρXρ⁻¹ = −X` for all `ρ` is the product of the
/// commuting maps `X ↦ (X + ρXρ)/2`. A random element of that space is
/// invertible exactly when an extension exists; its polar part is then the
/// extra generator. Seeds are fixed so the result is deterministic.
pub fn try_extend(m: &CliffordModule) -> Result<Option<CMat>> {
    let k = m.signature.s;
    let rs = validate_ungraded(m, k)?;
    let n = m.dim();
    if n == 0 {
        return Ok(Some(CMat::zeros(0, 0)));
    }
    let rhos: Vec<RMat> = m.rhos().iter().map(|r| realify(r, &rs)).collect::<Result<_>>()?;
    let project = |x: RMat| -> RMat {
        let mut x = (&x - x.transpose()) * 0.5;
        for r in &rhos {
            x = (&x + r * &x * r) * 0.5;
        }
        x
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c11_ff0d ^ (n as u64) << 8 ^ k as u64);
    for _ in 0..4 {
        let x = project(gaussian_matrix(n, n, &mut rng));
        let scale = op_norm_real(&x);
        if scale < 1e-9 {
            // the constraint space is zero
            return Ok(None);
        }
        let x = x / scale;
        let xtx = x.transpose() * &x;
        let eig = hermitian_eigen(&to_complex(&xtx));
        if eig.values[0] < 1e-10 {
            continue;
        }
        let inv_abs = eig.apply(|v| Complex::new(1.0 / libm::sqrt(v), 0.0)).map(|z| z.re);
        let w = &x * inv_abs;
        let w = (&w - w.transpose()) * 0.5;
        let mut residual = op_norm_real(&(&w * &w + RMat::identity(n, n)));
        for r in &rhos {
            residual = residual.max(op_norm_real(&(&w * r + r * &w)));
        }
        if residual <= 1e-6 {
            return Ok(Some(complexify(&w, &rs)?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kernel, I, ONE, ZERO};

    fn module(r: usize, s: usize) -> CliffordModule {
        standard_generators(CliffordSignature::new(r, s)).unwrap()
    }

    #[test]
    fn one_one_is_exterior_algebra_picture() {
        let m = module(1, 1);
        assert_eq!(m.dim(), 2);
        let sigma1 = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let sigma2 = CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]);
        assert_eq!(m.gammas()[0], sigma1);
        assert!(op_norm(&(&m.rhos()[0] - sigma2 * -I)) == 0.0);
    }

    #[test]
    fn zero_one_is_the_complex_unit() {
        let m = module(0, 1);
        assert_eq!(m.rhos()[0], to_complex(&real2(0.0, 1.0, -1.0, 0.0)));
    }

    #[test]
    fn all_signatures_satisfy_relations_exactly() {
        for r in 0..=MAX_GENERATORS {
            for s in 0..=(MAX_GENERATORS - r) {
                let m = module(r, s);
                assert_eq!(check_relations(&m).max_residual(), 0.0, "({r},{s})");
            }
        }
    }

    #[test]
    fn irrep_dimensions_follow_the_table() {
        for (k, &d) in IRREP_DIMS.iter().enumerate() {
            assert_eq!(module(0, k).dim(), d);
        }
    }

    #[test]
    fn zero_two_spans_the_quaternions() {
        let m = module(0, 2);
        let (a, b) = (&m.rhos()[0], &m.rhos()[1]);
        let basis = [CMat::identity(4, 4), a.clone(), b.clone(), a * b];
        let stacked = CMat::from_fn(16, 4, |i, j| basis[j][(i % 4, i / 4)]);
        let k = kernel(&stacked, 1e-7).unwrap();
        assert_eq!(4 - k.dim(), 4);
    }

    #[test]
    fn noise_is_detected() {
        let mut m = module(0, 2);
        m.generators[1][(0, 1)] += Complex::new(1e-3, 0.0);
        let rep = check_relations(&m);
        assert!(!rep.passes(1e-9));
        assert!(rep.max_residual() > 5e-4 && rep.max_residual() < 5e-3);
    }

    #[test]
    fn quaternionic_irrep_extends_to_cl03() {
        // a single Cl_{0,2} irrep is the restriction of a Cl_{0,3} irrep
        let m = module(0, 2);
        assert!(abs_class(&m, 2).unwrap().is_trivial());
        let g = try_extend(&m).unwrap().expect("ρ₁ρ₂ extends");
        let ext = m.extend_with(g, false).unwrap();
        assert!(check_relations(&ext).passes(1e-9));
    }

    #[test]
    fn complex_line_does_not_extend() {
        let m = module(0, 1);
        let c = abs_class(&m, 1).unwrap();
        assert_eq!((c.degree(), c.group(), c.value()), (2, KoGroup::Z2, 1));
        assert!(try_extend(&m).unwrap().is_none());
        let two = m.copies(2).unwrap();
        assert!(abs_class(&two, 1).unwrap().is_trivial());
        assert!(try_extend(&two).unwrap().is_some());
    }

    #[test]
    fn opposite_cl03_irreps_cancel() {
        let plus = module(0, 3);
        let minus = plus.flip_last();
        let a = abs_class(&plus, 3).unwrap();
        let b = abs_class(&minus, 3).unwrap();
        assert_eq!(a.value(), -b.value());
        assert_eq!(a.value().abs(), 1);
        let sum = plus.direct_sum(&minus).unwrap();
        assert!(abs_class(&sum, 3).unwrap().is_trivial());
        assert!(try_extend(&sum).unwrap().is_some());
        assert!(try_extend(&plus).unwrap().is_none());
        assert_eq!(omega_multiplicities(&sum, 3).unwrap(), (1, 1));
    }

    #[test]
    fn empty_module_is_trivial_and_extends() {
        let m = module(0, 1).empty_like();
        assert!(abs_class(&m, 1).unwrap().is_trivial());
        assert_eq!(try_extend(&m).unwrap().unwrap().nrows(), 0);
    }

    #[test]
    fn cl00_class_is_dimension_parity() {
        let m = CliffordModule::from_real(&[], CliffordSignature::new(0, 0)).unwrap();
        assert!(abs_class(&m, 0).unwrap().is_trivial());
        let m = CliffordModule::ungraded(Vec::new(), RealStructure::conjugation(3)).unwrap();
        assert_eq!(abs_class(&m, 0).unwrap().value(), 1);
    }

    #[test]
    fn missing_real_structure_is_rejected() {
        let mut m = module(0, 1);
        m.real_structure = None;
        assert!(matches!(abs_class(&m, 1), Err(Error::MissingRealStructure)));
    }

    #[test]
    fn ko_class_arithmetic() {
        let a = KoClass::new(2, 1);
        assert!(a.add(&a).unwrap().is_trivial());
        let z = KoClass::new(4, 3);
        assert_eq!(z.add(&KoClass::new(4, -5)).unwrap().value(), -2);
        assert_eq!(KoClass::new(11, 7).group(), KoGroup::Zero);
    }
}
