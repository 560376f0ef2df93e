//! Lattice geometries and a small zoo of gapped BdG Hamiltonians.
//!
//! Every model is assembled in the generic form `[[h, δ], [δ†, −h̄]]` with
//! `δᵀ = −δ`, so `ΓHΓ = −H` holds for `Γ = conj ∘ (1 ⊗ σ₁)`. Parameters are
//! dimensionless, in units of the hopping `t`.

mod bloch;
mod geometry;

pub use bloch::{kitaev_bloch_hamiltonian, kitaev_bloch_invariant};
pub use geometry::{site_projection, LatticeGeometry, Metric};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use nalgebra::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{flatten_with_eigen, CMat, RealSkewUnitary, RealStructure, C64};
use crate::sample::standard_normal;
use crate::{Error, Result};

/// How many seeds `random_local` tries before giving up.
pub const RANDOM_LOCAL_RETRIES: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    KitaevChain,
    Pwave2d,
    SwaveTrivial,
    AtomicTrivial,
    RandomLocal,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] =
        [Self::KitaevChain, Self::Pwave2d, Self::SwaveTrivial, Self::AtomicTrivial, Self::RandomLocal];

    pub fn name(&self) -> &'static str {
        match self {
            Self::KitaevChain => "kitaev_chain",
            Self::Pwave2d => "pwave_2d",
            Self::SwaveTrivial => "swave_trivial",
            Self::AtomicTrivial => "atomic_trivial",
            Self::RandomLocal => "random_local",
        }
    }

    /// Accepted parameters with their defaults.
    pub fn params(&self) -> &'static [(&'static str, f64)] {
        match self {
            Self::KitaevChain | Self::SwaveTrivial => &[("t", 1.0), ("mu", 0.0), ("delta", 1.0)],
            Self::Pwave2d => &[("t", 1.0), ("mu", 1.0), ("delta", 1.0)],
            Self::AtomicTrivial => &[("orbitals", 1.0)],
            Self::RandomLocal => &[
                ("mass", 1.0),
                ("hopping", 0.3),
                ("pairing", 0.3),
                ("bandwidth", 1.0),
                ("seed", 0.0),
                ("gap_min", 0.05),
                ("orbitals", 1.0),
            ],
        }
    }

    /// Number of lattice axes the model expects; `None` accepts any.
    pub fn spatial_dim(&self) -> Option<usize> {
        match self {
            Self::KitaevChain | Self::SwaveTrivial | Self::RandomLocal => Some(1),
            Self::Pwave2d => Some(2),
            Self::AtomicTrivial => None,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidModel(format!("unknown model kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
    /// Periodic with a −1 twist on every wrap-around bond.
    Antiperiodic,
}

impl Boundary {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Open => "open",
            Self::Periodic => "periodic",
            Self::Antiperiodic => "antiperiodic",
        }
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Self::Open),
            "periodic" => Ok(Self::Periodic),
            "antiperiodic" => Ok(Self::Antiperiodic),
            _ => Err(Error::InvalidModel(format!("unknown boundary `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub params: BTreeMap<String, f64>,
    pub size: Vec<usize>,
    pub boundary: Boundary,
    /// Eigenvalues with `|λ| ≤ gap_tol` count as a closed gap.
    pub gap_tol: f64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, size: &[usize], boundary: Boundary) -> Self {
        Self { kind, params: BTreeMap::new(), size: size.to_vec(), boundary, gap_tol: 1e-8 }
    }

    pub fn kitaev(n: usize, boundary: Boundary, t: f64, mu: f64, delta: f64) -> Self {
        Self::new(ModelKind::KitaevChain, &[n], boundary).with("t", t).with("mu", mu).with("delta", delta)
    }

    pub fn atomic(size: &[usize], boundary: Boundary) -> Self {
        Self::new(ModelKind::AtomicTrivial, size, boundary)
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// Parameter value or its documented default.
    pub fn param(&self, name: &str) -> Result<f64> {
        if let Some(&v) = self.params.get(name) {
            return Ok(v);
        }
        self.kind
            .params()
            .iter()
            .find(|p| p.0 == name)
            .map(|p| p.1)
            .ok_or_else(|| Error::InvalidModel(format!("{} has no parameter `{name}`", self.kind)))
    }

    pub fn validate(&self) -> Result<()> {
        for name in self.params.keys() {
            if !self.kind.params().iter().any(|p| p.0 == name) {
                return Err(Error::InvalidModel(format!("{} has no parameter `{name}`", self.kind)));
            }
        }
        if let Some(d) = self.kind.spatial_dim() {
            if self.size.len() != d {
                return Err(Error::InvalidModel(format!("{} needs {d} lattice extents", self.kind)));
            }
        }
        if self.size.is_empty() || self.size.contains(&0) {
            return Err(Error::InvalidModel("lattice extents must be positive".into()));
        }
        if self.gap_tol.is_nan() || self.gap_tol < 0.0 {
            return Err(Error::InvalidModel("gap_tol must be non-negative".into()));
        }
        Ok(())
    }

    fn orbitals(&self) -> Result<usize> {
        let o = match self.kind {
            ModelKind::SwaveTrivial => 2.0,
            ModelKind::AtomicTrivial | ModelKind::RandomLocal => self.param("orbitals")?,
            _ => 1.0,
        };
        if o < 1.0 || o != libm::trunc(o) {
            return Err(Error::InvalidModel("orbitals must be a positive integer".into()));
        }
        Ok(o as usize)
    }

    pub fn geometry(&self) -> Result<LatticeGeometry> {
        let metric = if self.kind == ModelKind::Pwave2d { Metric::Manhattan } else { Metric::Euclidean };
        LatticeGeometry::grid(&self.size, metric, self.orbitals()?, self.boundary != Boundary::Open)
    }
}

/// A gapped BdG Hamiltonian with its flattening.
#[derive(Clone, Debug)]
pub struct BdgSystem {
    h: CMat,
    gamma: RealStructure,
    geometry: LatticeGeometry,
    j: RealSkewUnitary,
    eigenvalues: Vec<f64>,
    gap: f64,
}

impl BdgSystem {
    /// Validates Hermiticity and particle-hole symmetry, then flattens.
    pub fn from_hamiltonian(h: CMat, geometry: LatticeGeometry, gap_tol: f64) -> Result<Self> {
        if h.nrows() != geometry.dim() {
            return Err(Error::DimensionMismatch { expected: geometry.dim(), found: h.nrows() });
        }
        let gamma = RealStructure::nambu(geometry.half_dim());
        let (j, eig) = flatten_with_eigen(&h, &gamma, gap_tol)?;
        let gap = eig.min_abs();
        Ok(Self { h, gamma, geometry, j, eigenvalues: eig.values, gap })
    }

    pub fn h(&self) -> &CMat {
        &self.h
    }

    pub fn gamma(&self) -> &RealStructure {
        &self.gamma
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn j(&self) -> &RealSkewUnitary {
        &self.j
    }

    /// Ascending eigenvalues of `H`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    /// The ground-state basis projection `χ_(0,∞)(H)`.
    pub fn ground_projection(&self) -> CMat {
        self.j.basis_projection()
    }
}

/// Site-level shift `S e_x = e_{x + ê_axis}` with the boundary condition.
fn shift(geom: &LatticeGeometry, extents: &[usize], axis: usize, boundary: Boundary) -> Result<CMat> {
    let n = geom.num_sites();
    let mut s = CMat::zeros(n, n);
    for (i, site) in geom.sites().iter().enumerate() {
        let mut target = site.clone();
        target[axis] += 1;
        let mut phase = 1.0;
        if target[axis] == extents[axis] as i64 {
            match boundary {
                Boundary::Open => continue,
                Boundary::Periodic => {}
                Boundary::Antiperiodic => phase = -1.0,
            }
            target[axis] = 0;
        }
        let j = geom.site_index(&target)?;
        s[(j, i)] += Complex::new(phase, 0.0);
    }
    Ok(s)
}

fn assemble(h: &CMat, delta: &CMat) -> CMat {
    let m = h.nrows();
    let mut big = CMat::zeros(2 * m, 2 * m);
    big.view_mut((0, 0), (m, m)).copy_from(h);
    big.view_mut((0, m), (m, m)).copy_from(delta);
    big.view_mut((m, 0), (m, m)).copy_from(&delta.adjoint());
    big.view_mut((m, m), (m, m)).copy_from(&(-h.conjugate()));
    (&big + big.adjoint()) * Complex::new(0.5, 0.0)
}

fn real(x: f64) -> C64 {
    Complex::new(x, 0.0)
}

/// Builds the Hamiltonian, checks the gap and flattens it.
pub fn build_bdg(spec: &ModelSpec) -> Result<BdgSystem> {
    spec.validate()?;
    if spec.kind == ModelKind::RandomLocal {
        return build_random_local(spec);
    }
    let geom = spec.geometry()?;
    let h = hamiltonian(spec, &geom)?;
    BdgSystem::from_hamiltonian(h, geom, spec.gap_tol)
}

/// The BdG matrix of a spec without the gap check.
pub fn bdg_matrix(spec: &ModelSpec) -> Result<CMat> {
    spec.validate()?;
    let geom = spec.geometry()?;
    if spec.kind == ModelKind::RandomLocal {
        let seed = spec.param("seed")? as u64;
        return random_local_matrix(spec, &geom, seed);
    }
    hamiltonian(spec, &geom)
}

fn hamiltonian(spec: &ModelSpec, geom: &LatticeGeometry) -> Result<CMat> {
    let n = geom.num_sites();
    let id = CMat::identity(n, n);
    let ext = &spec.size;
    let b = spec.boundary;
    Ok(match spec.kind {
        ModelKind::KitaevChain => {
            let (t, mu, d) = (spec.param("t")?, spec.param("mu")?, spec.param("delta")?);
            let s = shift(geom, ext, 0, b)?;
            let h = (&s + s.transpose()) * real(-t) - &id * real(mu);
            let delta = (&s - s.transpose()) * real(d);
            assemble(&h, &delta)
        }
        ModelKind::Pwave2d => {
            let (t, mu, d) = (spec.param("t")?, spec.param("mu")?, spec.param("delta")?);
            let sx = shift(geom, ext, 0, b)?;
            let sy = shift(geom, ext, 1, b)?;
            let h = (&sx + sx.transpose() + &sy + sy.transpose()) * real(-t) - &id * real(mu);
            let delta = ((&sx - sx.transpose()) + (&sy - sy.transpose()) * Complex::new(0.0, 1.0)) * real(d);
            assemble(&h, &delta)
        }
        ModelKind::SwaveTrivial => {
            let (t, mu, d) = (spec.param("t")?, spec.param("mu")?, spec.param("delta")?);
            let s = shift(geom, ext, 0, b)?;
            let h = ((&s + s.transpose()) * real(-t) - &id * real(mu)).kronecker(&CMat::identity(2, 2));
            let isy = CMat::from_row_slice(2, 2, &[real(0.0), real(1.0), real(-1.0), real(0.0)]);
            let delta = id.kronecker(&isy) * real(d);
            assemble(&h, &delta)
        }
        ModelKind::AtomicTrivial => {
            let m = geom.half_dim();
            assemble(&CMat::identity(m, m), &CMat::zeros(m, m))
        }
        ModelKind::RandomLocal => unreachable!("handled by build_random_local"),
    })
}

fn random_local_matrix(spec: &ModelSpec, geom: &LatticeGeometry, seed: u64) -> Result<CMat> {
    let mass = spec.param("mass")?;
    let hop = spec.param("hopping")?;
    let pair = spec.param("pairing")?;
    let bw = spec.param("bandwidth")?;
    let o = geom.orbitals();
    let m = geom.half_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = CMat::identity(m, m) * real(mass);
    let mut delta = CMat::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            if geom.distance(a / o, b / o) > bw + 1e-12 {
                continue;
            }
            let z = Complex::new(standard_normal(&mut rng), standard_normal(&mut rng)) * hop;
            if a == b {
                h[(a, a)] += real(z.re);
            } else {
                h[(a, b)] += z;
                h[(b, a)] += z.conj();
                let w = Complex::new(standard_normal(&mut rng), standard_normal(&mut rng)) * pair;
                delta[(a, b)] += w;
                delta[(b, a)] -= w;
            }
        }
    }
    Ok(assemble(&h, &delta))
}

fn build_random_local(spec: &ModelSpec) -> Result<BdgSystem> {
    let geom = spec.geometry()?;
    let seed = spec.param("seed")?;
    let gap_min = spec.param("gap_min")?;
    if seed < 0.0 || seed != libm::trunc(seed) {
        return Err(Error::InvalidModel("seed must be a non-negative integer".into()));
    }
    let mut last = 0.0;
    for attempt in 0..RANDOM_LOCAL_RETRIES {
        let h = random_local_matrix(spec, &geom, seed as u64 + attempt)?;
        match BdgSystem::from_hamiltonian(h, geom.clone(), spec.gap_tol.max(gap_min)) {
            Ok(sys) => return Ok(sys),
            Err(Error::GapClosed { eigenvalue, .. }) => last = eigenvalue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GapClosed { eigenvalue: last, gap_tol: gap_min })
}

/// Linear part `t` of the time reversal `T = conj ∘ t` with `T² = −1`,
/// acting as `iσ_y` on each spin pair of orbitals in both Nambu blocks.
pub fn time_reversal(geom: &LatticeGeometry) -> Result<CMat> {
    let o = geom.orbitals();
    if !o.is_multiple_of(2) {
        return Err(Error::InvalidModel("time reversal needs spin-1/2 orbital pairs".into()));
    }
    let n = geom.dim();
    let mut t = CMat::zeros(n, n);
    for a in (0..n).step_by(2) {
        t[(a, a + 1)] = real(1.0);
        t[(a + 1, a)] = real(-1.0);
    }
    Ok(t)
}

/// The chiral symmetry `κ = ΓT` of a time-reversal invariant spinful model:
/// a Real skew unitary anticommuting with every `H` that commutes with `T`.
pub fn kramers_kappa(geom: &LatticeGeometry) -> Result<RealSkewUnitary> {
    let t = time_reversal(geom)?;
    let gamma = RealStructure::nambu(geom.half_dim());
    let kappa = gamma.c_matrix() * t.conjugate();
    RealSkewUnitary::new(kappa, gamma, 1e-12)
}
