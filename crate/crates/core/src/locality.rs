//! Finite-size locality diagnostics on a lattice.
//!
//! Compactness has no meaning in finite dimensions, so every verdict here is a
//! surrogate carrying its tolerance in its name. Finite propagation means no
//! block `p_y T p_x` above the entry tolerance between sites farther apart than
//! a radius. Local compactness means that the effective rank of `T` (singular
//! values above the rank tolerance) is a small fraction of the dimension.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::{hermiticity_residual, op_norm, singular_values, CMat, RealStructure};
use crate::models::LatticeGeometry;
use crate::{Error, Result};

/// Tolerance for basis projection checks.
pub const PROJECTION_TOL: f64 = 1e-8;

/// Thresholds used by [`roe_membership_score`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoeTolerances {
    /// Blocks with operator norm at or below this count as zero.
    pub entry_tol: f64,
    /// Largest propagation accepted as finite.
    pub max_radius: f64,
    /// Singular values above this count towards the effective rank.
    pub rank_tol: f64,
    /// Largest effective rank, as a fraction of the dimension, accepted as
    /// locally compact.
    pub rank_fraction: f64,
}

impl Default for RoeTolerances {
    fn default() -> Self {
        Self { entry_tol: 1e-12, max_radius: 1.0, rank_tol: 1e-6, rank_fraction: 0.25 }
    }
}

/// A named set of sites.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub label: String,
    pub sites: Vec<usize>,
}

impl Window {
    pub fn new(label: impl Into<String>, sites: Vec<usize>) -> Self {
        Self { label: label.into(), sites }
    }
}

/// Windows `{x₀ < c}` for every cut `c = 1..extent` along the first axis.
pub fn half_line_windows(geom: &LatticeGeometry) -> Vec<Window> {
    let xs: Vec<i64> = geom.sites().iter().map(|s| s[0]).collect();
    let (lo, hi) = match (xs.iter().min(), xs.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Vec::new(),
    };
    (lo + 1..=hi)
        .map(|c| {
            let sites = (0..geom.num_sites()).filter(|&i| xs[i] < c).collect();
            Window::new(format!("x<{c}"), sites)
        })
        .collect()
}

fn check_dim(t: &CMat, geom: &LatticeGeometry) -> Result<()> {
    let n = geom.dim();
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.nrows() });
    }
    Ok(())
}

fn block_norm(t: &CMat, rows: &[usize], cols: &[usize]) -> f64 {
    let mut frob = 0.0;
    let mut max = 0.0f64;
    for &i in rows {
        for &j in cols {
            let z = t[(i, j)];
            let a = z.re * z.re + z.im * z.im;
            frob += a;
            max = max.max(a);
        }
    }
    // the operator norm lies between the largest entry and the Frobenius norm
    if frob == 0.0 || max == frob {
        return libm::sqrt(max);
    }
    let b = CMat::from_fn(rows.len(), cols.len(), |a, c| t[(rows[a], cols[c])]);
    op_norm(&b)
}

/// Largest distance `d(x, y)` with `‖p_y T p_x‖ > tol`, or 0 if there is none.
pub fn propagation(t: &CMat, geom: &LatticeGeometry, tol: f64) -> Result<f64> {
    check_dim(t, geom)?;
    let comps: Vec<Vec<usize>> = (0..geom.num_sites()).map(|i| geom.components(i).collect()).collect();
    let mut radius = 0.0f64;
    for x in 0..comps.len() {
        for y in 0..comps.len() {
            let d = geom.distance(x, y);
            if d > radius && block_norm(t, &comps[y], &comps[x]) > tol {
                radius = d;
            }
        }
    }
    Ok(radius)
}

/// Commutator `[p_W, T]` of one window.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowCommutator {
    pub label: String,
    pub norm: f64,
    /// Singular values of the commutator above the tolerance.
    pub rank: usize,
}

pub fn pseudolocality_profile(
    t: &CMat,
    geom: &LatticeGeometry,
    windows: &[Window],
    tol: f64,
) -> Result<Vec<WindowCommutator>> {
    check_dim(t, geom)?;
    windows
        .iter()
        .map(|w| {
            if let Some(&bad) = w.sites.iter().find(|&&s| s >= geom.num_sites()) {
                return Err(Error::InvalidInput(format!("window {} names site index {bad}", w.label)));
            }
            let p = geom.projection_from_indices(&w.sites);
            let c = &p * t - t * &p;
            let sv = singular_values(&c);
            let norm = sv.first().copied().unwrap_or(0.0);
            Ok(WindowCommutator { label: w.label.clone(), norm, rank: sv.iter().filter(|&&s| s > tol).count() })
        })
        .collect()
}

/// Checks `P² = P = P†` and `ΓPΓ = 1 − P`.
pub fn check_basis_projection(p: &CMat, g: &RealStructure, tol: f64) -> Result<()> {
    let n = g.dim();
    if p.nrows() != n || p.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.nrows() });
    }
    let r = hermiticity_residual(p);
    if r > tol {
        return Err(Error::InvalidProjection { reason: "not self-adjoint", residual: r });
    }
    let r = op_norm(&(p * p - p));
    if r > tol {
        return Err(Error::InvalidProjection { reason: "not idempotent", residual: r });
    }
    let r = op_norm(&(g.conjugate_op(p) + p - CMat::identity(n, n)));
    if r > tol {
        return Err(Error::InvalidProjection { reason: "not a basis projection", residual: r });
    }
    Ok(())
}

/// `R ↦ ‖Π_R (P₀ − P₁) Π_R‖_HS` for balls around `center`.
///
/// Radii must be strictly increasing; nested compressions make the curve
/// nondecreasing.
pub fn local_equivalence_curve(
    p0: &CMat,
    p1: &CMat,
    geom: &LatticeGeometry,
    center: usize,
    radii: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let g = RealStructure::nambu(geom.half_dim());
    check_basis_projection(p0, &g, PROJECTION_TOL)?;
    check_basis_projection(p1, &g, PROJECTION_TOL)?;
    if center >= geom.num_sites() {
        return Err(Error::InvalidInput(format!("center index {center} out of range")));
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) || radii.iter().any(|r| !r.is_finite() || *r < 0.0) {
        return Err(Error::InvalidInput("radii must be finite, nonnegative and strictly increasing".into()));
    }
    let d = p0 - p1;
    // add sites shell by shell so that the squared HS norm accumulates
    let mut order: Vec<usize> = (0..geom.num_sites()).collect();
    order.sort_by(|&a, &b| geom.distance(center, a).total_cmp(&geom.distance(center, b)).then(a.cmp(&b)));
    let mut inside: Vec<usize> = Vec::new();
    let mut sq = 0.0;
    let mut next = 0;
    let mut curve = Vec::with_capacity(radii.len());
    for &r in radii {
        while next < order.len() && geom.distance(center, order[next]) <= r + 1e-12 {
            let new: Vec<usize> = geom.components(order[next]).collect();
            for &i in &new {
                for &j in &inside {
                    sq += norm_sqr(d[(i, j)]) + norm_sqr(d[(j, i)]);
                }
                for &j in &new {
                    if j <= i {
                        sq += if i == j { norm_sqr(d[(i, i)]) } else { norm_sqr(d[(i, j)]) + norm_sqr(d[(j, i)]) };
                    }
                }
            }
            inside.extend(new);
            next += 1;
        }
        curve.push((r, libm::sqrt(sq)));
    }
    Ok(curve)
}

fn norm_sqr(z: crate::linalg::C64) -> f64 {
    z.re * z.re + z.im * z.im
}

/// Number of singular values above `tol`.
pub fn effective_rank(t: &CMat, tol: f64) -> usize {
    singular_values(t).iter().filter(|&&s| s > tol).count()
}

/// Named verdicts `finite_propagation@…` and `locally_compact@…`.
pub fn roe_membership_score(t: &CMat, geom: &LatticeGeometry, tols: &RoeTolerances) -> Result<BTreeMap<String, bool>> {
    let radius = propagation(t, geom, tols.entry_tol)?;
    let rank = effective_rank(t, tols.rank_tol);
    let mut out = BTreeMap::new();
    out.insert(
        format!("finite_propagation@tol={:e},R={}", tols.entry_tol, tols.max_radius),
        radius <= tols.max_radius + 1e-12,
    );
    out.insert(
        format!("locally_compact@tol={:e},frac={}", tols.rank_tol, tols.rank_fraction),
        (rank as f64) <= tols.rank_fraction * geom.dim() as f64,
    );
    Ok(out)
}

/// Aggregated diagnostics of one operator.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalityReport {
    pub propagation_radius: f64,
    pub commutator_profile: Vec<(String, f64)>,
    pub hs_curve: Vec<(f64, f64)>,
    pub verdicts: BTreeMap<String, bool>,
}

impl LocalityReport {
    /// Propagation, half-line commutators and verdicts of `t`, plus an optional
    /// precomputed equivalence curve.
    pub fn measure(t: &CMat, geom: &LatticeGeometry, hs_curve: Vec<(f64, f64)>, tols: &RoeTolerances) -> Result<Self> {
        let propagation_radius = propagation(t, geom, tols.entry_tol)?;
        let commutator_profile = pseudolocality_profile(t, geom, &half_line_windows(geom), tols.rank_tol)?
            .into_iter()
            .map(|w| (w.label, w.norm))
            .collect();
        let verdicts = roe_membership_score(t, geom, tols)?;
        Ok(Self { propagation_radius, commutator_profile, hs_curve, verdicts })
    }
}
