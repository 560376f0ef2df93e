use alloc::vec::Vec;

use nalgebra::Complex;

use crate::linalg::{hermitian_eigen, op_norm, singular_values, CMat};
use crate::models::BdgSystem;
use crate::{Error, Result};

/// Smallest singular value of the compressed flattening for which its polar
/// phase is formed.
pub const POLAR_FLOOR: f64 = 1e-8;
/// Fraction of the bulk gap used as the default near-zero window.
pub const EDGE_FRACTION: f64 = 0.1;

/// One connected piece of the boundary of the half-space.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeComponent {
    /// Selected sites bonded to the complement.
    pub boundary_sites: Vec<usize>,
    /// Weight of the near-zero eigenspace on the sites closest to this piece.
    pub weight: f64,
    pub zero_modes: usize,
    pub parity: u8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub bulk_gap: f64,
    pub tol_edge: f64,
    /// Eigenvalues of the compressed Hamiltonian inside `(−tol_edge, tol_edge)`.
    pub near_zero: Vec<f64>,
    /// Largest minus smallest near-zero eigenvalue.
    pub splitting: f64,
    pub edges: Vec<EdgeComponent>,
    /// `‖e^{πJ̃} + 1‖` for the polar phase `J̃` of the compressed flattening,
    /// absent when the compression is singular (edge modes present).
    pub phase_residual: Option<f64>,
}

impl BoundaryReport {
    pub fn zero_modes(&self) -> usize {
        self.near_zero.len()
    }

    pub fn edge_modes_present(&self) -> bool {
        !self.near_zero.is_empty()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn submatrix(a: &CMat, idx: &[usize]) -> CMat {
    CMat::from_fn(idx.len(), idx.len(), |i, j| a[(idx[i], idx[j])])
}

fn bonded(h: &CMat, a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|&i| b.iter().any(|&j| h[(i, j)].norm_sqr() > 1e-24))
}

/// Compresses a periodic system to the sites selected by `cut` and counts the
/// near-zero modes at each piece of the resulting boundary.
///
/// `tol_edge` defaults to [`EDGE_FRACTION`] times the bulk gap. Boundary
/// pieces are the connected components, under the bonds of `H`, of the
/// selected sites bonded to the complement. Each selected site belongs to the
/// nearest piece, and a piece carries the rounded weight of the near-zero
/// eigenspace on its sites.
pub fn half_space_boundary(
    sys: &BdgSystem,
    cut: impl Fn(&[i64]) -> bool,
    tol_edge: Option<f64>,
) -> Result<BoundaryReport> {
    let geom = sys.geometry();
    if !geom.is_periodic() {
        return Err(Error::InvalidInput("half-space compression needs a periodic system".into()));
    }
    let selected: Vec<usize> = (0..geom.num_sites()).filter(|&i| cut(&geom.sites()[i])).collect();
    if selected.is_empty() || selected.len() == geom.num_sites() {
        return Err(Error::InvalidInput("cut must select a proper nonempty part of the lattice".into()));
    }
    let outside: Vec<usize> = (0..geom.num_sites()).filter(|&i| !cut(&geom.sites()[i])).collect();
    let comps: Vec<Vec<usize>> = (0..geom.num_sites()).map(|i| geom.components(i).collect()).collect();
    let h = sys.h();
    let outside_comps: Vec<usize> = outside.iter().flat_map(|&i| comps[i].iter().copied()).collect();
    let boundary: Vec<usize> = selected.iter().copied().filter(|&s| bonded(h, &comps[s], &outside_comps)).collect();

    let mut parent: Vec<usize> = (0..boundary.len()).collect();
    for a in 0..boundary.len() {
        for b in a + 1..boundary.len() {
            if bonded(h, &comps[boundary[a]], &comps[boundary[b]]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for (a, &site) in boundary.iter().enumerate() {
        let r = find(&mut parent, a);
        match roots.iter().position(|&x| x == r) {
            Some(p) => pieces[p].push(site),
            None => {
                roots.push(r);
                pieces.push(alloc::vec![site]);
            }
        }
    }

    let idx = geom.component_list(&selected);
    let hc = submatrix(h, &idx);
    let eig = hermitian_eigen(&hc);
    let bulk_gap = sys.gap();
    let tol_edge = tol_edge.unwrap_or(EDGE_FRACTION * bulk_gap);
    let near: Vec<usize> = (0..eig.values.len()).filter(|&k| eig.values[k].abs() < tol_edge).collect();
    let near_zero: Vec<f64> = near.iter().map(|&k| eig.values[k]).collect();
    let splitting = match (near_zero.first(), near_zero.last()) {
        (Some(a), Some(b)) => b - a,
        _ => 0.0,
    };

    // position of each selected component inside the compressed space
    let mut weights = alloc::vec![0.0; pieces.len()];
    for (row, &c) in idx.iter().enumerate() {
        let site = geom.site_of(c);
        let w: f64 = near.iter().map(|&k| eig.vectors[(row, k)].norm_sqr()).sum();
        if w == 0.0 || pieces.is_empty() {
            continue;
        }
        let nearest = (0..pieces.len())
            .min_by(|&a, &b| {
                let da = pieces[a].iter().map(|&s| geom.distance(site, s)).fold(f64::INFINITY, f64::min);
                let db = pieces[b].iter().map(|&s| geom.distance(site, s)).fold(f64::INFINITY, f64::min);
                da.total_cmp(&db)
            })
            .unwrap_or(0);
        weights[nearest] += w;
    }
    let edges = pieces
        .into_iter()
        .zip(weights)
        .map(|(boundary_sites, weight)| {
            let zero_modes = libm::round(weight) as usize;
            EdgeComponent { boundary_sites, weight, zero_modes, parity: (zero_modes % 2) as u8 }
        })
        .collect();

    let jc = submatrix(sys.j().matrix(), &idx);
    let smin = singular_values(&jc).last().copied().unwrap_or(0.0);
    let phase_residual = if smin < POLAR_FLOOR {
        None
    } else {
        let n = jc.nrows();
        let inv_abs = hermitian_eigen(&(-(&jc * &jc))).apply(|v| Complex::new(1.0 / libm::sqrt(v), 0.0));
        let phase = &jc * inv_abs;
        // e^{πJ̃} = V e^{−iπλ} V† with iJ̃ = V λ V†
        let e = hermitian_eigen(&(&phase * Complex::new(0.0, 1.0)))
            .apply(|l| Complex::new(libm::cos(core::f64::consts::PI * l), -libm::sin(core::f64::consts::PI * l)));
        Some(op_norm(&(e + CMat::identity(n, n))))
    };

    Ok(BoundaryReport { bulk_gap, tol_edge, near_zero, splitting, edges, phase_residual })
}
