use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use nalgebra::Complex;

use crate::linalg::CMat;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Euclidean,
    Manhattan,
}

/// Sites of a finite lattice and the block layout of its Nambu space.
///
/// The Hilbert space is ordered as (all particle components, all hole
/// components); inside each block the order is site-major then orbital. A
/// site therefore owns `orbitals` consecutive indices in each block, and
/// `internal_dim = 2 · orbitals` counts both.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeGeometry {
    sites: Vec<Vec<i64>>,
    metric: Metric,
    orbitals: usize,
    /// Per-axis period for minimal-image distances; `None` means open.
    periods: Vec<Option<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl LatticeGeometry {
    pub fn new(sites: Vec<Vec<i64>>, metric: Metric, orbitals: usize, periods: Vec<Option<i64>>) -> Result<Self> {
        if orbitals == 0 {
            return Err(Error::InvalidModel("orbitals must be positive".into()));
        }
        let d = sites.first().map_or(periods.len(), |s| s.len());
        if sites.iter().any(|s| s.len() != d) || periods.len() != d {
            return Err(Error::InvalidModel("sites and periods must share one dimension".into()));
        }
        let mut index = BTreeMap::new();
        for (i, s) in sites.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidModel("duplicate site".into()));
            }
        }
        Ok(Self { sites, metric, orbitals, periods, index })
    }

    /// Rectangular box `0..extent` per axis, optionally periodic on all axes.
    pub fn grid(extents: &[usize], metric: Metric, orbitals: usize, periodic: bool) -> Result<Self> {
        if extents.is_empty() || extents.contains(&0) {
            return Err(Error::InvalidModel("lattice extents must be positive".into()));
        }
        let mut sites: Vec<Vec<i64>> = Vec::new();
        let total: usize = extents.iter().product();
        for mut flat in 0..total {
            // first axis fastest
            let mut s = Vec::with_capacity(extents.len());
            for &e in extents {
                s.push((flat % e) as i64);
                flat /= e;
            }
            sites.push(s);
        }
        let periods = extents.iter().map(|&e| if periodic { Some(e as i64) } else { None }).collect();
        Self::new(sites, metric, orbitals, periods)
    }

    /// An open or periodic chain of `n` sites.
    pub fn chain(n: usize, orbitals: usize, periodic: bool) -> Result<Self> {
        Self::grid(&[n], Metric::Euclidean, orbitals, periodic)
    }

    pub fn sites(&self) -> &[Vec<i64>] {
        &self.sites
    }

    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn orbitals(&self) -> usize {
        self.orbitals
    }

    pub fn internal_dim(&self) -> usize {
        2 * self.orbitals
    }

    pub fn periods(&self) -> &[Option<i64>] {
        &self.periods
    }

    pub fn is_periodic(&self) -> bool {
        self.periods.iter().any(|p| p.is_some())
    }

    /// Total Hilbert dimension `|sites| · internal_dim`.
    pub fn dim(&self) -> usize {
        self.sites.len() * self.internal_dim()
    }

    /// Number of particle components, i.e. half the Hilbert dimension.
    pub fn half_dim(&self) -> usize {
        self.sites.len() * self.orbitals
    }

    pub fn site_index(&self, site: &[i64]) -> Result<usize> {
        self.index.get(site).copied().ok_or_else(|| Error::UnknownSite(site.to_vec()))
    }

    /// Hilbert-space indices belonging to the site with index `i`.
    pub fn components(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let half = self.half_dim();
        let base = i * self.orbitals;
        (0..self.orbitals).flat_map(move |a| [base + a, half + base + a])
    }

    /// Site index of a Hilbert-space component.
    pub fn site_of(&self, component: usize) -> usize {
        (component % self.half_dim()) / self.orbitals
    }

    fn axis_offset(&self, axis: usize, a: i64, b: i64) -> i64 {
        let d = (a - b).abs();
        match self.periods[axis] {
            Some(p) if p > 0 => d.rem_euclid(p).min(p - d.rem_euclid(p)),
            _ => d,
        }
    }

    /// Distance between the sites with indices `i` and `j`, using minimal
    /// images along periodic axes.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (x, y) = (&self.sites[i], &self.sites[j]);
        match self.metric {
            Metric::Manhattan => (0..x.len()).map(|a| self.axis_offset(a, x[a], y[a])).sum::<i64>() as f64,
            Metric::Euclidean => {
                let sq: i64 = (0..x.len()).map(|a| self.axis_offset(a, x[a], y[a]).pow(2)).sum();
                libm::sqrt(sq as f64)
            }
        }
    }

    /// Indices of the sites in the closed ball of radius `r` around `center`.
    pub fn ball(&self, center: usize, r: f64) -> Vec<usize> {
        (0..self.num_sites()).filter(|&j| self.distance(center, j) <= r + 1e-12).collect()
    }

    /// Diagonal 0/1 projection onto the components of the given site indices.
    pub fn projection_from_indices(&self, indices: &[usize]) -> CMat {
        let n = self.dim();
        let mut p = CMat::zeros(n, n);
        for &i in indices {
            for c in self.components(i) {
                p[(c, c)] = Complex::new(1.0, 0.0);
            }
        }
        p
    }

    /// Hilbert-space components of a set of sites, sorted.
    pub fn component_list(&self, indices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = indices.iter().flat_map(|&i| self.components(i)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Projection onto all internal components of the listed sites.
pub fn site_projection(geom: &LatticeGeometry, subset: &[Vec<i64>]) -> Result<CMat> {
    let indices: Vec<usize> = subset.iter().map(|s| geom.site_index(s)).collect::<Result<_>>()?;
    Ok(geom.projection_from_indices(&indices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{op_norm, RealStructure};
    use alloc::vec;

    #[test]
    fn full_and_empty_projections() {
        let g = LatticeGeometry::chain(4, 1, false).unwrap();
        let all: Vec<Vec<i64>> = g.sites().to_vec();
        assert_eq!(site_projection(&g, &all).unwrap(), CMat::identity(8, 8));
        assert_eq!(site_projection(&g, &[]).unwrap(), CMat::zeros(8, 8));
    }

    #[test]
    fn half_line_rank_and_reality() {
        let g = LatticeGeometry::chain(6, 2, false).unwrap();
        let half: Vec<Vec<i64>> = (0..3).map(|x| vec![x]).collect();
        let p = site_projection(&g, &half).unwrap();
        let rank: f64 = p.trace().re;
        assert_eq!(rank as usize, 3 * g.internal_dim());
        assert!(op_norm(&(&p * &p - &p)) == 0.0);
        let gamma = RealStructure::nambu(g.half_dim());
        assert!(gamma.reality_residual(&p) == 0.0);
    }

    #[test]
    fn unknown_site_is_an_error() {
        let g = LatticeGeometry::chain(3, 1, false).unwrap();
        assert!(matches!(site_projection(&g, &[vec![7]]), Err(Error::UnknownSite(_))));
    }

    #[test]
    fn periodic_distances_use_minimal_image() {
        let g = LatticeGeometry::chain(10, 1, true).unwrap();
        assert_eq!(g.distance(0, 9), 1.0);
        assert_eq!(g.distance(2, 7), 5.0);
        let open = LatticeGeometry::chain(10, 1, false).unwrap();
        assert_eq!(open.distance(0, 9), 9.0);
        let sq = LatticeGeometry::grid(&[4, 4], Metric::Manhattan, 1, true).unwrap();
        let a = sq.site_index(&[0, 0]).unwrap();
        let b = sq.site_index(&[3, 3]).unwrap();
        assert_eq!(sq.distance(a, b), 2.0);
    }

    #[test]
    fn components_are_particle_then_hole() {
        let g = LatticeGeometry::chain(3, 2, false).unwrap();
        let c: Vec<usize> = g.components(1).collect();
        assert_eq!(c, vec![2, 8, 3, 9]);
        assert!(c.iter().all(|&k| g.site_of(k) == 1));
    }
}
