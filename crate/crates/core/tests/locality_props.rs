use nalgebra::Complex;
use proptest::prelude::*;
use qfi_core::linalg::CMat;
use qfi_core::locality::{local_equivalence_curve, propagation};
use qfi_core::models::{bdg_matrix, build_bdg, Boundary, LatticeGeometry, ModelKind, ModelSpec};
use qfi_core::sample::gaussian_matrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random complex matrix with nonzero blocks only between sites at chain
/// distance ≤ `band`.
fn banded(geom: &LatticeGeometry, band: usize, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = geom.dim();
    let re = gaussian_matrix(n, n, &mut rng);
    let im = gaussian_matrix(n, n, &mut rng);
    CMat::from_fn(n, n, |i, j| {
        if geom.distance(geom.site_of(i), geom.site_of(j)) <= band as f64 {
            Complex::new(re[(i, j)], im[(i, j)])
        } else {
            Complex::new(0.0, 0.0)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagation_is_subadditive(n in 3usize..14, bt in 0usize..3, bs in 0usize..3, seed: u64) {
        let geom = LatticeGeometry::chain(n, 1, false).unwrap();
        let t = banded(&geom, bt, seed);
        let s = banded(&geom, bs, seed ^ 7);
        let pt = propagation(&t, &geom, 0.0).unwrap();
        let ps = propagation(&s, &geom, 0.0).unwrap();
        prop_assert!(propagation(&(&t + &s), &geom, 0.0).unwrap() <= pt.max(ps));
        prop_assert!(propagation(&(&t * &s), &geom, 0.0).unwrap() <= pt + ps);
    }

    #[test]
    fn equivalence_curve_is_monotone(mu0 in -3.0f64..3.0, mu1 in -3.0f64..3.0, center in 0usize..16) {
        prop_assume!((mu0.abs() - 2.0).abs() > 0.1 && (mu1.abs() - 2.0).abs() > 0.1);
        let a = build_bdg(&ModelSpec::kitaev(16, Boundary::Periodic, 1.0, mu0, 1.0)).unwrap();
        let b = build_bdg(&ModelSpec::kitaev(16, Boundary::Periodic, 1.0, mu1, 1.0)).unwrap();
        let radii: Vec<f64> = (0..10).map(|r| r as f64).collect();
        let curve = local_equivalence_curve(&a.ground_projection(), &b.ground_projection(), a.geometry(), center, &radii).unwrap();
        prop_assert!(curve.windows(2).all(|w| w[1].1 >= w[0].1));
    }
}

#[test]
fn nearest_neighbour_models_have_unit_propagation() {
    for (kind, size) in [(ModelKind::KitaevChain, vec![12]), (ModelKind::Pwave2d, vec![5, 5])] {
        for boundary in [Boundary::Open, Boundary::Periodic] {
            let spec = ModelSpec::new(kind, &size, boundary);
            let h = bdg_matrix(&spec).unwrap();
            assert_eq!(propagation(&h, &spec.geometry().unwrap(), 1e-12).unwrap(), 1.0, "{kind} {boundary:?}");
        }
    }
}
