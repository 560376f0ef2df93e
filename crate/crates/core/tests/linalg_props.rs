use nalgebra::Complex;
use proptest::prelude::*;
use qfi_core::linalg::{complexify, flatten, kernel, op_norm, pfaffian, realify, CMat, RMat, RealStructure};
use qfi_core::sample::{gaussian_matrix, random_orthogonal, random_real_structure, random_unitary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn antisym(n: usize, rng: &mut ChaCha8Rng) -> RMat {
    let g = gaussian_matrix(n, n, rng);
    &g - g.transpose()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pfaffian_squares_to_determinant(seed: u64, half in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = antisym(2 * half, &mut rng);
        let pf = pfaffian(&a).unwrap();
        let det = a.clone().determinant();
        prop_assert!((pf * pf - det).abs() <= 1e-9 * det.abs(), "{pf} {det}");
    }

    #[test]
    fn odd_pfaffian_vanishes(seed: u64, half in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(pfaffian(&antisym(2 * half + 1, &mut rng)).unwrap(), 0.0);
    }

    #[test]
    fn pfaffian_transforms_with_determinant(seed: u64, half in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * half;
        let a = antisym(n, &mut rng);
        let q = random_orthogonal(n, &mut rng);
        let lhs = pfaffian(&(q.transpose() * &a * &q)).unwrap();
        let rhs = q.clone().determinant() * pfaffian(&a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * rhs.abs().max(1.0));
    }

    #[test]
    fn realify_round_trips(seed: u64, n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_real_structure(n, &mut rng);
        let r = gaussian_matrix(n, n, &mut rng);
        let a = complexify(&r, &g).unwrap();
        prop_assert!(g.reality_residual(&a) <= 1e-10);
        let back = realify(&a, &g).unwrap();
        prop_assert!((back - r).amax() <= 1e-10);
    }

    #[test]
    fn flatten_is_a_real_skew_unitary(seed: u64, half in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * half;
        let g = RealStructure::nambu(half);
        // iH is Real and antisymmetric in realified coordinates
        let h = complexify(&antisym(n, &mut rng), &g).unwrap() * Complex::new(0.0, -1.0);
        let j = flatten(&h, &g, 1e-10).unwrap();
        let m = j.matrix();
        prop_assert!(op_norm(&(m * m + CMat::identity(n, n))) <= 1e-9);
        prop_assert!(op_norm(&(m * &h - &h * m)) <= 1e-8 * op_norm(&h).max(1.0));
    }

    #[test]
    fn kernel_dimension_of_unitary_rank_deficient(seed: u64, n in 2usize..10, drop in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(n, &mut rng);
        let mut d = CMat::identity(n, n);
        for i in 0..drop.min(n) {
            d[(i, i)] = Complex::new(0.0, 0.0);
        }
        let a = &u * d * u.adjoint();
        let k = kernel(&a, 1e-7).unwrap();
        prop_assert_eq!(k.dim(), drop.min(n));
        prop_assert!(op_norm(&(&a * &k.basis)) <= 1e-10);
    }
}
