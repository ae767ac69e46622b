use lpow_core::linalg::{ComplexMatrix, Factorization};
use lpow_core::lpo::{self, lpo_project, perceived_expectation};
use lpow_core::random;
use lpow_core::states::DensityMatrix;
use lpow_core::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn state(parties: usize, r: &mut ChaCha8Rng) -> DensityMatrix {
    let rank = r.gen_range(1..=1usize << parties);
    random::density_matrix(&Factorization::qubits(parties), rank, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lpo_is_linear(seed in any::<u64>(), ar in -2.0f64..2.0, ai in -2.0f64..2.0, b in -2.0f64..2.0, keep in 0usize..2) {
        let mut r = rng(seed);
        let rho = state(2, &mut r);
        let (x, y) = (random::hermitian(4, &mut r), random::hermitian(4, &mut r));
        let alpha = Complex64::new(ar, ai);
        let combo = &x.scale(alpha) + &y.scale_real(b);
        let lhs = lpo_project(&combo, &rho, keep).unwrap().matrix;
        let px = lpo_project(&x, &rho, keep).unwrap().matrix;
        let py = lpo_project(&y, &rho, keep).unwrap().matrix;
        let rhs = &px.scale(alpha) + &py.scale_real(b);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn povm_maps_to_povm(seed in any::<u64>(), projective in any::<bool>(), keep in 0usize..2) {
        let mut r = rng(seed);
        let rho = state(2, &mut r);
        let povm = if projective { random::projective_povm(4, &mut r) } else { random::mixed_povm(4, &mut r) };
        let mut sum = ComplexMatrix::zeros(2, 2);
        let mut total = 0.0;
        for e in &povm {
            let local = lpo_project(e, &rho, keep).unwrap();
            total += local.expectation().unwrap();
            sum = &sum + &local.matrix;
        }
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-10);
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn perceived_expectation_is_side_symmetric(seed in any::<u64>(), parties in 2usize..=3) {
        let mut r = rng(seed);
        let rho = state(parties, &mut r);
        let x = random::hermitian(1 << parties, &mut r);
        let first = perceived_expectation(&x, &rho, 0).unwrap();
        let direct = lpo::product_of_marginals(&rho).unwrap().expectation(&x).unwrap();
        prop_assert!((first - direct).abs() < 1e-12);
        for side in 1..parties {
            prop_assert!((perceived_expectation(&x, &rho, side).unwrap() - first).abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_operators_stay_hermitian(seed in any::<u64>(), parties in 2usize..=3) {
        let mut r = rng(seed);
        let rho = state(parties, &mut r);
        let x = random::hermitian(1 << parties, &mut r);
        for keep in 0..parties {
            prop_assert!(lpo_project(&x, &rho, keep).unwrap().matrix.hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn correlator_routes_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = state(2, &mut r);
        let (a, b) = (random::observable(&mut r), random::observable(&mut r));
        let parts = lpo::lpo_correlator_parts(&a, &b, &rho).unwrap();
        prop_assert!((parts.product_formula - parts.operator_form).abs() < 1e-10);
    }

    #[test]
    fn product_states_see_their_own_expectation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let one = Factorization::qubits(1);
        let (a, b) = (random::density_matrix(&one, 2, &mut r), random::density_matrix(&one, 2, &mut r));
        let rho = DensityMatrix::product(&[&a, &b]).unwrap();
        let x = random::hermitian(4, &mut r);
        let want = rho.expectation(&x).unwrap();
        prop_assert!((perceived_expectation(&x, &rho, 0).unwrap() - want).abs() < 1e-12);
    }
}
