use lpow_core::linalg::{self, pauli, ComplexMatrix, Factorization};
use lpow_core::random;
use lpow_core::states::{self, make_state, DensityMatrix, StateFamily};
use lpow_core::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn assert_valid(rho: &DensityMatrix) {
    let m = rho.matrix();
    assert!(m.hermiticity_defect() < 1e-12);
    assert!((m.trace().re - 1.0).abs() < 1e-12);
    assert!(m.hermitian_eigenvalues().unwrap()[0] > -1e-10);
}

fn family() -> impl Strategy<Value = StateFamily> {
    let angle = -3.2f64..3.2;
    prop_oneof![
        Just(StateFamily::Singlet),
        Just(StateFamily::Sigma),
        Just(StateFamily::Ghz),
        (0.0f64..=1.0).prop_map(|p| StateFamily::Werner { p }),
        (0.0f64..=1.0).prop_map(|p| StateFamily::Transition { p }),
        (angle.clone(), 0.0f64..=1.0).prop_map(|(theta, lambda)| StateFamily::Cg { theta, lambda }),
        (angle.clone(), angle).prop_map(|(theta, beta)| StateFamily::Classical { theta, beta }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn families_are_valid_states(f in family()) {
        assert_valid(&make_state(&f).unwrap());
    }

    #[test]
    fn local_unitary_on_b_leaves_marginal_a(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random::two_qubit_state(&mut r);
        let u = linalg::kron(&pauli::identity(), &random::unitary(2, &mut r));
        let moved = rho.conjugate_by(&u).unwrap();
        let before = states::marginal_bloch(&rho, 0).unwrap();
        let after = states::marginal_bloch(&moved, 0).unwrap();
        for k in 0..3 {
            prop_assert!((before.0[k] - after.0[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_product_marginals_have_unit_bloch_norm(seed in any::<u64>()) {
        let mut r = rng(seed);
        let one = Factorization::qubits(1);
        let (a, b) = (random::pure_state(&one, &mut r), random::pure_state(&one, &mut r));
        let rho = DensityMatrix::product(&[&a, &b]).unwrap();
        for party in 0..2 {
            prop_assert!((states::marginal_bloch(&rho, party).unwrap().norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn product_correlation_is_outer_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let one = Factorization::qubits(1);
        let (a, b) = (random::density_matrix(&one, 2, &mut r), random::density_matrix(&one, 2, &mut r));
        let rho = DensityMatrix::product(&[&a, &b]).unwrap();
        let t = states::correlation_matrix(&rho).unwrap();
        let (ra, rb) = (states::bloch_vector(&a).unwrap(), states::bloch_vector(&b).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((t.0[i][j] - ra.0[i] * rb.0[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bloch_vector_reconstructs_qubit(seed in any::<u64>()) {
        let rho = random::density_matrix(&Factorization::qubits(1), 2, &mut rng(seed));
        let r = states::bloch_vector(&rho).unwrap();
        let rebuilt = &ComplexMatrix::identity(2) + &pauli::dot(r.0);
        prop_assert!(rebuilt.scale_real(0.5).max_abs_diff(rho.matrix()) < 1e-12);
        prop_assert!(r.norm() <= 1.0 + 1e-10);
    }
}

#[test]
fn cg_lambda_sits_on_the_chsh_bound() {
    for theta in [0.1, 0.3, 0.5, std::f64::consts::FRAC_PI_4] {
        let lambda = states::cg_lambda(theta).unwrap();
        let rho = make_state(&StateFamily::Cg { theta, lambda }).unwrap();
        let m = states::horodecki(&rho).unwrap().m_value;
        assert!((m - 1.0).abs() < 1e-9, "theta {theta}: M = {m}");
    }
    assert!(states::cg_lambda(0.0).is_err());
}

#[test]
fn werner_horodecki_value() {
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let rho = make_state(&StateFamily::Werner { p }).unwrap();
        let m = states::horodecki(&rho).unwrap().m_value;
        assert!((m - p * std::f64::consts::SQRT_2).abs() < 1e-12);
    }
}

#[test]
fn classical_family_admits_lhv() {
    for theta in [0.0, 0.4, 1.1, 2.5] {
        let rho = make_state(&StateFamily::Classical { theta, beta: 0.7 }).unwrap();
        assert!(states::horodecki(&rho).unwrap().admits_lhv);
        let c = rho.matrix()[(0, 2)];
        assert!((c - Complex64::from_polar(theta.cos() * theta.sin(), -0.7)).norm() < 1e-12);
    }
}
