use proptest::prelude::*;
use riesz_core::domain::{summability_verdict, Verdict};
use riesz_core::linalg::{self, hermitian_eig, inverse, operator_norm, sqrt_psd};
use riesz_core::{random, Check, Complex64, ComplexMatrix, RieszBasisPair, SequenceSpec, VerificationReport};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn random_matrix(seed: u64, dim: usize) -> ComplexMatrix {
    let mut rng = random::rng(seed);
    ComplexMatrix::from_fn(dim, |_, _| random::centered(&mut rng))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn sqrt_reconstructs_positive_matrices(seed in any::<u64>(), dim in 1usize..=32, shift in 0.0f64..2.0) {
        let a = random_matrix(seed, dim);
        let m = &(&a * &a.adjoint()) + &ComplexMatrix::identity(dim).scale(Complex64::new(shift, 0.0));
        let s = sqrt_psd(&m, 1e-10).unwrap();
        let scale = m.frobenius_norm();
        prop_assert!((&s * &s).max_abs_diff(&m) <= 1e-11 * scale);
        prop_assert_eq!(s.hermitian_defect(), 0.0);
        let eig = hermitian_eig(&s, 1e-10).unwrap();
        prop_assert!(eig.eigenvalues[0] >= -1e-12 * scale);
    }

    #[test]
    fn spectrum_is_unitarily_invariant(seed in any::<u64>(), dim in 1usize..=16) {
        let mut rng = random::rng(seed);
        let h = random::random_hermitian(&mut rng, dim);
        let u = random::random_unitary(&mut rng, dim);
        let conj = (&(&u * &h) * &u.adjoint()).hermitian_part();
        let a = hermitian_eig(&h, 1e-10).unwrap();
        let b = hermitian_eig(&conj, 1e-10).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((x - y).abs() <= 1e-12 * h.frobenius_norm().max(1.0));
        }
        prop_assert!(a.reconstruct().max_abs_diff(&h) <= 1e-13 * h.frobenius_norm().max(1.0));
        let id = ComplexMatrix::identity(dim);
        prop_assert!((&u * &u.adjoint()).max_abs_diff(&id) <= 1e-13);
    }

    #[test]
    fn double_inverse_is_identity(seed in any::<u64>(), dim in 1usize..=24) {
        let t = random::random_generator(dim, seed);
        let back = inverse(&inverse(&t, 1e-12).unwrap(), 1e-12).unwrap();
        prop_assert!(back.max_abs_diff(&t) <= 1e-11);
    }

    #[test]
    fn operator_norm_is_submultiplicative(a in any::<u64>(), b in any::<u64>(), dim in 1usize..=12) {
        let (x, y) = (random_matrix(a, dim), random_matrix(b, dim));
        let lhs = operator_norm(&(&x * &y)).unwrap();
        let rhs = operator_norm(&x).unwrap() * operator_norm(&y).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        prop_assert!(operator_norm(&x).unwrap() <= x.frobenius_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn random_generators_give_biorthogonal_bases(seed in any::<u64>(), dim in 2usize..=16) {
        let pair = RieszBasisPair::from_generator(random::random_generator(dim, seed), 1e-10).unwrap();
        prop_assert!(pair.biorthogonality_residual() <= 1e-12);
        prop_assert!(pair.frame_lower() > 0.0 && pair.frame_lower() <= pair.frame_upper());
        let mut rng = random::rng(seed.wrapping_add(1));
        for f in random::random_vectors(&mut rng, dim, 3) {
            prop_assert!(pair.reconstruction_residual(&f).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn report_summary_matches_checks(residuals in proptest::collection::vec(0.0f64..2.0, 0..20)) {
        let mut report = VerificationReport::new("prop");
        for (i, r) in residuals.iter().enumerate() {
            report.push(Check::residual(&format!("c{i}"), *r, 1.0, ""));
        }
        let passed = residuals.iter().filter(|&&r| r <= 1.0).count();
        prop_assert_eq!(report.summary.total, residuals.len());
        prop_assert_eq!(report.summary.passed, passed);
        prop_assert_eq!(report.summary.failed, residuals.len() - passed);
    }
}

fn weight_spec() -> impl Strategy<Value = SequenceSpec> {
    prop_oneof![
        (0.0f64..3.0).prop_map(SequenceSpec::power),
        (0.1f64..3.0, 0.0f64..2.0).prop_map(|(a, b)| SequenceSpec::affine(a, b)),
        (1.0f64..1.003).prop_map(SequenceSpec::geometric),
    ]
}

fn coeff_spec() -> impl Strategy<Value = SequenceSpec> {
    prop_oneof![
        (-4.0f64..-0.5).prop_map(SequenceSpec::power),
        (0.3f64..0.999).prop_map(SequenceSpec::geometric),
    ]
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn shrinking_weights_preserves_convergence(w in weight_spec(), c in coeff_spec(), k in 0.01f64..1.0) {
        let small = w.clone().with_scale(Complex64::new(k, 0.0));
        let big = summability_verdict(&w, &c, 4096).unwrap();
        let shrunk = summability_verdict(&small, &c, 4096).unwrap();
        if big.verdict == Verdict::Converged {
            prop_assert_eq!(shrunk.verdict, Verdict::Converged);
        }
        prop_assert!(shrunk.partial_sum <= big.partial_sum);
    }

    #[test]
    fn doubling_never_flips_verdict(w in weight_spec(), c in coeff_spec()) {
        let a = summability_verdict(&w, &c, 2048).unwrap().verdict;
        let b = summability_verdict(&w, &c, 4096).unwrap().verdict;
        let flip = matches!((a, b), (Verdict::Converged, Verdict::Diverged) | (Verdict::Diverged, Verdict::Converged));
        prop_assert!(!flip, "{} on {}: {:?} then {:?}", w, c, a, b);
    }

    #[test]
    fn sequence_specs_round_trip(p in -3.0f64..3.0, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        for spec in [
            SequenceSpec::power(p),
            SequenceSpec::affine(p, re),
            SequenceSpec::geometric(p).with_scale(Complex64::new(re, im)),
            SequenceSpec::explicit(vec![Complex64::new(re, im), Complex64::new(p, 0.0)]),
        ] {
            let back: SequenceSpec = spec.to_string().parse().unwrap();
            for n in 0..6 {
                prop_assert_eq!(back.term(n), spec.term(n));
            }
        }
    }
}

#[test]
fn sqrt_of_dimension_32_identity_shift() {
    let m = ComplexMatrix::identity(32).scale(Complex64::new(9.0, 0.0));
    assert!(
        sqrt_psd(&m, 1e-10)
            .unwrap()
            .max_abs_diff(&ComplexMatrix::identity(32).scale(Complex64::new(3.0, 0.0)))
            < 1e-14
    );
    assert_eq!(linalg::norm(&linalg::basis_vector(32, 31)), 1.0);
}
