//! Acceptance battery: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seedforge::adjoint_modl::{
    element_order, verify_no_section_expansion, verify_reg_surjectivity, GroupElementModLn,
    NoSectionVariant, OrderResult,
};
use seedforge::arith::is_prime;
use seedforge::chevalley::{AdElement, ChevalleyAlgebra};
use seedforge::curve_forge::{
    count_points_fp, count_points_naive, forge_seed, valuation, valuation_rational,
    verify_certificate, WeierstrassEquation,
};
use seedforge::linalg::ModMatrix;
use seedforge::principal_sl2::{build_principal_triple, decompose_adjoint};
use seedforge::root_data::{RootSystem, TypeLabel};
use seedforge::selmer_ledger::{
    chase_removal, forcing_oracle, generate_instance, generate_instance_with_violation,
    simulate_forcing, ForcingVerdict, GeneratorConfig, Violation,
};

fn exceptional_expectations() -> Vec<(TypeLabel, usize, Vec<u64>)> {
    vec![
        (TypeLabel::G2, 14, vec![1, 5]),
        (TypeLabel::F4, 52, vec![1, 5, 7, 11]),
        (TypeLabel::E6, 78, vec![1, 4, 5, 7, 8, 11]),
        (TypeLabel::E7, 133, vec![1, 5, 7, 9, 11, 13, 17]),
        (TypeLabel::E8, 248, vec![1, 7, 11, 13, 17, 19, 23, 29]),
    ]
}

/// Final floor primes (4h-1 plus image-hypothesis bound; E6 tightens 53 -> 71).
fn floor_primes() -> Vec<(TypeLabel, u64)> {
    vec![
        (TypeLabel::G2, 29),
        (TypeLabel::F4, 53),
        (TypeLabel::E6, 71),
        (TypeLabel::E7, 73),
        (TypeLabel::E8, 127),
    ]
}

#[test]
fn criterion_1_lie_suite_all_exceptional_types() {
    let start = Instant::now();
    for (label, dim, exponents) in exceptional_expectations() {
        let alg = ChevalleyAlgebra::build(RootSystem::build(label));
        assert_eq!(alg.dim, dim, "{label}: dimension");
        assert!(alg.antisymmetry_holds(), "{label}: antisymmetry");
        assert!(alg.jacobi_identity_holds(), "{label}: Jacobi identity");
        assert!(alg.magnitudes_match_chains(), "{label}: |N| = p + 1");

        // principal triple relations are verified exactly inside the builder
        let triple = build_principal_triple(&alg).expect("triple relations must hold");

        let d = decompose_adjoint(&alg, &triple, None).expect("rational decomposition");
        assert_eq!(d.exponents(), exponents, "{label}: exponent multiset");
        assert_eq!(
            d.total_dimension() as usize,
            dim,
            "{label}: sum of string lengths"
        );

        let h = alg.system.coxeter_number;
        assert_eq!(
            alg.ad_nilpotency_index(&alg.x_highest()).unwrap(),
            3,
            "{label}: theta"
        );
        assert_eq!(
            alg.ad_nilpotency_index(&alg.x_principal()).unwrap() as u64,
            2 * h - 1,
            "{label}: principal nilpotency"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "Lie suite exceeded two minutes: {elapsed:?}"
    );
    println!("criterion 1 PASS: Lie suites for G2 F4 E6 E7 E8 in {elapsed:.2?}");
}

#[test]
fn criterion_2_highest_root_congruence_and_orders() {
    for (label, ell) in [(TypeLabel::G2, 29u64), (TypeLabel::F4, 53)] {
        let alg = ChevalleyAlgebra::build(RootSystem::build(label));
        let report =
            verify_no_section_expansion(&alg, ell, 1, 100, NoSectionVariant::HighestRoot, 2024)
                .unwrap();
        assert!(report.all_passed(), "{label}: {:?}", report.failures);
        assert!(report.order_obstruction_confirmed, "{label}");

        // element_order confirms no lift has order l: reconstruct the same
        // family of lifts and scan orders up to the cap l
        let modulus = ell * ell;
        let exp_x = alg.exp_nilpotent_ad(&alg.x_highest(), ell, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let r: Vec<i64> = (0..alg.dim).map(|_| rng.gen_range(0..ell as i64)).collect();
            let ad_r = ModMatrix::from_i64(&alg.ad_matrix(&AdElement::new(r)), modulus);
            let pert = ModMatrix::identity(alg.dim, modulus).add(&ad_r.scale(ell));
            let lift = GroupElementModLn {
                matrix: pert.mul(&exp_x),
                provenance: "lift".into(),
            };
            assert_eq!(
                element_order(&lift, ell),
                OrderResult::ExceedsCap,
                "{label}: a lift had order <= l"
            );
        }
    }
    println!("criterion 2 PASS: Ad(u)^l = 1 + l ad(X_theta) mod l^2 for 100 lifts at G2/29 and F4/53, no order-l lifts");
}

#[test]
fn criterion_3_principal_congruence() {
    let alg = ChevalleyAlgebra::build(RootSystem::build(TypeLabel::G2));
    let ell = 29u64;
    assert!(ell > 4 * alg.system.coxeter_number - 3);
    let report =
        verify_no_section_expansion(&alg, ell, 1, 100, NoSectionVariant::PrincipalX, 7).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures);
    // the right side exp(ad(l X)) = 1 + l ad(X) differs from the identity
    assert!(report.order_obstruction_confirmed);
    println!("criterion 3 PASS: Ad(u)^29 = exp(ad(29 X)) != 1 mod 29^2 for 100 lifts at G2");
}

#[test]
fn criterion_4_reg_suite_all_types() {
    for (label, ell) in floor_primes() {
        let alg = ChevalleyAlgebra::build(RootSystem::build(label));
        let rep = verify_reg_surjectivity(&alg, ell).unwrap();
        assert_eq!(
            rep.image_dimension, alg.system.num_positive,
            "{label}: image"
        );
        assert_eq!(rep.kernel_dimension, alg.system.rank, "{label}: kernel");
        assert!(rep.kernel_inside_nilradical, "{label}: kernel containment");
        assert!(rep.image_equals_nilradical, "{label}: image containment");
    }
    println!(
        "criterion 4 PASS: (REG) kernel/image dimensions at the floor primes for all five types"
    );
}

#[test]
fn criterion_5_seed_forge_all_pairs() {
    // The stated list pairs E7 with 71, but 71 fails the strict bound
    // l > 4h - 1 = 71 that the admissibility table itself imposes (E7's
    // floor prime is 73); the suite therefore runs E7 at 73.
    let pairs = [
        (TypeLabel::G2, 29u64),
        (TypeLabel::F4, 53),
        (TypeLabel::E7, 73),
        (TypeLabel::E8, 127),
        (TypeLabel::E6, 71),
    ];
    for (label, ell) in pairs {
        let t0 = Instant::now();
        let system = RootSystem::build(label);
        let outcome = forge_seed(&system, ell, None, 0, 2000).expect("forge must succeed");
        let elapsed = t0.elapsed();
        assert!(
            elapsed.as_secs() < 60,
            "{label}/{ell}: forge took {elapsed:?}"
        );
        assert!(outcome.certificate.all_checks_pass(), "{label}/{ell}");

        // independent re-verification from the emitted equation alone
        let re = verify_certificate(
            &system,
            &outcome.equation,
            ell,
            outcome.certificate.p0,
            outcome.certificate.p1,
            outcome.certificate.trace,
            0,
            2000,
        )
        .expect("re-verification");
        assert!(re.all_checks_pass(), "{label}/{ell}: re-verification");

        // the three local reductions match the models bit-exactly
        assert_eq!(
            outcome.equation.reduce_mod(outcome.ell_model.modulus),
            outcome.ell_model.coefficients,
            "{label}/{ell}: mod-l reduction"
        );
        assert_eq!(
            outcome.equation.reduce_mod(outcome.p0_model.modulus),
            outcome.p0_model.coefficients,
            "{label}/{ell}: mod-p0^2 reduction"
        );
        assert_eq!(
            outcome.equation.reduce_mod(outcome.p1_model.modulus),
            outcome.p1_model.coefficients,
            "{label}/{ell}: mod-p1^2 reduction"
        );

        if ell == 29 {
            let n_char = count_points_fp(&outcome.equation, 29).unwrap();
            let n_naive = count_points_naive(&outcome.equation, 29);
            assert_eq!(n_char, n_naive, "point count cross-check at 29");
        }
    }
    println!("criterion 5 PASS: accepted certificates for (G2,29) (F4,53) (E7,73) (E8,127) (E6,71), re-verified independently");
}

#[test]
fn criterion_6_exact_model_identities() {
    for p0 in (3..=99i64).step_by(2) {
        let e = WeierstrassEquation::new([1, 0, 0, -5 * p0, -p0]);
        assert_eq!(e.c4(), BigInt::from(1 + 240 * p0), "p0 = {p0}: c4");
        assert_eq!(e.c6(), BigInt::from(-1 + 504 * p0), "p0 = {p0}: c6");
        let disc = e.discriminant();
        assert_eq!(
            (&disc - p0) % BigInt::from(p0 * p0),
            BigInt::from(0),
            "p0 = {p0}: disc = p0 mod p0^2"
        );
        assert!(e.identity_1728_holds(), "p0 = {p0}");
    }
    let mut valid_p1 = 0;
    for p1 in (5..=100u64).filter(|&p| is_prime(p) && p % 3 == 2) {
        let e = WeierstrassEquation::new([0, 0, 0, -3 * p1 as i64, -2 * p1 as i64]);
        let disc = e.discriminant();
        assert_eq!(
            disc,
            BigInt::from(1728 * p1 * p1 * (p1 - 1)),
            "p1 = {p1}: disc identity"
        );
        assert_eq!(valuation(&disc, p1), 2, "p1 = {p1}: v(disc)");
        let (jn, jd) = e.j_invariant();
        assert_eq!(valuation_rational(&jn, &jd, p1), 1, "p1 = {p1}: v(j)");
        let jm: BigInt = &jn - 1728 * &jd;
        assert_eq!(
            valuation_rational(&jm, &jd, p1),
            0,
            "p1 = {p1}: v(j - 1728)"
        );
        // j / (j - 1728) = p1 exactly
        assert_eq!(jn, BigInt::from(p1) * jm, "p1 = {p1}: j/(j-1728)");
        valid_p1 += 1;
    }
    assert!(valid_p1 >= 10);
    println!("criterion 6 PASS: exact p0/p1 model identities for all odd p0 <= 99 and {valid_p1} valid p1 <= 100");
}

#[test]
fn criterion_7_selmer_campaign() {
    let mut total = 0u64;
    let mut oracle_agreements = 0u64;

    // exhaustive-oracle sweep over F_2 with global dim 4..=8
    for dims in 4..=8usize {
        let cfg = GeneratorConfig {
            field: 2,
            n_ram: dims - 3,
            n_base: 0,
            max_attempts: 20_000,
        };
        for seed in 0..1000u64 {
            let inst = generate_instance(&cfg, seed * 31 + dims as u64).unwrap();
            assert_eq!(
                chase_removal(&inst).unwrap(),
                (1, 1),
                "F2 dims {dims} seed {seed}"
            );
            let v = simulate_forcing(&inst).unwrap();
            assert_eq!(v, ForcingVerdict::Forced, "F2 dims {dims} seed {seed}");
            let o = forcing_oracle(&inst).unwrap();
            assert_eq!(o, v, "oracle disagreement at F2 dims {dims} seed {seed}");
            total += 1;
            oracle_agreements += 1;
        }
    }
    // F_3 instances, oracle on while the enumeration stays small
    for dims in 4..=6usize {
        let cfg = GeneratorConfig {
            field: 3,
            n_ram: dims - 3,
            n_base: 0,
            max_attempts: 20_000,
        };
        for seed in 0..1700u64 {
            let inst = generate_instance(&cfg, seed * 37 + dims as u64).unwrap();
            assert_eq!(
                chase_removal(&inst).unwrap(),
                (1, 1),
                "F3 dims {dims} seed {seed}"
            );
            let v = simulate_forcing(&inst).unwrap();
            assert_eq!(v, ForcingVerdict::Forced, "F3 dims {dims} seed {seed}");
            let o = forcing_oracle(&inst).unwrap();
            assert_eq!(o, v, "oracle disagreement at F3 dims {dims} seed {seed}");
            total += 1;
            oracle_agreements += 1;
        }
    }
    // adversarial instances must be rejected, and the oracle must agree
    for seed in 0..100u64 {
        let cfg = GeneratorConfig {
            field: 2,
            ..Default::default()
        };
        for violation in [Violation::Hyp1PhiInRamPerp, Violation::Hyp2PsiInMeet] {
            let adv = generate_instance_with_violation(&cfg, seed, violation).unwrap();
            let v = simulate_forcing(&adv).unwrap();
            assert!(
                matches!(v, ForcingVerdict::NotForced { .. }),
                "{violation:?} seed {seed}"
            );
            let o = forcing_oracle(&adv).unwrap();
            assert!(
                matches!(o, ForcingVerdict::NotForced { .. }),
                "oracle accepts a {violation:?} instance at seed {seed}"
            );
            total += 1;
            oracle_agreements += 1;
        }
    }
    assert!(total >= 10_000, "campaign ran only {total} instances");
    println!(
        "criterion 7 PASS: {total} instances, {oracle_agreements} oracle agreements, no counterexamples"
    );
}

#[test]
fn criterion_8_admissibility_table() {
    // frozen regression fixture, derived from l > 4h - 1 plus the
    // image-hypothesis bound
    let table = [
        (TypeLabel::G2, 6u64, 23u64, 29u64, 10u64, 29u64),
        (TypeLabel::F4, 12, 47, 53, 22, 53),
        (TypeLabel::E6, 12, 47, 53, 66, 71),
        (TypeLabel::E7, 18, 71, 73, 34, 73),
        (TypeLabel::E8, 30, 119, 127, 58, 127),
    ];
    for (label, h, bound4h, floor, hyp3, first_full) in table {
        let sys = RootSystem::build(label);
        assert_eq!(sys.coxeter_number, h, "{label}: h");
        assert_eq!(4 * sys.coxeter_number - 1, bound4h, "{label}: 4h-1");
        assert_eq!(
            sys.admissible_prime_floor().unwrap(),
            floor,
            "{label}: floor"
        );
        assert_eq!(sys.image_hypothesis_bound(), hyp3, "{label}: image bound");
        assert_eq!(
            sys.first_admissible_prime().unwrap(),
            first_full,
            "{label}: final floor"
        );
    }
    let e8 = RootSystem::build(TypeLabel::E8);
    for excluded in [229, 269, 367] {
        assert!(is_prime(excluded));
        assert!(
            !e8.is_admissible(excluded).unwrap(),
            "E8 must exclude {excluded}"
        );
    }
    assert!(e8.is_admissible(131).unwrap());
    assert!(e8.is_admissible(233).unwrap());
    println!("criterion 8 PASS: admissibility table {{G2:29, F4:53, E6:53->71, E7:73, E8:127}} reproduced with E8 exclusions");
}
