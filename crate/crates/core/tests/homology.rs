use num_bigint::BigInt;
use proptest::prelude::*;
use starsurg::catalog;
use starsurg::exactlin::{rat, Rational};
use starsurg::homblowup::*;
use starsurg::plumbing::StarPlumbing;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn center_square_and_v_pairings() {
    let u0 = BlowupClass::parse(11, "6h - e1 - 2e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 2e9 - 2e10 - 2e11").unwrap();
    let two_f = &big(2) * &BlowupClass::fiber(11);
    let alt = &(&two_f + &BlowupClass::e(11, 1)) - &(&big(2) * &(&BlowupClass::e(11, 10) + &BlowupClass::e(11, 11)));
    assert_eq!(u0, alt);
    assert_eq!(u0.square(), big(-5));
    let v = catalog::chamber_v();
    assert_eq!(pair(&v, &BlowupClass::canonical(11)).unwrap(), big(18));
    assert_eq!(v.square(), big(228));
}

#[test]
fn embeddings_verify() {
    for (name, cfg, k) in [
        ("S2", catalog::s2_configuration(), BlowupClass::canonical(11)),
        ("Q", catalog::q_configuration(), BlowupClass::canonical(12)),
        ("U", catalog::u_configuration(), BlowupClass::canonical(13)),
        ("K", catalog::k_configuration(), BlowupClass::canonical(12)),
    ] {
        let r = verify_configuration(&cfg, Some(&k)).unwrap();
        assert!(r.pass, "{name}: {:?}", r.first_violation);
    }
    let r = verify_configuration(&catalog::knot_surgery_configuration(), None).unwrap();
    assert!(r.pass && !r.adjunction_checked, "{:?}", r.first_violation);
}

#[test]
fn printed_q_center_fails_and_swap_repairs_it() {
    let mut cfg = catalog::q_configuration();
    cfg.classes[0] = BlowupClass::parse(12, catalog::Q_CENTER_AS_PRINTED).unwrap();
    let r = verify_configuration(&cfg, Some(&BlowupClass::canonical(12))).unwrap();
    assert!(!r.pass);
}

#[test]
fn replaced_sphere_fails_with_the_right_pair() {
    let mut cfg = catalog::s2_configuration();
    cfg.classes[1] = BlowupClass::parse(11, "h - e1 - e2 - e4").unwrap();
    let r = verify_configuration(&cfg, Some(&BlowupClass::canonical(11))).unwrap();
    assert!(!r.pass);
    assert!(matches!(r.first_violation, Some(Violation::Pairing { first: 1, second: 2, .. })));
}

#[test]
fn singular_fibers_decompose() {
    for (name, comps) in catalog::singular_fibers() {
        let r = verify_fiber_decomposition(&comps).unwrap();
        assert!(r.pass, "{name}: {r:?}");
    }
}

fn chamber(w: &BlowupClass, cfg: &SphereConfiguration, k: &BlowupClass, sign: i8) -> ChamberReport {
    verify_chamber_vector(w, cfg, k, sign).unwrap()
}

#[test]
fn printed_chamber_vectors_that_pass() {
    let v = chamber(&catalog::chamber_v(), &catalog::s2_configuration(), &BlowupClass::canonical(11), 1);
    assert!(v.pass, "{v:?}");
    assert_eq!((v.square.clone(), v.dot_k.clone()), (big(228), big(18)));
    let r = chamber(&catalog::chamber_r_u(), &catalog::u_configuration(), &BlowupClass::canonical(13), 1);
    assert!(r.pass, "{r:?}");
}

#[test]
fn printed_chamber_vectors_that_fail_orthogonality() {
    let r = chamber(&catalog::chamber_r_q(), &catalog::q_configuration(), &BlowupClass::canonical(12), 1);
    assert!(!r.pass);
    assert_eq!(r.sphere_pairings, [114, 0, 0, 0, 0, 0, 0].map(big).to_vec());
    let fixed = r.repaired.unwrap();
    let again = chamber(&fixed, &catalog::q_configuration(), &BlowupClass::canonical(12), 1);
    assert!(again.sphere_pairings.iter().all(|x| *x == big(0)));

    let cfg = catalog::knot_surgery_configuration();
    let k = catalog::knot_surgery_canonical();
    let h = chamber(&catalog::chamber_h(), &cfg, &k, -1);
    assert!(!h.pass);
    assert_eq!(h.sphere_pairings, [0, 1, 0, 0, 1].map(big).to_vec());
}

#[test]
fn single_coefficient_candidates_pass() {
    let r = chamber(
        &catalog::chamber_r_q_candidate(),
        &catalog::q_configuration(),
        &BlowupClass::canonical(12),
        1,
    );
    assert!(r.pass, "{r:?}");
    let h = chamber(
        &catalog::chamber_h_candidate(),
        &catalog::knot_surgery_configuration(),
        &catalog::knot_surgery_canonical(),
        -1,
    );
    assert!(h.pass, "{h:?}");
    assert_eq!((h.square.clone(), h.dot_k.clone()), (big(9), big(-47)));
}

#[test]
fn kodaira_functional_on_s2() {
    let cfg = catalog::s2_configuration();
    let params = OmegaParams::new(
        rat(100, 1),
        (1..=11).map(|i| rat(20 - i, 3)).collect(),
    )
    .unwrap();
    let r = kodaira_report(&cfg, &BlowupClass::canonical(11), &params, 1).unwrap();
    let mut expected = vec![rat(5, 1), rat(-2, 1)];
    expected.extend(std::iter::repeat(rat(-3, 2)).take(8));
    expected.extend([rat(-1, 1), rat(-1, 1)]);
    assert_eq!(r.functional, expected);
    assert_eq!(r.functional_text(), "5 a - 2 b1 - 3/2 b2 - 3/2 b3 - 3/2 b4 - 3/2 b5 - 3/2 b6 - 3/2 b7 - 3/2 b8 - 3/2 b9 - b10 - b11");
    assert!(r.value > Rational::from_integer(0.into()));
    assert_eq!(r.kodaira_dimension, KodairaDimension::Two);
}

#[test]
fn inadmissible_params_rejected() {
    assert!(OmegaParams::new(rat(1, 1), vec![rat(1, 2), rat(1, 2)]).is_err());
    assert!(OmegaParams::new(rat(1, 1), vec![rat(2, 3), rat(1, 2)]).is_err());
}

#[test]
fn homeomorphism_arithmetic() {
    let s2 = (6, -5);
    let t2 = (3, -2);
    let r = homeo_type_report(catalog::rational_surface(11), s2, t2);
    assert_eq!((r.chi, r.sigma, r.b_plus, r.b_minus, r.parity), (11, -7, 1, 8, Parity::Odd));
    assert_eq!(r.k_square, 1);
    let q = homeo_type_report(catalog::rational_surface(12), (8, -7), (3, -2));
    assert_eq!((q.chi, q.sigma), (10, -6));
    let u = homeo_type_report(catalog::rational_surface(13), (10, -9), (3, -2));
    assert_eq!((u.chi, u.sigma), (9, -5));
    let k = homeo_type_report(catalog::rational_surface(12), (6, -5), (2, -1));
    assert_eq!((k.chi, k.sigma), (11, -7));
    let y = homeo_type_report((13, -9), s2, t2);
    assert_eq!((y.chi, y.sigma), (10, -6));
}

#[test]
fn homeo_arithmetic_composes() {
    let one = homeo_type_report((15, -11), (6, -5), (2, -1));
    let two = homeo_type_report((one.chi, one.sigma), (6, -5), (3, -2));
    let direct = homeo_type_report((15, -11), (12, -10), (5, -3));
    assert_eq!((two.chi, two.sigma), (direct.chi, direct.sigma));
}

#[test]
fn star_graph_sizes() {
    assert_eq!(StarPlumbing::star(2).vertex_count(), catalog::s2_configuration().classes.len());
}

fn class_strategy(n: usize) -> impl Strategy<Value = BlowupClass> {
    proptest::collection::vec(-50i64..50, n + 1).prop_map(|v| BlowupClass::from_i64(&v))
}

proptest! {
    #[test]
    fn pairing_is_symmetric_bilinear(x in class_strategy(11), y in class_strategy(11), z in class_strategy(11), k in -5i64..5) {
        prop_assert_eq!(pair(&x, &y).unwrap(), pair(&y, &x).unwrap());
        let lhs = pair(&(&(&big(k) * &x) + &y), &z).unwrap();
        prop_assert_eq!(lhs, big(k) * pair(&x, &z).unwrap() + pair(&y, &z).unwrap());
    }

    #[test]
    fn canonical_is_characteristic(x in class_strategy(11)) {
        let k = BlowupClass::canonical(11);
        let a = x.square() - pair(&x, &k).unwrap();
        prop_assert_eq!(a % 2, big(0));
    }
}

#[test]
fn kodaira_positive_on_random_admissible_samples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let cfg = catalog::s2_configuration();
    let functional = kodaira_functional(&cfg, &BlowupClass::canonical(11)).unwrap();
    let mut checked = 0;
    while checked < 10_000 {
        // b₁ > … > b₁₁ > 0 with a > Σ b.
        let mut cuts: Vec<i64> = (0..11).map(|_| rng.gen_range(1..1_000_000)).collect();
        cuts.sort_unstable_by(|a, b| b.cmp(a));
        cuts.dedup();
        if cuts.len() < 11 {
            continue;
        }
        let scale = rng.gen_range(1..1000);
        let b: Vec<Rational> = cuts.iter().map(|&c| rat(c, scale)).collect();
        let total: Rational = b.iter().sum();
        let slack = rat(rng.gen_range(1..1_000_000), rng.gen_range(1..1000));
        let a = std::cmp::max(total.clone(), b[0].clone()) + slack;
        let params = OmegaParams::new(a, b).unwrap();
        assert!(evaluate_functional(&functional, &params).unwrap() > Rational::from_integer(0.into()));
        checked += 1;
    }
}
