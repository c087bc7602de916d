use proptest::prelude::*;
use starsurg::mcg::dynnikov::{act_on, LoopCoordinates};
use starsurg::mcg::relations::{
    self, build, cyclic_three_partitions, single_hole_perturbations, RelationName, RelationParams,
};
use starsurg::mcg::{
    commutation_equivalent, compile_to_braid, default_gathering, invariant, lantern_self_test,
    split_hole, substitute, words_equal, BraidWord, Gathering, TwistWord,
};
use starsurg::Error;

fn w(n: usize, s: &str) -> TwistWord {
    TwistWord::parse(n, s).unwrap()
}

fn all_equal(name: RelationName, params: RelationParams) {
    let (l, r) = build(name, &params).unwrap();
    assert!(words_equal(&l, &r).unwrap(), "{name:?} {params:?}: {l} != {r}");
}

#[test]
fn exactly_one_gathering_passes_the_self_test() {
    let over = lantern_self_test(Gathering::Over);
    let under = lantern_self_test(Gathering::Under);
    assert!(over != under);
    let chosen = if over { Gathering::Over } else { Gathering::Under };
    assert_eq!(default_gathering(), chosen);
}

#[test]
fn lantern_on_every_cyclic_partition() {
    for n in 3..=6 {
        for blocks in cyclic_three_partitions(n) {
            let params = RelationParams {
                blocks: Some(blocks.to_vec()),
                holes: Some(n),
                ..Default::default()
            };
            all_equal(RelationName::Lantern, params);
        }
    }
}

#[test]
fn lantern_cyclic_rotation_of_rhs() {
    let l = w(3, "D123 D1 D2 D3");
    assert!(words_equal(&l, &w(3, "D13 D23 D12")).unwrap());
    assert!(words_equal(&l, &w(3, "D23 D12 D13")).unwrap());
    assert!(!words_equal(&l, &w(3, "D23 D13 D12")).unwrap());
}

#[test]
fn daisy_park_genlantern() {
    for m in 2..=4 {
        all_equal(
            RelationName::Daisy,
            RelationParams {
                m: Some(m),
                ..Default::default()
            },
        );
    }
    all_equal(RelationName::Park, RelationParams::default());
    for i in 1..=4 {
        all_equal(
            RelationName::Genlantern,
            RelationParams {
                i: Some(i),
                ..Default::default()
            },
        );
    }
}

#[test]
fn block_versions_hold() {
    all_equal(
        RelationName::Daisy,
        RelationParams {
            blocks: Some(vec![vec![5, 6], vec![7, 8], vec![3], vec![4]]),
            holes: Some(8),
            ..Default::default()
        },
    );
    all_equal(
        RelationName::Park,
        RelationParams {
            blocks: Some(vec![vec![1], vec![2], vec![3, 4], vec![5, 6], vec![7, 8]]),
            ..Default::default()
        },
    );
}

#[test]
fn star_relation_substitutions() {
    for name in [
        RelationName::Qr,
        RelationName::Uv,
        RelationName::Kl,
        RelationName::Mn,
        RelationName::Op,
    ] {
        all_equal(name, RelationParams::default());
    }
}

#[test]
fn perturbations_break_every_relation() {
    for name in RelationName::ALL {
        let (l, r) = build(name, &RelationParams::default()).unwrap();
        let inv = invariant(&compile_to_braid(&r));
        for (pl, pr) in single_hole_perturbations(&l, &r) {
            let same = if pr == r {
                invariant(&compile_to_braid(&pl)) == inv
            } else {
                words_equal(&pl, &pr).unwrap()
            };
            assert!(!same, "{name:?}: perturbed {pl} = {pr}");
        }
    }
}

#[test]
fn distinct_twists_differ() {
    assert!(!words_equal(&w(3, "D12"), &w(3, "D13")).unwrap());
    assert!(matches!(
        words_equal(&w(3, "D12"), &w(4, "D12")),
        Err(Error::HoleCountMismatch(3, 4))
    ));
}

#[test]
fn q_to_r_through_printed_intermediates() {
    let q = w(6, relations::QR_LHS);
    let (park_l, park_r) = relations::park(6, &[vec![4], vec![5], vec![6], vec![1, 2], vec![3]]).unwrap();
    let step1 = substitute(&q, &park_l, &park_r).unwrap();
    assert!(commutation_equivalent(&step1, &w(6, relations::QR_STEP1)), "{step1}");
    let (l, r) = relations::lantern(6, &[4, 5], &[1], &[2]).unwrap();
    let step2 = substitute(&step1, &l, &r).unwrap();
    assert!(commutation_equivalent(&step2, &w(6, relations::QR_STEP2)), "{step2}");
    let (l, r) = relations::lantern(6, &[1, 2], &[3], &[6]).unwrap();
    let step3 = substitute(&step2, &l, &r).unwrap();
    assert!(commutation_equivalent(&step3, &w(6, relations::QR_RHS)), "{step3}");
    for s in [&step1, &step2, &step3] {
        assert!(words_equal(&q, s).unwrap());
    }
}

#[test]
fn u_to_v_through_printed_intermediates() {
    let u = w(8, relations::UV_LHS);
    let blocks = [vec![1], vec![2], vec![3, 4], vec![5, 6], vec![7, 8]];
    let (l, r) = relations::park(8, &blocks).unwrap();
    let step1 = substitute(&u, &l, &r).unwrap();
    assert!(commutation_equivalent(&step1, &w(8, relations::UV_STEP1)), "{step1}");
    let (l, r) = relations::lantern(8, &[1, 2], &[5], &[6]).unwrap();
    let s = substitute(&step1, &l, &r).unwrap();
    let (l, r) = relations::lantern(8, &[1, 2], &[7], &[8]).unwrap();
    let step2 = substitute(&s, &l, &r).unwrap();
    assert!(words_equal(&step2, &w(8, relations::UV_STEP2)).unwrap(), "{step2}");
    let (l, r) = relations::daisy(8, &[vec![5, 6], vec![7, 8], vec![3], vec![4]]).unwrap();
    let step3 = substitute(&step2, &l, &r).unwrap();
    assert!(words_equal(&step3, &w(8, relations::UV_RHS)).unwrap(), "{step3}");
    assert!(words_equal(&u, &step3).unwrap());
}

#[test]
fn substitution_inside_a_longer_word() {
    let (l, r) = relations::genlantern(2).unwrap();
    let word = w(4, "D1").concat(&l).unwrap();
    let out = substitute(&word, &l, &r).unwrap();
    assert!(commutation_equivalent(&out, &w(4, "D1").concat(&r).unwrap()), "{out}");
    assert!(words_equal(&word, &out).unwrap());
    assert!(commutation_equivalent(&substitute(&word, &l, &l).unwrap(), &word));
    assert_eq!(substitute(&w(4, "D12 D34"), &w(4, "D13"), &w(4, "D24")), Err(Error::PatternNotFound));
}

#[test]
fn substitution_respects_interleaving() {
    // D13 and D24 cross, so D13 D24 D13 does not contain D13 D13
    let word = w(4, "D13 D24 D13");
    assert_eq!(substitute(&word, &w(4, "D13^2"), &w(4, "D1")), Err(Error::PatternNotFound));
    let word = w(4, "D12 D34 D12");
    let out = substitute(&word, &w(4, "D12^2"), &w(4, "D1")).unwrap();
    assert!(commutation_equivalent(&out, &w(4, "D1 D34")));
}

#[test]
fn splitting_is_a_homomorphism() {
    let (l, r) = build(RelationName::Kl, &RelationParams::default()).unwrap();
    let mut pair = (l, r);
    for hole in [4, 2, 1, 3, 8] {
        pair = (split_hole(&pair.0, hole).unwrap(), split_hole(&pair.1, hole).unwrap());
        assert!(words_equal(&pair.0, &pair.1).unwrap(), "after splitting {hole}");
    }
    let word = w(3, "D12 D3");
    let s = split_hole(&word, 2).unwrap();
    assert_eq!(s.to_string(), "D123 D4");
}

#[test]
fn mn_differs_from_split_k_by_commuting_lanterns() {
    let k = w(5, relations::KL_LHS);
    let split = split_hole(&split_hole(&k, 4).unwrap(), 2).unwrap();
    let mn = w(7, relations::MN_LHS);
    // M's left side is the split K word times D2 D3 D56^-1 D5 D6 D7
    let extra = w(7, "D2 D3 D56^-1 D5 D6 D7");
    assert!(words_equal(&mn, &split.concat(&extra).unwrap()).unwrap());
    assert!(!words_equal(&mn, &split).unwrap());
}

// reduced Burau representation of B3 over Z[t, 1/t], entries as (offset, coefficients)
#[derive(Clone, Debug, PartialEq, Eq)]
struct Laurent(std::collections::BTreeMap<i32, i64>);

impl Laurent {
    fn c(pairs: &[(i32, i64)]) -> Self {
        let mut m = std::collections::BTreeMap::new();
        for &(e, c) in pairs {
            if c != 0 {
                *m.entry(e).or_insert(0) += c;
            }
        }
        m.retain(|_, c| *c != 0);
        Laurent(m)
    }
    fn add(&self, o: &Self) -> Self {
        let v: Vec<(i32, i64)> = self.0.iter().chain(o.0.iter()).map(|(e, c)| (*e, *c)).collect();
        Self::c(&v)
    }
    fn mul(&self, o: &Self) -> Self {
        let mut v = Vec::new();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                v.push((e1 + e2, c1 * c2));
            }
        }
        Self::c(&v)
    }
}

type M2 = [[Laurent; 2]; 2];

fn mmul(a: &M2, b: &M2) -> M2 {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn burau(letters: &[i32]) -> M2 {
    let l = Laurent::c;
    let s1: M2 = [[l(&[(1, -1)]), l(&[(0, 1)])], [l(&[]), l(&[(0, 1)])]];
    let s1i: M2 = [[l(&[(-1, -1)]), l(&[(-1, 1)])], [l(&[]), l(&[(0, 1)])]];
    let s2: M2 = [[l(&[(0, 1)]), l(&[])], [l(&[(1, 1)]), l(&[(1, -1)])]];
    let s2i: M2 = [[l(&[(0, 1)]), l(&[])], [l(&[(0, 1)]), l(&[(-1, -1)])]];
    let mut m: M2 = [[l(&[(0, 1)]), l(&[])], [l(&[]), l(&[(0, 1)])]];
    for &x in letters {
        let g = match x {
            1 => &s1,
            -1 => &s1i,
            2 => &s2,
            _ => &s2i,
        };
        m = mmul(&m, g);
    }
    m
}

#[test]
fn burau_matrices_are_a_representation() {
    assert_eq!(burau(&[1, -1]), burau(&[]));
    assert_eq!(burau(&[2, -2]), burau(&[]));
    assert_eq!(burau(&[1, 2, 1]), burau(&[2, 1, 2]));
    assert_ne!(burau(&[1]), burau(&[2]));
}

fn b3_word() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn invariant_agrees_with_burau_on_b3(x in b3_word(), y in b3_word()) {
        let ix = invariant(&BraidWord::new(3, x.clone()));
        let iy = invariant(&BraidWord::new(3, y.clone()));
        prop_assert_eq!(ix == iy, burau(&x) == burau(&y));
    }

    #[test]
    fn generator_relations_hold_on_all_laminations(
        a in prop::collection::vec(-50i64..50, 5),
        b in prop::collection::vec(-50i64..50, 5),
        i in 1i32..4,
    ) {
        let c = LoopCoordinates {
            a: a.iter().map(|&x| x.into()).collect(),
            b: b.iter().map(|&x| x.into()).collect(),
        };
        prop_assert_eq!(act_on(&act_on(&c, &[i]), &[-i]), c.clone());
        prop_assert_eq!(act_on(&c, &[i, i + 1, i]), act_on(&c, &[i + 1, i, i + 1]));
        if i + 2 < 5 {
            prop_assert_eq!(act_on(&c, &[i, i + 2]), act_on(&c, &[i + 2, i]));
        }
    }

    #[test]
    fn free_cancellation_is_invisible(x in b3_word(), k in 0usize..10, g in prop::sample::select(vec![1, -1, 2, -2])) {
        let mut y = x.clone();
        let at = k.min(y.len());
        y.splice(at..at, [g, -g]);
        prop_assert_eq!(invariant(&BraidWord::new(3, x)), invariant(&BraidWord::new(3, y)));
    }
}

#[test]
fn simple_invariants() {
    let base = invariant(&BraidWord::identity(3));
    assert_eq!(base, LoopCoordinates::base(3));
    assert_eq!(invariant(&BraidWord::new(3, vec![1, -1])), base);
    assert_ne!(invariant(&BraidWord::new(3, vec![1])), invariant(&BraidWord::new(3, vec![2])));
    // the full twist is central but not trivial
    assert_ne!(invariant(&BraidWord::full_twist(3, 1, 3)), base);
}
