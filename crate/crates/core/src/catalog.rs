//! Homology data of the elliptic fibrations, embeddings, chamber vectors and fillings.

use num_bigint::BigInt;

use crate::exactlin::IntegerMatrix;
use crate::handlebody::{cycle_from_terms, Handlebody};
use crate::homblowup::{BlowupClass, SphereConfiguration};
use crate::mcg::relations::{KL_RHS, MN_RHS, OP_RHS, QR_RHS, UV_RHS};
use crate::mcg::TwistWord;
use crate::plumbing::StarPlumbing;

fn class(n: usize, text: &str) -> BlowupClass {
    BlowupClass::parse(n, text).unwrap_or_else(|e| panic!("catalog class `{text}`: {e}"))
}

fn classes(n: usize, texts: &[&str]) -> Vec<BlowupClass> {
    texts.iter().map(|t| class(n, t)).collect()
}

/// The `(-5)` center with arms `(-2)`, `(-2,-2)`, `(-2,-3)`, `(-3)`.
pub fn q_plumbing() -> StarPlumbing {
    StarPlumbing::new(-5, vec![vec![-2], vec![-2, -2], vec![-2, -3], vec![-3]])
}

/// `q_plumbing` with the hole labels of its printed monodromy.
pub fn q_plumbing_labeled() -> StarPlumbing {
    q_plumbing().with_labels(vec![vec![3], vec![6], vec![4, 5], vec![1, 2]], vec![])
}

/// The `(-5)` center with arms `(-2,-2,-3)`, `(-2,-3)`, `(-2,-3)`, `(-3)`.
pub fn u_plumbing() -> StarPlumbing {
    StarPlumbing::new(-5, vec![vec![-2, -2, -3], vec![-2, -3], vec![-2, -3], vec![-3]])
}

/// The `(-6)` center with four `(-2)` leaves.
pub fn k_plumbing() -> StarPlumbing {
    StarPlumbing::new(-6, vec![vec![-2]; 4])
}

pub fn k_plumbing_labeled() -> StarPlumbing {
    k_plumbing().with_labels(vec![vec![1], vec![2], vec![4], vec![5]], vec![3])
}

pub fn s2_plumbing() -> StarPlumbing {
    StarPlumbing::star(2)
}

/// Printed boundary monodromies of the plumbings.
pub const S_WORDS: [&str; 4] = [
    "D123 D1 D2 D3",
    "D1234 D1^2 D2^2 D3^2 D4^2",
    "D12345 D1^3 D2^3 D3^3 D4^3 D5^3",
    "D123456 D1^4 D2^4 D3^4 D4^4 D5^4 D6^4",
];
pub use crate::mcg::relations::{KL_LHS as K_WORD, QR_LHS as Q_WORD, UV_LHS as U_WORD};

/// Spheres of the `(-5; -2,-2,-2,-2)` plumbing in `CP² # 11`.
pub fn s2_configuration() -> SphereConfiguration {
    SphereConfiguration::new(
        classes(
            11,
            &[
                "6h - e1 - 2e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 2e9 - 2e10 - 2e11",
                "h - e1 - e2 - e3",
                "h - e1 - e4 - e5",
                "h - e1 - e6 - e7",
                "h - e1 - e8 - e9",
            ],
        ),
        s2_plumbing(),
    )
}

/// Spheres of the Q plumbing in `CP² # 12`, center first and arms outward.
pub fn q_configuration() -> SphereConfiguration {
    SphereConfiguration::new(
        classes(
            12,
            &[
                "6h - e1 - 2e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 2e9 - 2e11 - 2e12",
                "2h - e1 - e2 - e3 - e4 - e5 - e6",
                "h - e1 - e2 - e9",
                "h - e3 - e5 - e7",
                "h - e1 - e6 - e7",
                "h - e3 - e4 - e9 - e10",
                "h - e1 - e5 - e8 - e10",
            ],
        ),
        q_plumbing(),
    )
}

/// The Q center exactly as printed, with the first two exceptional coefficients swapped.
pub const Q_CENTER_AS_PRINTED: &str = "6h - 2e1 - e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 2e9 - 2e11 - 2e12";

/// Spheres of the U plumbing in `CP² # 13`.
pub fn u_configuration() -> SphereConfiguration {
    SphereConfiguration::new(
        classes(
            13,
            &[
                "7h - 3e1 - 2e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 3e9 - 2e12 - 2e13",
                "h - e3 - e4 - e5",
                "e5 - e8",
                "h - e1 - e5 - e6 - e11",
                "h - e2 - e5 - e8",
                "e2 - e7 - e10",
                "e1 - e6",
                "h - e1 - e2 - e3 - e10",
                "h - e2 - e4 - e7 - e11",
            ],
        ),
        u_plumbing(),
    )
}

/// Spheres of the K plumbing in `CP² # 12`.
pub fn k_configuration() -> SphereConfiguration {
    SphereConfiguration::new(
        classes(
            12,
            &[
                "6h - e1 - 2e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 2e9 - 2e10 - 2e11 - e12",
                "h - e1 - e2 - e3",
                "h - e1 - e4 - e5",
                "h - e1 - e6 - e7",
                "h - e1 - e8 - e9",
            ],
        ),
        k_plumbing(),
    )
}

/// Spheres of the `(-5; -2,-2,-2,-2)` plumbing after knot surgery and one blow-up.
pub fn knot_surgery_configuration() -> SphereConfiguration {
    SphereConfiguration::new(
        classes(
            10,
            &[
                "e1 - 2e10",
                "2h - e1 - e2 - e3 - e4 - e5 - e6",
                "h - e1 - e2 - e9",
                "h - e1 - e6 - e7",
                "h - e1 - e5 - e8",
            ],
        ),
        s2_plumbing(),
    )
}

/// `-PD(F) - e₁₀` on the knot-surgered manifold.
pub fn knot_surgery_canonical() -> BlowupClass {
    class(10, "-3h + e1 + e2 + e3 + e4 + e5 + e6 + e7 + e8 + e9 - e10")
}

/// `-PD(F) + e₁₀`.
pub fn knot_surgery_other_class() -> BlowupClass {
    class(10, "-3h + e1 + e2 + e3 + e4 + e5 + e6 + e7 + e8 + e9 + e10")
}

pub fn chamber_v() -> BlowupClass {
    class(
        11,
        "86h - 36e1 - 25e2 - 25e3 - 25e4 - 25e5 - 25e6 - 25e7 - 19e8 - 31e9 - 20e10 - 20e11",
    )
}

pub fn chamber_r_q() -> BlowupClass {
    class(
        12,
        "533h - 188e1 - 186e2 - 192e3 - 126e4 - 185e5 - 189e6 - 156e7 - 104e8 - 159e9 - 56e10 - 151e12",
    )
}

/// `chamber_r_q` with `-57e11` in place of the printed `-0e11`; the only single-coefficient
/// change making it orthogonal to the spheres.
pub fn chamber_r_q_candidate() -> BlowupClass {
    class(
        12,
        "533h - 188e1 - 186e2 - 192e3 - 126e4 - 185e5 - 189e6 - 156e7 - 104e8 - 159e9 - 56e10 - 57e11 - 151e12",
    )
}

pub fn chamber_r_u() -> BlowupClass {
    class(
        13,
        "5656h - 1728e1 - 1846e2 - 1836e3 - 1915e4 - 1905e5 - 1728e6 - 1600e7 - 1905e8 - 1890e9 - 246e10 - 295e11 - 393e12 - 1241e13",
    )
}

pub fn chamber_h() -> BlowupClass {
    class(
        10,
        "50h - 32e1 - 14e2 - 12e3 - 21e4 - 5e5 - 15e6 - 3e7 - 12e8 - 4e9 - 16e10",
    )
}

/// `chamber_h` with `-6e5` in place of `-5e5`; the only single-coefficient change making it
/// orthogonal to the spheres.
pub fn chamber_h_candidate() -> BlowupClass {
    class(
        10,
        "50h - 32e1 - 14e2 - 12e3 - 21e4 - 6e5 - 15e6 - 3e7 - 12e8 - 4e9 - 16e10",
    )
}

/// `A₁, …, A₇` in `CP² # 11`, orthogonal to the `(-5; -2,-2,-2,-2)` spheres.
pub fn search_classes() -> Vec<BlowupClass> {
    classes(
        11,
        &[
            "h - e3 - e5 - e7 - e9 + e11",
            "-3h + 2e1 + e3 + e5 + e7 + e9 + 2e10 + 2e11",
            "e2 - e3",
            "e4 - e5",
            "e6 - e7",
            "e10 - e11",
            "e8 - e9",
        ],
    )
}

/// The 24 distinguished pairings `[⟨L,u₀⟩, …, ⟨L,u₄⟩]`.
pub const PHI: [[i64; 5]; 24] = [
    [1, 0, 0, 0, 0],
    [-3, 2, 2, 2, 2],
    [-1, 2, 0, 0, 2],
    [-3, 0, 2, 2, 0],
    [1, 2, 0, 2, 0],
    [3, 0, 0, 0, 0],
    [-1, 2, 2, 0, 0],
    [-3, 2, 0, 2, 0],
    [-1, 0, 2, 0, 2],
    [-3, 0, 0, 2, 2],
    [1, 0, 2, 2, 0],
    [1, 0, 0, 2, 2],
    [-1, 0, 2, 2, 0],
    [-3, 0, 2, 0, 2],
    [-3, 0, 0, 0, 0],
    [1, 2, 0, 0, 2],
    [5, 0, 0, 0, 0],
    [-3, 2, 0, 0, 2],
    [-1, 0, 0, 2, 2],
    [1, 0, 2, 0, 2],
    [-1, 2, 0, 2, 0],
    [-3, 2, 2, 0, 0],
    [1, 2, 2, 0, 0],
    [-1, 0, 0, 0, 0],
];

pub fn phi() -> Vec<Vec<BigInt>> {
    PHI.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Printed reduced dimensions on the plumbing and on the filling side.
pub const PRINTED_S2_REDUCED: [(i64, i64); 9] =
    [(-2, 3), (-1, 3), (-1, 4), (-1, 12), (0, 1), (1, 4), (2, 3), (-11, 12), (1, 1)];
pub const PRINTED_T2_REDUCED: [(i64, i64); 4] = [(-1, 3), (0, 1), (2, 3), (1, 1)];

/// Printed pipeline counts.
pub const PRINTED_STAGE_COUNTS: [u64; 6] = [243_000, 25_040, 600_960, 219_064, 122_212, 2];

pub fn t_filling(i: usize) -> Handlebody {
    Handlebody::all_pairs(i + 2)
}

fn filling(holes: usize, word: &str) -> Handlebody {
    let w = TwistWord::parse(holes, word).expect("catalog word");
    Handlebody::from_word(&w).expect("positive word")
}

pub fn r_filling() -> Handlebody {
    filling(6, QR_RHS)
}

pub fn v_filling() -> Handlebody {
    filling(8, UV_RHS)
}

pub fn l_filling() -> Handlebody {
    filling(5, KL_RHS)
}

pub fn n_filling() -> Handlebody {
    filling(7, MN_RHS)
}

pub fn p_filling() -> Handlebody {
    filling(9, OP_RHS)
}

fn by_index(h: &Handlebody, coeffs: &[i64]) -> Vec<BigInt> {
    assert_eq!(coeffs.len(), h.handles.len());
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

/// `x12 + x34 - x13 - x24` and `x14 + x23 - x12 - x34`.
pub fn t2_cycles() -> Vec<Vec<BigInt>> {
    let h = t_filling(2);
    vec![
        cycle_from_terms(&h, &[(1, &[1, 2]), (1, &[3, 4]), (-1, &[1, 3]), (-1, &[2, 4])]).expect("T2 handles"),
        cycle_from_terms(&h, &[(1, &[1, 4]), (1, &[2, 3]), (-1, &[1, 2]), (-1, &[3, 4])]).expect("T2 handles"),
    ]
}

pub fn r_cycles() -> Vec<Vec<BigInt>> {
    let h = r_filling();
    vec![by_index(&h, &[1, 1, -1, -1, 1, 1, 0, -2]), by_index(&h, &[1, 1, -3, -3, 5, 0, 3, -5])]
}

pub fn v_cycles() -> Vec<Vec<BigInt>> {
    let h = v_filling();
    vec![
        by_index(&h, &[-2, -2, 1, 1, 0, 0, -3, 1, 1, 3]),
        by_index(&h, &[0, 0, -3, -3, 3, 3, -1, 2, 2, -2]),
    ]
}

/// `x14 - x15 - x24 + x25`.
pub fn l_cycles() -> Vec<Vec<BigInt>> {
    let h = l_filling();
    vec![cycle_from_terms(&h, &[(1, &[1, 4]), (-1, &[1, 5]), (-1, &[2, 4]), (1, &[2, 5])]).expect("L handles")]
}

pub fn t2_gram() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[[-4, 2], [2, -4]])
}

pub fn r_gram() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[[-10, -23], [-23, -79]])
}

pub fn v_gram() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[[-30, 5], [5, -49]])
}

/// Singular fibers as printed: name, components with multiplicity.
pub fn singular_fibers() -> Vec<(&'static str, Vec<(BlowupClass, i64)>)> {
    let one = |ts: &[&str]| ts.iter().map(|t| (class(9, t), 1)).collect::<Vec<_>>();
    let mut i0 = one(&["h - e1 - e2 - e3", "h - e1 - e4 - e5", "h - e1 - e6 - e7", "e1 - e8", "e8 - e9"]);
    i0[3].1 = 2;
    vec![
        ("I3 (three fishtail pencil)", one(&["h - e1 - e8 - e9", "h - e2 - e4 - e6", "h - e3 - e5 - e7"])),
        ("I0* (three fishtail pencil)", i0),
        ("first I2", one(&["2h - e1 - e2 - e3 - e4 - e7 - e8", "h - e5 - e6 - e9"])),
        ("second I2", one(&["2h - e1 - e2 - e3 - e4 - e5 - e6", "h - e7 - e8 - e9"])),
        ("first I4", one(&["h - e3 - e6 - e8", "h - e3 - e5 - e7", "h - e1 - e2 - e9", "e3 - e4"])),
        ("second I4", one(&["h - e1 - e6 - e7", "h - e1 - e5 - e8", "h - e3 - e4 - e9", "e1 - e2"])),
        (
            "first I5",
            one(&["e1 - e6", "h - e1 - e4 - e9", "h - e2 - e5 - e8", "e2 - e7", "h - e1 - e2 - e3"]),
        ),
        (
            "second I5",
            one(&["e4 - e9", "h - e3 - e4 - e5", "e5 - e8", "h - e1 - e5 - e6", "h - e2 - e4 - e7"]),
        ),
    ]
}

/// Euler characteristic and signature of `CP² # n (-CP²)`.
pub fn rational_surface(n: usize) -> (i64, i64) {
    (3 + n as i64, 1 - n as i64)
}
