//! Loop (Dynnikov) coordinates and the piecewise-linear action of Artin generators.
//!
//! A braid on `m` strands acts on the disk with `m + 2` punctures: one fixed puncture on
//! each side of the strands. The outer punctures never move, so the full twist is visible
//! and every generator follows the same update rule. Coordinates are `(a₁..a_m; b₁..b_m)`
//! and the base lamination is `aᵢ = 0, bᵢ = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::braid::BraidWord;

/// Integral loop coordinates of a multicurve on a punctured disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LoopCoordinates {
    #[serde(serialize_with = "crate::json::ints")]
    pub a: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ints")]
    pub b: Vec<BigInt>,
}

impl LoopCoordinates {
    /// Base lamination for braids on `strands` strands.
    pub fn base(strands: usize) -> Self {
        Self {
            a: vec![<BigInt as Zero>::zero(); strands],
            b: vec![BigInt::from(1); strands],
        }
    }

    pub fn strands(&self) -> usize {
        self.a.len()
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.a.iter().chain(&self.b).map(|x| x.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for LoopCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "(a: [{}]; b: [{}])", join(&self.a), join(&self.b))
    }
}

trait Coord: Clone + Ord + Sized {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;

    fn pos(&self) -> Self {
        if *self > Self::zero() {
            self.clone()
        } else {
            Self::zero()
        }
    }

    fn neg(&self) -> Self {
        if *self < Self::zero() {
            self.clone()
        } else {
            Self::zero()
        }
    }
}

impl Coord for i128 {
    fn zero() -> Self {
        0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
}

impl Coord for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
}

/// Applies `σ_i^{±1}` (1-based) in place; `None` on overflow.
fn act<T: Coord>(a: &mut [T], b: &mut [T], i: usize, positive: bool) -> Option<()> {
    let (p, q) = (i - 1, i);
    let (a0, a1, b0, b1) = (a[p].clone(), a[q].clone(), b[p].clone(), b[q].clone());
    if positive {
        let z = a0.sub(&a1)?.add(&b1.pos())?.sub(&b0.neg())?;
        a[p] = a0.add(&b0.pos())?.add(&b1.pos().sub(&z)?.pos())?;
        b[p] = b1.sub(&z.pos())?;
        a[q] = a1.add(&b1.neg())?.add(&b0.neg().add(&z)?.neg())?;
        b[q] = b0.add(&z.pos())?;
    } else {
        let z = a0.sub(&a1)?.sub(&b1.pos())?.add(&b0.neg())?;
        a[p] = a0.sub(&b0.pos())?.sub(&b1.pos().add(&z)?.pos())?;
        b[p] = b1.add(&z.neg())?;
        a[q] = a1.sub(&b1.neg())?.sub(&b0.neg().sub(&z)?.neg())?;
        b[q] = b0.sub(&z.neg())?;
    }
    Some(())
}

fn run<T: Coord>(a: &mut [T], b: &mut [T], letters: &[i32]) -> Option<()> {
    for &l in letters {
        act(a, b, l.unsigned_abs() as usize, l > 0)?;
    }
    Some(())
}

/// Acts by `letters` (leftmost first) on arbitrary coordinates.
///
/// Letters are signed 1-based generator indices in `1..strands`.
pub fn act_on(coords: &LoopCoordinates, letters: &[i32]) -> LoopCoordinates {
    let m = coords.strands();
    assert!(
        letters.iter().all(|l| (l.unsigned_abs() as usize) < m && *l != 0),
        "generator out of range for {m} strands"
    );
    let small: Option<(Vec<i128>, Vec<i128>)> = coords
        .a
        .iter()
        .map(ToPrimitive::to_i128)
        .collect::<Option<Vec<_>>>()
        .zip(coords.b.iter().map(ToPrimitive::to_i128).collect());
    if let Some((mut a, mut b)) = small {
        if run(&mut a, &mut b, letters).is_some() {
            return LoopCoordinates {
                a: a.into_iter().map(BigInt::from).collect(),
                b: b.into_iter().map(BigInt::from).collect(),
            };
        }
    }
    let (mut a, mut b) = (coords.a.clone(), coords.b.clone());
    run(&mut a, &mut b, letters).expect("big integers do not overflow");
    LoopCoordinates { a, b }
}

/// Complete invariant of a braid: the image of the base lamination.
pub fn invariant(braid: &BraidWord) -> LoopCoordinates {
    act_on(&LoopCoordinates::base(braid.strands()), braid.letters())
}
