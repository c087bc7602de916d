//! Named relations between twist words.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{words_equal, ConvexCurve, Twist, TwistWord};
use crate::error::{Error, Result};

pub const QR_LHS: &str = "D123456 D12 D1 D2 D3^2 D45^2 D4 D5 D6^3";
pub const QR_RHS: &str = "D46 D56 D145 D245 D345 D123 D126 D36";
/// After the Park step with A=4, B=5, C=6, D=12, E=3.
pub const QR_STEP1: &str = "D46 D56 D1245 D345 D1236 D45 D6 D1 D2 D3";
/// After the lantern step with A=45, B=1, C=2.
pub const QR_STEP2: &str = "D46 D56 D145 D245 D12 D345 D1236 D6 D3";

pub const UV_LHS: &str = "D12345678 D12^3 D1 D2 D34^2 D3 D4 D56^2 D5 D6 D78 D7 D8";
pub const UV_RHS: &str = "D134 D234 D125 D126 D127 D128 D5678 D356 D456 D3478";
pub const UV_STEP1: &str = "D134 D234 D1256 D1278 D345678 D12^2 D3 D4 D56 D5 D6 D7 D8";
pub const UV_STEP2: &str = "D134 D234 D125 D126 D56 D127 D128 D78 D345678 D3 D4 D56";

pub const KL_LHS: &str = "D1^2 D2^2 D3 D4^2 D5^2 D12345";
pub const KL_RHS: &str = "D123 D14 D15 D24 D25 D345";

/// Holes `1, 2a, 2b, 3, 4a, 4b, 5` relabelled `1..=7`.
pub const MN_LHS: &str = "D1^2 D23^2 D2 D3 D4 D56 D5 D6 D7^3 D1234567";
pub const MN_RHS: &str = "D1234 D156 D17 D235 D236 D27 D37 D4567";

/// Holes `1a, 1b, 2a, 2b, 3, 4a, 4b, 5a, 5b` relabelled `1..=9`.
pub const OP_LHS: &str = "D12^2 D1 D2 D34^2 D3 D4 D5 D67^2 D6 D7 D89^2 D8 D9 D123456789";
pub const OP_RHS: &str = "D12345 D167 D267 D128 D129 D346 D347 D389 D489 D56789";

fn curve_union(blocks: &[&[usize]]) -> Result<ConvexCurve> {
    ConvexCurve::new(blocks.iter().flat_map(|b| b.iter().copied()))
}

fn word(holes: usize, parts: Vec<(Vec<&[usize]>, i64)>) -> Result<TwistWord> {
    let letters = parts
        .into_iter()
        .map(|(blocks, p)| {
            Ok(Twist {
                curve: curve_union(&blocks)?,
                power: p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TwistWord::new(holes, letters)
}

/// `D_{ABC} D_A D_B D_C = D_{AB} D_{AC} D_{BC}`.
pub fn lantern(holes: usize, a: &[usize], b: &[usize], c: &[usize]) -> Result<(TwistWord, TwistWord)> {
    let lhs = word(holes, vec![(vec![a, b, c], 1), (vec![a], 1), (vec![b], 1), (vec![c], 1)])?;
    let rhs = word(holes, vec![(vec![a, b], 1), (vec![a, c], 1), (vec![b, c], 1)])?;
    Ok((lhs, rhs))
}

/// `D_{B0..Bm} D_{B0}^{m-1} D_{B1} … D_{Bm} = D_{B0B1} … D_{B0Bm} D_{B1..Bm}`.
pub fn daisy(holes: usize, blocks: &[Vec<usize>]) -> Result<(TwistWord, TwistWord)> {
    if blocks.len() < 3 {
        return Err(Error::UnknownRelation(format!(
            "daisy needs at least three blocks, got {}",
            blocks.len()
        )));
    }
    let m = blocks.len() - 1;
    let all: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
    let mut l = vec![(all.clone(), 1), (vec![all[0]], m as i64 - 1)];
    l.extend(all[1..].iter().map(|b| (vec![*b], 1)));
    let mut r: Vec<(Vec<&[usize]>, i64)> = all[1..].iter().map(|b| (vec![all[0], *b], 1)).collect();
    r.push((all[1..].to_vec(), 1));
    Ok((word(holes, l)?, word(holes, r)?))
}

/// `D_{ABCDE} D_{AB} D_A D_B D_C² D_D D_E = D_{AC} D_{BC} D_{ABD} D_{ABE} D_{CDE}`.
pub fn park(holes: usize, blocks: &[Vec<usize>]) -> Result<(TwistWord, TwistWord)> {
    let [a, b, c, d, e] = blocks else {
        return Err(Error::UnknownRelation(format!(
            "park needs five blocks, got {}",
            blocks.len()
        )));
    };
    let (a, b, c, d, e) = (a.as_slice(), b.as_slice(), c.as_slice(), d.as_slice(), e.as_slice());
    let lhs = word(
        holes,
        vec![
            (vec![a, b, c, d, e], 1),
            (vec![a, b], 1),
            (vec![a], 1),
            (vec![b], 1),
            (vec![c], 2),
            (vec![d], 1),
            (vec![e], 1),
        ],
    )?;
    let rhs = word(
        holes,
        vec![
            (vec![a, c], 1),
            (vec![b, c], 1),
            (vec![a, b, d], 1),
            (vec![a, b, e], 1),
            (vec![c, d, e], 1),
        ],
    )?;
    Ok((lhs, rhs))
}

/// `D_{1..i+2} D_1^i … D_{i+2}^i = Π_{j<k} D_{jk}` in lexicographic order.
pub fn genlantern(i: usize) -> Result<(TwistWord, TwistWord)> {
    if i == 0 {
        return Err(Error::UnknownRelation("genlantern needs i >= 1".into()));
    }
    let n = i + 2;
    let mut l = vec![Twist::new(1..=n, 1)?];
    for h in 1..=n {
        l.push(Twist::new([h], i as i64)?);
    }
    let mut r = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            r.push(Twist::new([j, k], 1)?);
        }
    }
    Ok((TwistWord::new(n, l)?, TwistWord::new(n, r)?))
}

/// Every way to cut the circle of holes `1..=n` into three consecutive nonempty arcs.
pub fn cyclic_three_partitions(n: usize) -> Vec<[Vec<usize>; 3]> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    for start in 0..n {
        for sa in 1..n - 1 {
            for sb in 1..n - sa {
                let arc = |from: usize, len: usize| -> Vec<usize> {
                    (from..from + len).map(|k| (start + k) % n + 1).collect()
                };
                out.push([arc(0, sa), arc(sa, sb), arc(sa + sb, n - sa - sb)]);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationName {
    Lantern,
    Daisy,
    Park,
    Genlantern,
    #[serde(rename = "QR")]
    Qr,
    #[serde(rename = "UV")]
    Uv,
    #[serde(rename = "KL")]
    Kl,
    #[serde(rename = "MN")]
    Mn,
    #[serde(rename = "OP")]
    Op,
}

impl RelationName {
    pub const ALL: [RelationName; 9] = [
        Self::Lantern,
        Self::Daisy,
        Self::Park,
        Self::Genlantern,
        Self::Qr,
        Self::Uv,
        Self::Kl,
        Self::Mn,
        Self::Op,
    ];

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "lantern" => Ok(Self::Lantern),
            "daisy" => Ok(Self::Daisy),
            "park" => Ok(Self::Park),
            "genlantern" | "generalized-lantern" => Ok(Self::Genlantern),
            "qr" => Ok(Self::Qr),
            "uv" => Ok(Self::Uv),
            "kl" => Ok(Self::Kl),
            "mn" => Ok(Self::Mn),
            "op" => Ok(Self::Op),
            _ => Err(Error::UnknownRelation(name.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Lantern => "lantern",
            Self::Daisy => "daisy",
            Self::Park => "park",
            Self::Genlantern => "genlantern",
            Self::Qr => "QR",
            Self::Uv => "UV",
            Self::Kl => "KL",
            Self::Mn => "MN",
            Self::Op => "OP",
        }
    }
}

/// Optional knobs; unset fields fall back to singleton blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holes: Option<usize>,
}

fn singletons(k: usize) -> Vec<Vec<usize>> {
    (1..=k).map(|h| vec![h]).collect()
}

fn holes_for(blocks: &[Vec<usize>], explicit: Option<usize>) -> usize {
    let max = blocks.iter().flatten().copied().max().unwrap_or(0);
    explicit.unwrap_or(max).max(max)
}

/// Both sides of a named relation.
pub fn build(name: RelationName, params: &RelationParams) -> Result<(TwistWord, TwistWord)> {
    match name {
        RelationName::Lantern => {
            let blocks = params.blocks.clone().unwrap_or_else(|| singletons(3));
            let [a, b, c] = blocks.as_slice() else {
                return Err(Error::UnknownRelation(format!(
                    "lantern needs three blocks, got {}",
                    blocks.len()
                )));
            };
            lantern(holes_for(&blocks, params.holes), a, b, c)
        }
        RelationName::Daisy => {
            let blocks = params
                .blocks
                .clone()
                .unwrap_or_else(|| singletons(params.m.unwrap_or(3) + 1));
            daisy(holes_for(&blocks, params.holes), &blocks)
        }
        RelationName::Park => {
            let blocks = params.blocks.clone().unwrap_or_else(|| singletons(5));
            park(holes_for(&blocks, params.holes), &blocks)
        }
        RelationName::Genlantern => genlantern(params.i.unwrap_or(2)),
        RelationName::Qr => pair(6, QR_LHS, QR_RHS),
        RelationName::Uv => pair(8, UV_LHS, UV_RHS),
        RelationName::Kl => pair(5, KL_LHS, KL_RHS),
        RelationName::Mn => pair(7, MN_LHS, MN_RHS),
        RelationName::Op => pair(9, OP_LHS, OP_RHS),
    }
}

fn pair(holes: usize, l: &str, r: &str) -> Result<(TwistWord, TwistWord)> {
    Ok((TwistWord::parse(holes, l)?, TwistWord::parse(holes, r)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub name: &'static str,
    pub params: RelationParams,
    pub holes: usize,
    pub lhs: TwistWord,
    pub rhs: TwistWord,
    pub equal: bool,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

pub fn verify_named_relation(name: &str, params: &RelationParams) -> Result<RelationReport> {
    let relation = RelationName::parse(name)?;
    let started = Instant::now();
    let (lhs, rhs) = build(relation, params)?;
    let equal = words_equal(&lhs, &rhs)?;
    Ok(RelationReport {
        name: relation.as_str(),
        params: params.clone(),
        holes: lhs.holes(),
        lhs,
        rhs,
        equal,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Every relation obtained by toggling one hole in one letter of either side.
pub fn single_hole_perturbations(lhs: &TwistWord, rhs: &TwistWord) -> Vec<(TwistWord, TwistWord)> {
    let mut out = Vec::new();
    for side in 0..2 {
        let w = if side == 0 { lhs } else { rhs };
        for (k, letter) in w.letters().iter().enumerate() {
            for h in 1..=w.holes() {
                let holes: Vec<usize> = if letter.curve.contains(h) {
                    letter.curve.holes().iter().copied().filter(|&x| x != h).collect()
                } else {
                    letter.curve.holes().iter().copied().chain([h]).collect()
                };
                let Ok(curve) = ConvexCurve::new(holes) else {
                    continue;
                };
                let mut letters = w.letters().to_vec();
                letters[k] = Twist {
                    curve,
                    power: letter.power,
                };
                let changed = TwistWord::new(w.holes(), letters).expect("labels stay in range");
                if side == 0 {
                    out.push((changed, rhs.clone()));
                } else {
                    out.push((lhs.clone(), changed));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(cyclic_three_partitions(3).len(), 3);
        assert_eq!(cyclic_three_partitions(6).len(), 60);
    }

    #[test]
    fn genlantern_shapes() {
        let (l, r) = genlantern(2).unwrap();
        assert_eq!(l.to_string(), "D1234 D1^2 D2^2 D3^2 D4^2");
        assert_eq!(r.to_string(), "D12 D13 D14 D23 D24 D34");
    }

    #[test]
    fn daisy_shape() {
        let (l, r) = build(RelationName::Daisy, &RelationParams::default()).unwrap();
        assert_eq!(l.to_string(), "D1234 D1^2 D2 D3 D4");
        assert_eq!(r.to_string(), "D12 D13 D14 D234");
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            verify_named_relation("braid", &RelationParams::default()),
            Err(Error::UnknownRelation(_))
        ));
    }
}
