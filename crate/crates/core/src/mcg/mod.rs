//! Mapping classes of a disk with holes, written as words in Dehn twists about convex curves.
//!
//! Holes sit in convex position and are labelled `1..=n` counterclockwise. A twist word is
//! read left to right: the leftmost letter acts first. Equality is decided by cabling each
//! hole into a pair of strands and comparing loop coordinates of the resulting braids.

pub mod braid;
pub mod dynnikov;
pub mod relations;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
pub use braid::BraidWord;
pub use dynnikov::{invariant, LoopCoordinates};

/// The convex curve enclosing a nonempty set of holes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvexCurve(Vec<usize>);

impl ConvexCurve {
    pub fn new(holes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = holes.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(Self(set.into_iter().collect()))
    }

    pub fn holes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, hole: usize) -> bool {
        self.0.binary_search(&hole).is_ok()
    }

    pub fn max_hole(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().all(|h| other.contains(*h))
    }

    /// Disjoint sets whose members alternate around the circle.
    fn interleaves(&self, other: &Self) -> bool {
        let s = &self.0;
        let gap = |t: usize| {
            let k = s.partition_point(|&x| x < t);
            if k == s.len() {
                0
            } else {
                k
            }
        };
        let mut gaps = other.0.iter().map(|&t| gap(t));
        let first = gaps.next();
        gaps.any(|g| Some(g) != first)
    }

    /// Whether the two curves can be isotoped apart (or coincide).
    pub fn commutes_with(&self, other: &Self) -> bool {
        if self.is_subset(other) || other.is_subset(self) {
            return true;
        }
        let disjoint = self.0.iter().all(|h| !other.contains(*h));
        disjoint && !self.interleaves(other)
    }
}

impl fmt::Display for ConvexCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&h| h < 10) {
            for h in &self.0 {
                write!(f, "{h}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

/// `D_S^power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    pub curve: ConvexCurve,
    pub power: i64,
}

impl Twist {
    pub fn new(holes: impl IntoIterator<Item = usize>, power: i64) -> Result<Self> {
        Ok(Self {
            curve: ConvexCurve::new(holes)?,
            power,
        })
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.curve)?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistWord {
    holes: usize,
    letters: Vec<Twist>,
}

impl TwistWord {
    /// Drops zero powers; checks every hole label against `holes`.
    pub fn new(holes: usize, letters: Vec<Twist>) -> Result<Self> {
        for t in &letters {
            if let Some(&h) = t.curve.holes().iter().find(|&&h| h == 0 || h > holes) {
                return Err(Error::BadHole { hole: h, holes });
            }
        }
        let letters = letters.into_iter().filter(|t| t.power != 0).collect();
        Ok(Self { holes, letters })
    }

    pub fn identity(holes: usize) -> Self {
        Self {
            holes,
            letters: Vec::new(),
        }
    }

    /// Parses `D123^2 D45 D{10,11}^-1`; labels written without braces are single digits.
    pub fn parse(holes: usize, text: &str) -> Result<Self> {
        Self::new(holes, parse_letters(text)?)
    }

    /// Parses and takes the hole count from the largest label.
    pub fn parse_auto(text: &str) -> Result<Self> {
        let letters = parse_letters(text)?;
        let holes = letters.iter().map(|t| t.curve.max_hole()).max().unwrap_or(0);
        Self::new(holes, letters)
    }

    pub fn holes(&self) -> usize {
        self.holes
    }

    pub fn letters(&self) -> &[Twist] {
        &self.letters
    }

    pub fn letter_count(&self) -> u64 {
        self.letters.iter().map(|t| t.power.unsigned_abs()).sum()
    }

    pub fn with_holes(&self, holes: usize) -> Result<Self> {
        Self::new(holes, self.letters.clone())
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.holes != other.holes {
            return Err(Error::HoleCountMismatch(self.holes, other.holes));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Self {
            holes: self.holes,
            letters,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            holes: self.holes,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|t| Twist {
                    curve: t.curve.clone(),
                    power: -t.power,
                })
                .collect(),
        }
    }

    /// One letter per unit power.
    pub fn expanded(&self) -> Vec<(ConvexCurve, i64)> {
        self.letters
            .iter()
            .flat_map(|t| std::iter::repeat_n((t.curve.clone(), t.power.signum()), t.power.unsigned_abs() as usize))
            .collect()
    }

    /// Merges adjacent letters on the same curve.
    pub fn collected(&self) -> Self {
        Self::from_units(self.holes, self.expanded())
    }

    fn from_units(holes: usize, units: impl IntoIterator<Item = (ConvexCurve, i64)>) -> Self {
        let mut letters: Vec<Twist> = Vec::new();
        for (curve, p) in units {
            match letters.last_mut() {
                Some(last) if last.curve == curve => {
                    last.power += p;
                    if last.power == 0 {
                        letters.pop();
                    }
                }
                _ => letters.push(Twist { curve, power: p }),
            }
        }
        Self { holes, letters }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_auto(s)
    }
}

impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_letters(text: &str) -> Result<Vec<Twist>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |pos: usize, what: &str| Error::SyntaxError {
        line: 1,
        column: pos + 1,
        expectation: what.to_string(),
    };
    let number = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    loop {
        while i < chars.len() && (chars[i].is_whitespace() || chars[i] == '*' || chars[i] == '.') {
            i += 1;
        }
        if i == chars.len() {
            break;
        }
        if chars[i] != 'D' {
            return Err(err(i, "`D` starting a twist"));
        }
        i += 1;
        if i < chars.len() && chars[i] == '_' {
            i += 1;
        }
        let mut holes = Vec::new();
        if i < chars.len() && chars[i] == '{' {
            i += 1;
            let close = chars[i..]
                .iter()
                .position(|&c| c == '}')
                .ok_or_else(|| err(i, "closing `}`"))?
                + i;
            let inner: String = chars[i..close].iter().collect();
            if inner.contains(',') {
                for part in inner.split(',') {
                    let h = part.trim().parse().map_err(|_| err(i, "hole label"))?;
                    holes.push(h);
                }
            } else {
                for (k, c) in inner.chars().enumerate() {
                    let h = c.to_digit(10).ok_or_else(|| err(i + k, "hole digit"))?;
                    holes.push(h as usize);
                }
            }
            i = close + 1;
        } else {
            while i < chars.len() && chars[i].is_ascii_digit() {
                holes.push(chars[i].to_digit(10).expect("digit") as usize);
                i += 1;
            }
        }
        if holes.is_empty() {
            return Err(err(i, "hole labels"));
        }
        let mut power: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let braced = i < chars.len() && chars[i] == '{';
            if braced {
                i += 1;
            }
            let negative = i < chars.len() && chars[i] == '-';
            if negative {
                i += 1;
            }
            let start = i;
            let p = number(&mut i).ok_or_else(|| err(start, "exponent"))? as i64;
            power = if negative { -p } else { p };
            if braced {
                if i < chars.len() && chars[i] == '}' {
                    i += 1;
                } else {
                    return Err(err(i, "closing `}`"));
                }
            }
        }
        out.push(Twist::new(holes, power)?);
    }
    Ok(out)
}

/// How a non-contiguous hole set is gathered before twisting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gathering {
    /// Member cables cross over the cables they pass.
    Over,
    /// Mirrored: member cables cross under.
    Under,
}

fn cable_crossing(w: &mut BraidWord, p: usize, sign: i32) {
    let s = 2 * p as i32;
    for g in [s, s - 1, s + 1, s] {
        w.push(sign * g);
    }
}

fn twist_braid(holes: usize, curve: &ConvexCurve, gathering: Gathering) -> BraidWord {
    let strands = 2 * holes;
    let sign = match gathering {
        Gathering::Over => 1,
        Gathering::Under => -1,
    };
    let mut member: Vec<bool> = (1..=holes).map(|h| curve.contains(h)).collect();
    let right = curve.max_hole();
    let k = curve.len();
    let mut gather = BraidWord::identity(strands);
    // walk members leftward from the rightmost, sliding each one right over the gap
    let mut target = right;
    for pos in (1..right).rev() {
        if !member[pos - 1] {
            continue;
        }
        target -= 1;
        for p in pos..target {
            cable_crossing(&mut gather, p, sign);
            member.swap(p - 1, p);
        }
    }
    let first = 2 * (right - k) + 1;
    let twist = BraidWord::full_twist(strands, first, 2 * right);
    let mut w = gather.clone();
    w.extend_from(&twist);
    w.extend_from(&gather.inverse());
    w
}

/// The cabled braid on `2n` strands with an explicit gathering convention.
pub fn compile_with(word: &TwistWord, gathering: Gathering) -> BraidWord {
    let mut out = BraidWord::identity(2 * word.holes.max(1));
    for t in &word.letters {
        let unit = twist_braid(word.holes, &t.curve, gathering);
        let unit = if t.power < 0 { unit.inverse() } else { unit };
        for _ in 0..t.power.unsigned_abs() {
            out.extend_from(&unit);
        }
    }
    out
}

/// The cabled braid under the self-tested default convention.
pub fn compile_to_braid(word: &TwistWord) -> BraidWord {
    compile_with(word, default_gathering())
}

/// Loop coordinates of the cabled braid.
pub fn word_invariant(word: &TwistWord, gathering: Gathering) -> LoopCoordinates {
    invariant(&compile_with(word, gathering))
}

pub fn words_equal_with(w1: &TwistWord, w2: &TwistWord, gathering: Gathering) -> Result<bool> {
    if w1.holes != w2.holes {
        return Err(Error::HoleCountMismatch(w1.holes, w2.holes));
    }
    Ok(word_invariant(w1, gathering) == word_invariant(w2, gathering))
}

pub fn words_equal(w1: &TwistWord, w2: &TwistWord) -> Result<bool> {
    words_equal_with(w1, w2, default_gathering())
}

/// Checks the lantern relation on every partition of `3..=5` holes into three cyclic intervals.
pub fn lantern_self_test(gathering: Gathering) -> bool {
    (3..=5).all(|n| {
        relations::cyclic_three_partitions(n).into_iter().all(|blocks| {
            let (l, r) = relations::lantern(n, &blocks[0], &blocks[1], &blocks[2]).expect("valid blocks");
            words_equal_with(&l, &r, gathering).expect("same hole count")
        })
    })
}

/// The convention that passes the lantern self-test, preferring [`Gathering::Over`].
pub fn default_gathering() -> Gathering {
    static CHOICE: OnceLock<Gathering> = OnceLock::new();
    *CHOICE.get_or_init(|| {
        if lantern_self_test(Gathering::Over) {
            Gathering::Over
        } else {
            log::warn!("lantern self-test failed for over-gathering; using the mirrored convention");
            Gathering::Under
        }
    })
}

/// Lexicographic normal form up to commuting adjacent letters.
pub fn commutation_normal_form(word: &TwistWord) -> Vec<(ConvexCurve, i64)> {
    let mut rest = word.expanded();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for j in 0..rest.len() {
            let free = rest[..j].iter().all(|(c, _)| c.commutes_with(&rest[j].0));
            if free && best.is_none_or(|b| rest[j] < rest[b]) {
                best = Some(j);
            }
        }
        out.push(rest.remove(best.expect("first letter is always free")));
    }
    out
}

/// Equality as words up to commuting twists about disjoint or nested curves.
pub fn commutation_equivalent(w1: &TwistWord, w2: &TwistWord) -> bool {
    w1.holes == w2.holes && commutation_normal_form(w1) == commutation_normal_form(w2)
}

/// Replaces hole `i` by the adjacent pair `i, i+1`; later labels shift up by one.
pub fn split_hole(word: &TwistWord, hole: usize) -> Result<TwistWord> {
    if hole == 0 || hole > word.holes {
        return Err(Error::BadHole {
            hole,
            holes: word.holes,
        });
    }
    let letters = word
        .letters
        .iter()
        .map(|t| {
            let mut hs: Vec<usize> = t
                .curve
                .holes()
                .iter()
                .map(|&h| if h > hole { h + 1 } else { h })
                .collect();
            if t.curve.contains(hole) {
                hs.push(hole + 1);
            }
            Twist::new(hs, t.power)
        })
        .collect::<Result<Vec<_>>>()?;
    TwistWord::new(word.holes + 1, letters)
}

/// Replaces an occurrence of `lhs` (up to commutation) inside `word` by `rhs`.
///
/// Among all occurrences the one whose selected positions are lexicographically first wins.
pub fn substitute(word: &TwistWord, lhs: &TwistWord, rhs: &TwistWord) -> Result<TwistWord> {
    if word.holes != lhs.holes {
        return Err(Error::HoleCountMismatch(word.holes, lhs.holes));
    }
    if word.holes != rhs.holes {
        return Err(Error::HoleCountMismatch(word.holes, rhs.holes));
    }
    let w = word.expanded();
    let p = lhs.expanded();
    if p.is_empty() {
        let mut units = rhs.expanded();
        units.extend(w);
        return Ok(TwistWord::from_units(word.holes, units));
    }
    let n = w.len();
    // reach[i][j]: letter i must stay before letter j
    let mut reach = vec![vec![false; n]; n];
    for j in 0..n {
        for i in (0..j).rev() {
            if !w[i].0.commutes_with(&w[j].0) {
                reach[i][j] = true;
            }
            if !reach[i][j] {
                reach[i][j] = (i + 1..j).any(|k| reach[i][k] && reach[k][j]);
            }
        }
    }
    let target = lhs_normal(lhs);
    let mut chosen = Vec::new();
    let found = search(&w, &p, &target, &reach, 0, &mut chosen);
    let Some(sel) = found else {
        return Err(Error::PatternNotFound);
    };
    let selected: BTreeSet<usize> = sel.iter().copied().collect();
    let first = *sel.iter().min().expect("nonempty");
    let mut before = Vec::new();
    let mut after = Vec::new();
    for (i, letter) in w.iter().enumerate() {
        if selected.contains(&i) {
            continue;
        }
        let must_precede = i < first || selected.iter().any(|&s| s > i && reach[i][s]);
        if must_precede {
            before.push(letter.clone());
        } else {
            after.push(letter.clone());
        }
    }
    let mut units = before;
    units.extend(rhs.expanded());
    units.extend(after);
    Ok(TwistWord::from_units(word.holes, units))
}

fn lhs_normal(lhs: &TwistWord) -> Vec<(ConvexCurve, i64)> {
    commutation_normal_form(lhs)
}

fn search(
    w: &[(ConvexCurve, i64)],
    p: &[(ConvexCurve, i64)],
    target: &[(ConvexCurve, i64)],
    reach: &[Vec<bool>],
    start: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == p.len() {
        return accept(w, target, reach, chosen).then(|| chosen.clone());
    }
    let mut need: Vec<(ConvexCurve, i64)> = p.to_vec();
    for &c in chosen.iter() {
        if let Some(k) = need.iter().position(|x| *x == w[c]) {
            need.swap_remove(k);
        }
    }
    for i in start..w.len() {
        if w.len() - i < p.len() - chosen.len() {
            break;
        }
        if !need.contains(&w[i]) {
            continue;
        }
        chosen.push(i);
        if let Some(found) = search(w, p, target, reach, i + 1, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

fn accept(w: &[(ConvexCurve, i64)], target: &[(ConvexCurve, i64)], reach: &[Vec<bool>], sel: &[usize]) -> bool {
    let set: BTreeSet<usize> = sel.iter().copied().collect();
    let (lo, hi) = (sel[0], *sel.last().expect("nonempty"));
    // convexity: no outside letter is squeezed between two selected ones
    for x in lo + 1..hi {
        if set.contains(&x) {
            continue;
        }
        let below = sel.iter().any(|&a| a < x && reach[a][x]);
        let above = sel.iter().any(|&b| b > x && reach[x][b]);
        if below && above {
            return false;
        }
    }
    let sub = TwistWord::from_units(0, sel.iter().map(|&i| w[i].clone()));
    commutation_normal_form(&sub) == target
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> TwistWord {
        TwistWord::parse(n, s).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let q = w(6, "D123456 D12 D1 D2 D3^2 D45^2 D4 D5 D6^3");
        assert_eq!(q.to_string(), "D123456 D12 D1 D2 D3^2 D45^2 D4 D5 D6^3");
        assert_eq!(q.letter_count(), 13);
        let big = w(11, "D_{10,11}^{-1} D{1,10}");
        assert_eq!(big.to_string(), "D{10,11}^-1 D{1,10}");
        assert_eq!(TwistWord::parse(11, &big.to_string()).unwrap(), big);
        assert!(matches!(TwistWord::parse(3, "D12 X3"), Err(Error::SyntaxError { column: 5, .. })));
        assert!(matches!(TwistWord::parse(3, "D14"), Err(Error::BadHole { hole: 4, .. })));
    }

    #[test]
    fn contiguous_twists_are_full_twists() {
        let b = compile_with(&w(2, "D12"), Gathering::Over);
        assert_eq!(b, BraidWord::full_twist(4, 1, 4));
        assert_eq!(b.letters(), [1, 2, 3].repeat(4).as_slice());
        let b = compile_with(&w(3, "D1"), Gathering::Over);
        assert_eq!(b.letters(), &[1, 1]);
    }

    #[test]
    fn empty_subset_rejected() {
        assert_eq!(ConvexCurve::new([]), Err(Error::EmptySubset));
    }

    #[test]
    fn commuting_curves() {
        let c = |v: &[usize]| ConvexCurve::new(v.iter().copied()).unwrap();
        assert!(c(&[1, 2]).commutes_with(&c(&[3, 4])));
        assert!(c(&[1, 4]).commutes_with(&c(&[2, 3])));
        assert!(!c(&[1, 3]).commutes_with(&c(&[2, 4])));
        assert!(c(&[1]).commutes_with(&c(&[1, 2, 3])));
        assert!(!c(&[1, 2]).commutes_with(&c(&[2, 3])));
    }

    #[test]
    fn lantern_selects_a_convention() {
        let l = w(3, "D123 D1 D2 D3");
        let r = w(3, "D12 D13 D23");
        assert!(words_equal(&l, &r).unwrap());
        assert!(!words_equal(&w(3, "D12"), &w(3, "D13")).unwrap());
    }

    #[test]
    fn split_relabels() {
        let k = w(5, "D1^2 D2^2 D3 D4^2 D5^2 D12345");
        let s = split_hole(&k, 2).unwrap();
        assert_eq!(s.to_string(), "D1^2 D23^2 D4 D5^2 D6^2 D123456");
        assert!(matches!(split_hole(&k, 6), Err(Error::BadHole { hole: 6, holes: 5 })));
    }
}
