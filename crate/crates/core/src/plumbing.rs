//! Star-shaped plumbings of spheres: invariants, boundary open books and Spin^c orbits.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlin::{
    cokernel, quadratic_form_profile, rational_inverse, smith_normal_form, AbelianGroup, Definiteness,
    IntegerMatrix, Rational, RationalMatrix,
};
use crate::mcg::{Twist, TwistWord};
use crate::{Error, Result};

/// A star-shaped plumbing graph. Vertex 0 is the center; arms follow in order, each listed
/// outward from the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarPlumbing {
    pub center: i64,
    pub arms: Vec<Vec<i64>>,
    /// Hole labels for each arm's end block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arm_labels: Option<Vec<Vec<usize>>>,
    /// Labels of the center holes beyond the outer boundary.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_labels: Option<Vec<usize>>,
}

/// Where the boundary-parallel twist goes in a generated word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OuterTwist {
    #[default]
    First,
    Last,
}

impl StarPlumbing {
    pub fn new(center: i64, arms: Vec<Vec<i64>>) -> Self {
        Self {
            center,
            arms,
            arm_labels: None,
            center_labels: None,
        }
    }

    pub fn with_labels(mut self, arm_labels: Vec<Vec<usize>>, center_labels: Vec<usize>) -> Self {
        self.arm_labels = Some(arm_labels);
        self.center_labels = Some(center_labels);
        self
    }

    /// Center `-(i+3)` with `i+2` arms of `i-1` spheres of square `-2`.
    pub fn star(i: usize) -> Self {
        assert!(i >= 1, "the star family starts at 1");
        let arms = if i == 1 { Vec::new() } else { vec![vec![-2; i - 1]; i + 2] };
        Self::new(-(i as i64) - 3, arms)
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.arms.iter().map(Vec::len).sum::<usize>()
    }

    pub fn weights(&self) -> Vec<i64> {
        std::iter::once(self.center).chain(self.arms.iter().flatten().copied()).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        let mut next = 1;
        for arm in &self.arms {
            let mut prev = 0;
            for _ in arm {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for (a, b) in self.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.edges().contains(&(a.min(b), a.max(b)))
    }

    pub fn gram(&self) -> IntegerMatrix {
        let w = self.weights();
        let mut g = IntegerMatrix::diagonal(&w.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        for (a, b) in self.edges() {
            g.set(a, b, BigInt::from(1));
            g.set(b, a, BigInt::from(1));
        }
        g
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 + 1
    }

    /// Vertices with `weight + degree > 0`.
    pub fn bad_vertices(&self) -> Vec<usize> {
        self.weights()
            .iter()
            .zip(self.degrees())
            .enumerate()
            .filter(|(_, (&w, d))| w + *d as i64 > 0)
            .map(|(v, _)| v)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlumbingInvariants {
    pub vertices: usize,
    pub euler_characteristic: i64,
    pub signature: i64,
    pub gram: IntegerMatrix,
    #[serde(serialize_with = "crate::json::int")]
    pub determinant: BigInt,
    pub boundary_h1: AbelianGroup,
}

pub fn plumbing_invariants(g: &StarPlumbing) -> Result<PlumbingInvariants> {
    let gram = g.gram();
    let profile = quadratic_form_profile(&gram)?;
    if profile.definiteness != Definiteness::NegativeDefinite {
        return Err(Error::NotNegativeDefinite);
    }
    Ok(PlumbingInvariants {
        vertices: g.vertex_count(),
        euler_characteristic: g.euler_characteristic(),
        signature: profile.signature(),
        determinant: gram.determinant()?,
        boundary_h1: cokernel(&gram),
        gram,
    })
}

/// Hole blocks for the generated open book: one block per arm end, one singleton per
/// extra center hole.
fn hole_blocks(g: &StarPlumbing) -> Result<(usize, Vec<Vec<usize>>, Vec<usize>)> {
    if let Some(v) = g.bad_vertices().first() {
        return Err(Error::UnsupportedShape(format!("vertex {v} is bad")));
    }
    let k0 = (g.center + g.arms.len() as i64).unsigned_abs() as usize;
    if k0 == 0 {
        return Err(Error::UnsupportedShape("the center has no outer twist".into()));
    }
    let mut sizes = Vec::with_capacity(g.arms.len());
    for (j, arm) in g.arms.iter().enumerate() {
        let (end, inner) = arm
            .split_last()
            .ok_or_else(|| Error::UnsupportedShape(format!("arm {} is empty", j + 1)))?;
        if inner.iter().any(|&w| w != -2) {
            return Err(Error::UnsupportedShape(format!("arm {} has an inner vertex of weight other than -2", j + 1)));
        }
        sizes.push((end + 1).unsigned_abs() as usize);
    }
    let holes = sizes.iter().sum::<usize>() + k0 - 1;
    let (blocks, extra) = match (&g.arm_labels, &g.center_labels) {
        (Some(arms), center) => {
            let center = center.clone().unwrap_or_default();
            if arms.len() != sizes.len() || arms.iter().zip(&sizes).any(|(b, &s)| b.len() != s) || center.len() != k0 - 1 {
                return Err(Error::UnsupportedShape("hole labels do not match the graph".into()));
            }
            let all: BTreeSet<usize> = arms.iter().flatten().chain(&center).copied().collect();
            if all.len() != holes || all.iter().any(|&h| h == 0 || h > holes) {
                return Err(Error::UnsupportedShape("hole labels must be a permutation of 1..=holes".into()));
            }
            (arms.clone(), center)
        }
        (None, _) => {
            let mut next = 1;
            let blocks = sizes
                .iter()
                .map(|&s| {
                    let b = (next..next + s).collect();
                    next += s;
                    b
                })
                .collect();
            (blocks, (next..=holes).collect())
        }
    };
    Ok((holes, blocks, extra))
}

/// Boundary open-book monodromy of the plumbing's Lefschetz fibration.
///
/// Blocks appear in order of their smallest hole label.
pub fn gaymark_word(g: &StarPlumbing, outer: OuterTwist) -> Result<TwistWord> {
    let (holes, blocks, extra) = hole_blocks(g)?;
    let mut pieces: Vec<(usize, Vec<Twist>)> = Vec::new();
    for (block, arm) in blocks.iter().zip(&g.arms) {
        let mut letters = Vec::new();
        if block.len() == 1 {
            letters.push(Twist::new(block.iter().copied(), arm.len() as i64 + 1)?);
        } else {
            letters.push(Twist::new(block.iter().copied(), arm.len() as i64)?);
            for &c in block {
                letters.push(Twist::new([c], 1)?);
            }
        }
        pieces.push((block.iter().copied().min().unwrap_or(0), letters));
    }
    for &c in &extra {
        pieces.push((c, vec![Twist::new([c], 1)?]));
    }
    pieces.sort_by_key(|(m, _)| *m);
    let all = Twist::new(1..=holes, 1)?;
    let mut letters: Vec<Twist> = pieces.into_iter().flat_map(|(_, l)| l).collect();
    match outer {
        OuterTwist::First => letters.insert(0, all),
        OuterTwist::Last => letters.push(all),
    }
    TwistWord::new(holes, letters)
}

/// Representative of `x` modulo 2 in `(-1, 1]`.
pub fn reduce_mod2(x: &Rational) -> Rational {
    let two = Rational::from_integer(BigInt::from(2));
    let shifted = (x + Rational::from_integer(BigInt::from(1))) / &two;
    let k = shifted.ceil() - Rational::from_integer(BigInt::from(1));
    x - k * two
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitEntry {
    #[serde(serialize_with = "crate::json::ints")]
    pub representative: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::rational")]
    pub d: Rational,
    #[serde(serialize_with = "crate::json::rational")]
    pub reduced: Rational,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub box_size: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitEntry>,
    #[serde(serialize_with = "crate::json::rationals")]
    pub reduced_values: Vec<Rational>,
    #[serde(serialize_with = "crate::json::int_rows")]
    pub phi: Vec<Vec<BigInt>>,
}

/// Invariant key of `t` in `Z^k / 2·G·Z^k`.
pub struct OrbitKey {
    left: IntegerMatrix,
    moduli: Vec<BigInt>,
}

impl OrbitKey {
    pub fn new(gram: &IntegerMatrix) -> Self {
        let twice = IntegerMatrix::from_fn(gram.rows(), gram.cols(), |i, j| gram.get(i, j) * 2);
        let snf = smith_normal_form(&twice);
        Self {
            moduli: snf.diagonal_entries(),
            left: snf.left,
        }
    }

    pub fn key(&self, t: &[BigInt]) -> Vec<BigInt> {
        let ut = self.left.mul_vec(t).expect("dimension checked by caller");
        ut.iter()
            .zip(&self.moduli)
            .map(|(x, m)| if m.is_zero() { x.clone() } else { x.mod_floor(m) })
            .collect()
    }
}

/// `(tᵀ G⁻¹ t - 3σ - 2χ) / 4` for a tuple of pairings against the vertices.
pub fn dimension(ginv: &RationalMatrix, t: &[BigInt], sigma: i64, chi: i64) -> Result<Rational> {
    let tq: Vec<Rational> = t.iter().cloned().map(Rational::from_integer).collect();
    let sq = ginv.bilinear(&tq, &tq)?;
    Ok((sq - Rational::from_integer(BigInt::from(3 * sigma + 2 * chi))) / Rational::from_integer(BigInt::from(4)))
}

/// Characteristic tuples `w+2 ≤ t ≤ -w`, `t ≡ w mod 2`, for each vertex weight `w`.
pub fn characteristic_box(weights: &[i64]) -> Vec<Vec<BigInt>> {
    weights
        .iter()
        .map(|&w| (w + 2..=-w).step_by(2).map(BigInt::from).collect::<Vec<_>>())
        .multi_cartesian_product()
        .collect()
}

/// Partitions the characteristic box into orbits of `2·Gram·Z^k` and keeps the
/// maximal-dimension representative of each orbit.
pub fn spinc_orbit_analysis(g: &StarPlumbing, allowed: &BTreeSet<Rational>) -> Result<OrbitReport> {
    let inv = plumbing_invariants(g)?;
    let ginv = rational_inverse(&inv.gram)?;
    let keyer = OrbitKey::new(&inv.gram);
    let tuples = characteristic_box(&g.weights());
    let mut orbits: BTreeMap<Vec<BigInt>, OrbitEntry> = BTreeMap::new();
    for t in &tuples {
        let d = dimension(&ginv, t, inv.signature, inv.euler_characteristic)?;
        let entry = orbits.entry(keyer.key(t)).or_insert_with(|| OrbitEntry {
            representative: t.clone(),
            reduced: reduce_mod2(&d),
            d: d.clone(),
            size: 0,
        });
        entry.size += 1;
        if d > entry.d || (d == entry.d && *t < entry.representative) {
            entry.representative = t.clone();
            entry.d = d;
        }
    }
    let mut orbits: Vec<OrbitEntry> = orbits.into_values().collect();
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    let reduced_values: BTreeSet<Rational> = orbits.iter().map(|o| o.reduced.clone()).collect();
    let phi = orbits
        .iter()
        .filter(|o| allowed.contains(&o.reduced))
        .map(|o| o.representative.clone())
        .collect();
    Ok(OrbitReport {
        box_size: tuples.len(),
        orbit_count: orbits.len(),
        orbits,
        reduced_values: reduced_values.into_iter().collect(),
        phi,
    })
}

/// Reduced dimensions realized by characteristic covectors on an arbitrary negative
/// definite lattice, one value per class of `Z^k / 2·G·Z^k` that meets the box.
pub fn lattice_reduced_dimensions(gram: &IntegerMatrix, sigma: i64, chi: i64) -> Result<BTreeSet<Rational>> {
    let ginv = rational_inverse(gram)?;
    let weights: Vec<i64> = (0..gram.rows())
        .map(|i| gram.get(i, i).to_i64().ok_or(Error::UnsupportedShape("weight too large".into())))
        .collect::<Result<_>>()?;
    characteristic_box(&weights)
        .iter()
        .map(|t| dimension(&ginv, t, sigma, chi).map(|d| reduce_mod2(&d)))
        .collect()
}

/// `true` when `t - s` lies in `2·G·Z^k`.
pub fn same_orbit(gram: &IntegerMatrix, t: &[BigInt], s: &[BigInt]) -> Result<bool> {
    let diff: Vec<BigInt> = t.iter().zip(s).map(|(a, b)| a - b).collect();
    let x = crate::exactlin::solve_rational(gram, &diff)?;
    Ok(x.iter().all(|q| (q / Rational::from_integer(BigInt::from(2))).is_integer()))
}

/// Square `tᵀ G⁻¹ t` of the covector with pairings `t`.
pub fn covector_square(gram: &IntegerMatrix, t: &[BigInt]) -> Result<Rational> {
    let x = crate::exactlin::solve_rational(gram, t)?;
    Ok(t.iter().zip(&x).map(|(a, b)| Rational::from_integer(a.clone()) * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn reduction_interval() {
        assert_eq!(reduce_mod2(&rat(-1, 1)), rat(1, 1));
        assert_eq!(reduce_mod2(&rat(1, 1)), rat(1, 1));
        assert_eq!(reduce_mod2(&rat(3, 1)), rat(1, 1));
        assert_eq!(reduce_mod2(&rat(-11, 12)), rat(-11, 12));
        assert_eq!(reduce_mod2(&rat(13, 12)), rat(-11, 12));
        assert_eq!(reduce_mod2(&rat(-7, 3)), rat(-1, 3));
        assert_eq!(reduce_mod2(&rat(0, 1)), rat(0, 1));
    }

    #[test]
    fn star_shapes() {
        let s2 = StarPlumbing::star(2);
        assert_eq!(s2.weights(), vec![-5, -2, -2, -2, -2]);
        assert_eq!(s2.edges().len(), 4);
        assert!(s2.bad_vertices().is_empty());
        assert!(!StarPlumbing::new(-1, vec![vec![-2], vec![-2]]).bad_vertices().is_empty());
    }
}
