//! Dotted-circle handlebodies whose 2-handles run over convex hole subsets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlin::{
    cokernel, integer_kernel, quadratic_form_profile, smith_normal_form, AbelianGroup, Definiteness, IntegerMatrix,
};
use crate::mcg::TwistWord;
use crate::{Error, Result};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handle {
    pub holes: Vec<usize>,
    pub framing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handlebody {
    pub holes: usize,
    pub handles: Vec<Handle>,
}

impl Handlebody {
    pub fn new(holes: usize, handles: Vec<Handle>) -> Result<Self> {
        for h in &handles {
            if h.holes.is_empty() {
                return Err(Error::EmptySubset);
            }
            if let Some(&bad) = h.holes.iter().find(|&&c| c == 0 || c > holes) {
                return Err(Error::BadHole { hole: bad, holes });
            }
        }
        let handles = handles
            .into_iter()
            .map(|h| Handle {
                holes: h.holes.into_iter().collect::<BTreeSet<_>>().into_iter().collect(),
                framing: h.framing,
            })
            .collect();
        Ok(Self { holes, handles })
    }

    /// One `(-1)`-framed handle per positive letter of a vanishing-cycle word.
    pub fn from_word(word: &TwistWord) -> Result<Self> {
        let mut handles = Vec::new();
        for (curve, power) in word.expanded() {
            if power < 0 {
                return Err(Error::UnsupportedShape("vanishing cycles must be positive twists".into()));
            }
            handles.push(Handle {
                holes: curve.holes().to_vec(),
                framing: -1,
            });
        }
        Self::new(word.holes(), handles)
    }

    /// Filling with a handle over every pair of `holes` holes.
    pub fn all_pairs(holes: usize) -> Self {
        let mut handles = Vec::new();
        for a in 1..=holes {
            for b in a + 1..=holes {
                handles.push(Handle {
                    holes: vec![a, b],
                    framing: -1,
                });
            }
        }
        Self { holes, handles }
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - self.holes as i64 + self.handles.len() as i64
    }

    /// Boundary map `C₂ → C₁`: rows are holes, columns handles.
    pub fn incidence(&self) -> IntegerMatrix {
        IntegerMatrix::from_fn(self.holes, self.handles.len(), |i, j| {
            BigInt::from(i64::from(self.handles[j].holes.contains(&(i + 1))))
        })
    }

    /// Linking matrix of the surgery diagram with dotted circles as 0-framed unknots.
    pub fn linking_matrix(&self) -> IntegerMatrix {
        let (n, k) = (self.holes, self.handles.len());
        IntegerMatrix::from_fn(n + k, n + k, |i, j| {
            if i < n && j >= n {
                BigInt::from(i64::from(self.handles[j - n].holes.contains(&(i + 1))))
            } else if i >= n && j < n {
                BigInt::from(i64::from(self.handles[i - n].holes.contains(&(j + 1))))
            } else if i >= n && i == j {
                BigInt::from(self.handles[i - n].framing)
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn presentation(&self) -> GroupPresentation {
        GroupPresentation::new(
            self.holes,
            self.handles
                .iter()
                .map(|h| h.holes.iter().map(|&c| c as i32).collect())
                .collect(),
        )
    }
}

/// Finite presentation; letter `±i` is generator `i` or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| {
                let mut out: Vec<i32> = Vec::with_capacity(r.len());
                for l in r {
                    assert!(l != 0 && l.unsigned_abs() as usize <= generators, "letter {l} out of range");
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                out
            })
            .filter(|r| !r.is_empty())
            .collect();
        Self { generators, relators }
    }

    /// Relation matrix of the abelianization: rows relators, columns generators.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for &l in r {
                let j = l.unsigned_abs() as usize - 1;
                let v = m.get(i, j) + BigInt::from(l.signum());
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn abelianization(&self) -> AbelianGroup {
        cokernel(&self.relation_matrix().transpose())
    }

    /// Order of the group by coset enumeration over the trivial subgroup.
    pub fn order(&self, max_cosets: usize) -> Result<usize> {
        CosetTable::enumerate(self, max_cosets)
    }
}

/// Hasselgrove–Leech–Trotter coset enumeration.
struct CosetTable {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    forward: Vec<usize>,
    live: Vec<bool>,
    defined: usize,
    budget: usize,
}

impl CosetTable {
    fn col(letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        2 * g + usize::from(letter < 0)
    }

    fn inv(col: usize) -> usize {
        col ^ 1
    }

    fn enumerate(p: &GroupPresentation, budget: usize) -> Result<usize> {
        let cols = 2 * p.generators;
        let mut t = Self {
            cols,
            table: vec![vec![None; cols]],
            forward: vec![0],
            live: vec![true],
            defined: 1,
            budget,
        };
        let relators: Vec<Vec<usize>> = p.relators.iter().map(|r| r.iter().map(|&l| Self::col(l)).collect()).collect();
        let mut c = 0;
        while c < t.table.len() {
            if t.live[c] {
                for r in &relators {
                    if !t.live[c] {
                        break;
                    }
                    t.scan_and_fill(c, r)?;
                }
                for x in 0..cols {
                    if !t.live[c] {
                        break;
                    }
                    if t.table[c][x].is_none() {
                        t.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(t.live.iter().filter(|&&l| l).count())
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.defined >= self.budget {
            return Err(Error::EnumerationBudgetExceeded(self.budget));
        }
        self.defined += 1;
        let d = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.forward.push(d);
        self.live.push(true);
        self.table[c][x] = Some(d);
        self.table[d][Self::inv(x)] = Some(c);
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j {
                match self.table[f][w[i as usize]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.table[b][Self::inv(w[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = Some(b);
                self.table[b][Self::inv(x)] = Some(f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] != r {
            r = self.forward[r];
        }
        let mut s = c;
        while self.forward[s] != r {
            let next = self.forward[s];
            self.forward[s] = r;
            s = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.forward[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut k = 0;
        while k < queue.len() {
            let e = queue[k];
            k += 1;
            self.live[e] = false;
            for x in 0..self.cols {
                if let Some(f) = self.table[e][x] {
                    let xi = Self::inv(x);
                    if self.table[f][xi] == Some(e) {
                        self.table[f][xi] = None;
                    }
                    let (e1, f1) = (self.rep(e), self.rep(f));
                    match (self.table[e1][x], self.table[f1][xi]) {
                        (Some(g), _) => self.merge(f1, g, &mut queue),
                        (None, Some(g)) => self.merge(e1, g, &mut queue),
                        (None, None) => {
                            self.table[e1][x] = Some(f1);
                            self.table[f1][xi] = Some(e1);
                        }
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Report {
    pub presentation: GroupPresentation,
    pub abelianization: AbelianGroup,
    /// `None` when enumeration ran out of budget.
    pub order: Option<usize>,
}

pub fn pi1_report(h: &Handlebody, max_cosets: usize) -> Pi1Report {
    let presentation = h.presentation();
    let order = match presentation.order(max_cosets) {
        Ok(o) => Some(o),
        Err(e) => {
            log::warn!("{e}");
            None
        }
    };
    Pi1Report {
        abelianization: presentation.abelianization(),
        presentation,
        order,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub euler_characteristic: i64,
    pub h2_rank: usize,
    #[serde(serialize_with = "crate::json::int_rows")]
    pub cycles: Vec<Vec<BigInt>>,
    pub gram: IntegerMatrix,
    pub definiteness: Definiteness,
    pub signature: i64,
    pub h1: AbelianGroup,
    pub h2_cohomology: AbelianGroup,
}

/// Intersection of two handle combinations; distinct handles are orthogonal.
pub fn cycle_pairing(h: &Handlebody, x: &[BigInt], y: &[BigInt]) -> BigInt {
    h.handles
        .iter()
        .zip(x.iter().zip(y))
        .map(|(hd, (a, b))| a * b * BigInt::from(hd.framing))
        .sum()
}

pub fn cycle_gram(h: &Handlebody, cycles: &[Vec<BigInt>]) -> IntegerMatrix {
    IntegerMatrix::from_fn(cycles.len(), cycles.len(), |i, j| cycle_pairing(h, &cycles[i], &cycles[j]))
}

/// Checks that `x` is a 2-cycle.
pub fn check_cycle(h: &Handlebody, x: &[BigInt]) -> Result<()> {
    if x.len() != h.handles.len() {
        return Err(Error::DimensionMismatch {
            expected: h.handles.len(),
            found: x.len(),
        });
    }
    let boundary = h.incidence().mul_vec(x)?;
    match boundary.iter().position(|b| !b.is_zero()) {
        Some(i) => Err(Error::NotACycle {
            hole: i + 1,
            coefficient: boundary[i].to_string(),
        }),
        None => Ok(()),
    }
}

/// `true` when `cycles` is a basis of the integral second homology.
pub fn is_h2_basis(h: &Handlebody, cycles: &[Vec<BigInt>]) -> Result<bool> {
    for c in cycles {
        check_cycle(h, c)?;
    }
    let kernel = integer_kernel(&h.incidence());
    if kernel.len() != cycles.len() {
        return Ok(false);
    }
    let m = IntegerMatrix::from_rows(cycles).transpose();
    let snf = smith_normal_form(&m);
    Ok(snf.rank == cycles.len() && snf.invariant_factors.is_empty() && {
        // The lattice spanned must also be saturated in Z^handles, like the kernel.
        let k = IntegerMatrix::from_rows(&kernel).transpose();
        let joint = IntegerMatrix::from_fn(m.rows(), m.cols() + k.cols(), |i, j| {
            if j < m.cols() {
                m.get(i, j).clone()
            } else {
                k.get(i, j - m.cols()).clone()
            }
        });
        smith_normal_form(&joint).rank == cycles.len()
    })
}

/// Homology of the handlebody, expressed on `basis` when given and otherwise on a kernel basis.
pub fn homology_report(h: &Handlebody, basis: Option<&[Vec<BigInt>]>) -> Result<HomologyReport> {
    let cycles = match basis {
        Some(b) => {
            if !is_h2_basis(h, b)? {
                return Err(Error::SchemaError {
                    field: "cycles".into(),
                    reason: "not a basis of the second homology".into(),
                });
            }
            b.to_vec()
        }
        None => integer_kernel(&h.incidence()),
    };
    let gram = cycle_gram(h, &cycles);
    let profile = if cycles.is_empty() {
        None
    } else {
        Some(quadratic_form_profile(&gram)?)
    };
    let incidence = h.incidence();
    Ok(HomologyReport {
        euler_characteristic: h.euler_characteristic(),
        h2_rank: cycles.len(),
        definiteness: profile.as_ref().map_or(Definiteness::Degenerate, |p| p.definiteness),
        signature: profile.as_ref().map_or(0, |p| p.signature()),
        h1: cokernel(&incidence),
        h2_cohomology: cokernel(&incidence.transpose()),
        cycles,
        gram,
    })
}

pub fn boundary_h1(h: &Handlebody) -> AbelianGroup {
    cokernel(&h.linking_matrix())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub boundary: AbelianGroup,
    #[serde(serialize_with = "crate::json::opt_int")]
    pub image_order: Option<BigInt>,
    #[serde(serialize_with = "crate::json::opt_int")]
    pub index: Option<BigInt>,
}

/// Index of the image of `H²(filling) → H₁(boundary)`; handle duals go to the sum of the
/// dotted-circle meridians they run over.
pub fn restriction_index(h: &Handlebody) -> RestrictionReport {
    let l = h.linking_matrix();
    let n = l.rows();
    let images: Vec<Vec<BigInt>> = h
        .handles
        .iter()
        .map(|hd| (0..n).map(|i| BigInt::from(i64::from(i < h.holes && hd.holes.contains(&(i + 1))))).collect())
        .collect();
    let augmented = IntegerMatrix::from_fn(n, n + images.len(), |i, j| {
        if j < n {
            l.get(i, j).clone()
        } else {
            images[j - n][i].clone()
        }
    });
    let boundary = cokernel(&l);
    let quotient = cokernel(&augmented);
    let index = quotient.order();
    let image_order = match (boundary.order(), &index) {
        (Some(b), Some(i)) if !i.is_zero() => Some(b / i),
        _ => None,
    };
    RestrictionReport {
        boundary,
        image_order,
        index,
    }
}

/// `c₁` on a 2-cycle: every vanishing cycle has winding number one.
pub fn c1_evaluate(h: &Handlebody, cycle: &[BigInt]) -> Result<BigInt> {
    check_cycle(h, cycle)?;
    Ok(cycle.iter().sum())
}

/// Handle combination from named handles such as `x12 + x34 - x13 - x24`.
pub fn cycle_from_terms(h: &Handlebody, terms: &[(i64, &[usize])]) -> Result<Vec<BigInt>> {
    let mut v = vec![BigInt::zero(); h.handles.len()];
    for (coef, holes) in terms {
        let mut set: Vec<usize> = holes.to_vec();
        set.sort_unstable();
        let j = h.handles.iter().position(|hd| hd.holes == set).ok_or_else(|| Error::SchemaError {
            field: "cycle".into(),
            reason: format!("no handle over {set:?}"),
        })?;
        v[j] += BigInt::from(*coef);
    }
    Ok(v)
}

/// Order of the subgroup of a finite abelian group `Z^n / M` generated by `gens`, by
/// breadth-first closure. Intended as an independent check on small groups.
pub fn brute_force_subgroup_order(m: &IntegerMatrix, gens: &[Vec<BigInt>]) -> Option<usize> {
    let snf = smith_normal_form(m);
    let d = snf.diagonal_entries();
    if d.iter().any(|x| x.is_zero()) || d.len() != m.rows() {
        return None;
    }
    let reduce = |v: &[BigInt]| -> Vec<BigInt> {
        let u = snf.left.mul_vec(v).expect("dimension");
        u.iter()
            .zip(&d)
            .map(|(x, m)| {
                let r = x % m;
                if r.is_negative() {
                    r + m.abs()
                } else {
                    r
                }
            })
            .collect()
    };
    let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| reduce(g)).collect();
    let zero = vec![BigInt::zero(); d.len()];
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y: Vec<BigInt> = x
                .iter()
                .zip(g)
                .zip(&d)
                .map(|((a, b), m)| {
                    let s = a + b;
                    if &s >= m {
                        s - m
                    } else {
                        s
                    }
                })
                .collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(gens: usize, rels: Vec<Vec<i32>>) -> usize {
        GroupPresentation::new(gens, rels).order(10_000).unwrap()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order_of(1, vec![vec![1, 1, 1, 1, 1]]), 5);
        assert_eq!(order_of(2, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]]), 6);
        // A4 = <a, b | a³, b², (ab)³>.
        assert_eq!(order_of(2, vec![vec![1, 1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]]), 12);
        // Quaternion group.
        assert_eq!(order_of(2, vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![-2, 1, 2, 1]]), 8);
        // A5 = <a, b | a², b³, (ab)⁵>.
        let mut ab5 = Vec::new();
        for _ in 0..5 {
            ab5.extend([1, 2]);
        }
        assert_eq!(order_of(2, vec![vec![1, 1], vec![2, 2, 2], ab5]), 60);
        assert_eq!(order_of(2, vec![vec![1, 2, -1, -2], vec![1, 1, 1], vec![2, 2, 2, 2]]), 12);
    }

    #[test]
    fn budget_is_reported() {
        let free = GroupPresentation::new(2, vec![vec![1, 2, -1, -2]]);
        assert_eq!(free.order(500), Err(Error::EnumerationBudgetExceeded(500)));
    }
}
