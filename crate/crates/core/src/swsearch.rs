//! Adjunctive basic-class search on the star-surgered manifold and the knot-surgery
//! bookkeeping.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::exactlin::{rational_inverse, IntegerMatrix, Rational};
use crate::homblowup::{gram_of, pair, verify_chamber_vector, verify_configuration, BlowupClass, ChamberReport, ConfigurationReport, SphereConfiguration};
use crate::plumbing::covector_square;
use crate::{Error, Result};

/// Integer matrix over a positive common denominator, in machine integers.
#[derive(Clone, Debug)]
struct Scaled {
    n: usize,
    num: Vec<i128>,
    den: i128,
}

impl Scaled {
    fn inverse_of(m: &IntegerMatrix) -> Result<Self> {
        let inv = rational_inverse(m)?.to_scaled();
        let too_big = || Error::UnsupportedShape("inverse entries exceed machine range".into());
        Ok(Self {
            n: m.rows(),
            num: inv
                .numerators
                .to_rows()
                .iter()
                .flatten()
                .map(|x| x.to_i128().ok_or_else(too_big))
                .collect::<Result<_>>()?,
            den: inv.denominator.to_i128().ok_or_else(too_big)?,
        })
    }

    fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        (0..self.n)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(0i128, |acc, (j, x)| {
                        acc.checked_add(self.num[i * self.n + j].checked_mul(*x).expect("overflow"))
                            .expect("overflow")
                    })
            })
            .collect()
    }

    /// Numerator of `vᵀ M v` over `den`.
    fn quad(&self, v: &[i128]) -> i128 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// Fixed data of the search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchBasis {
    pub a: Vec<BlowupClass>,
    pub spheres: Vec<BlowupClass>,
    pub filling_gram: IntegerMatrix,
    pub gram: IntegerMatrix,
    /// Rows `A₁..A₇, u₀..u₄` times the diagonal form, so `M·ℓ` lists pairings.
    pub pairing_matrix: IntegerMatrix,
    #[serde(skip)]
    gram_inv: Scaled,
    #[serde(skip)]
    lift_inv: Scaled,
    #[serde(skip)]
    box_override: Vec<Option<Vec<i64>>>,
}

impl SearchBasis {
    pub fn new(a: Vec<BlowupClass>, spheres: Vec<BlowupClass>, filling_gram: IntegerMatrix) -> Result<Self> {
        let k = a.len();
        let f = filling_gram.rows();
        let ga = gram_of(&a)?;
        let gram = IntegerMatrix::from_fn(k + f, k + f, |i, j| match (i < k, j < k) {
            (true, true) => ga.get(i, j).clone(),
            (false, false) => filling_gram.get(i - k, j - k).clone(),
            _ => BigInt::zero(),
        });
        for x in &a {
            for u in &spheres {
                if !pair(x, u)?.is_zero() {
                    return Err(Error::SchemaError {
                        field: "basis".into(),
                        reason: format!("{x} is not orthogonal to {u}"),
                    });
                }
            }
        }
        let rows: Vec<&BlowupClass> = a.iter().chain(&spheres).collect();
        let dim = rows[0].blowups() + 1;
        if rows.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rows.len(),
            });
        }
        let pairing_matrix = IntegerMatrix::from_fn(dim, dim, |i, j| {
            let c = &rows[i].coeffs()[j];
            if j == 0 {
                c.clone()
            } else {
                -c
            }
        });
        Ok(Self {
            gram_inv: Scaled::inverse_of(&gram)?,
            lift_inv: Scaled::inverse_of(&pairing_matrix)?,
            box_override: vec![None; k + f],
            a,
            spheres,
            filling_gram,
            gram,
            pairing_matrix,
        })
    }

    pub fn standard() -> Result<Self> {
        Self::new(
            catalog::search_classes(),
            catalog::s2_configuration().classes,
            catalog::t2_gram(),
        )
    }

    /// Replaces the values enumerated for one coordinate, for smaller test runs.
    pub fn restricted(mut self, coordinate: usize, values: Vec<i64>) -> Self {
        self.box_override[coordinate] = Some(values);
        self
    }

    pub fn ranges(&self) -> Vec<Vec<i64>> {
        (0..self.gram.rows())
            .map(|i| match &self.box_override[i] {
                Some(v) => v.clone(),
                None => {
                    let s = self.gram.get(i, i).to_i64().expect("small square");
                    (s..=-s).step_by(2).collect()
                }
            })
            .collect()
    }

    fn lift_scaled(&self, b: &[i64], c: &[i64]) -> Vec<i128> {
        let v: Vec<i128> = b.iter().chain(c).map(|&x| x as i128).collect();
        self.lift_inv.mul_vec(&v)
    }
}

/// `ℓ` with the prescribed pairings against `A₁..A₇` and the spheres.
pub fn lift_class(b: &[i64], c: &[i64], basis: &SearchBasis) -> Vec<Rational> {
    let den = BigInt::from(basis.lift_inv.den);
    basis
        .lift_scaled(b, c)
        .into_iter()
        .map(|x| Rational::new(BigInt::from(x), den.clone()))
        .collect()
}

/// Pairings `⟨L, A_i⟩` of a candidate class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharTuple(pub Vec<i64>);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub box_size: u64,
    pub dimension: u64,
    pub triples: u64,
    pub lifted_dimension: u64,
    pub characteristic: u64,
    pub chamber: u64,
}

impl StageCounts {
    pub fn as_array(&self) -> [u64; 6] {
        [
            self.box_size,
            self.dimension,
            self.triples,
            self.lifted_dimension,
            self.characteristic,
            self.chamber,
        ]
    }

    fn merge(self, o: Self) -> Self {
        Self {
            box_size: self.box_size + o.box_size,
            dimension: self.dimension + o.dimension,
            triples: self.triples + o.triples,
            lifted_dimension: self.lifted_dimension + o.lifted_dimension,
            characteristic: self.characteristic + o.characteristic,
            chamber: self.chamber + o.chamber,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Survivor {
    pub tuple: CharTuple,
    pub phi: Vec<i64>,
    /// Lift in `h, e₁, …` coordinates; integral at this stage.
    pub lift: Vec<i64>,
    #[serde(serialize_with = "crate::json::rational")]
    pub d: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub counts: StageCounts,
    pub survivors: Vec<Survivor>,
    /// Characteristic lifts lying on the wall of the chamber vector.
    pub wall: Vec<Survivor>,
}

#[derive(Clone, Copy, Default)]
struct Verdict {
    lifted_dimension: bool,
    characteristic: bool,
    chamber: bool,
    wall: bool,
}

fn sign(x: i128) -> i8 {
    x.signum() as i8
}

fn judge(basis: &SearchBasis, v: &BlowupClass, b: &[i64], c: &[i64]) -> (Verdict, Vec<i128>) {
    let l = basis.lift_scaled(b, c);
    let den = basis.lift_inv.den;
    let sq = l[0] * l[0] - l[1..].iter().map(|x| x * x).sum::<i128>();
    // d = (ℓ² + 2) / 4 with ℓ² = sq / den².
    let d_num = sq + 2 * den * den;
    let d_den = 4 * den * den;
    let mut verdict = Verdict::default();
    if d_num % d_den == 0 {
        let d = d_num / d_den;
        verdict.lifted_dimension = d >= 0 && d % 2 == 0;
    }
    if !verdict.lifted_dimension {
        return (verdict, l);
    }
    verdict.characteristic = l.iter().all(|x| x % den == 0 && (x / den) % 2 != 0);
    if !verdict.characteristic {
        return (verdict, l);
    }
    let vc: Vec<i128> = v.coeffs().iter().map(|x| x.to_i128().expect("small chamber vector")).collect();
    let lv = l[0] * vc[0] - l[1..].iter().zip(&vc[1..]).map(|(a, b)| a * b).sum::<i128>();
    verdict.wall = lv == 0;
    verdict.chamber = !verdict.wall && sign(lv) != sign(l[0]);
    (verdict, l)
}

fn survivor(basis: &SearchBasis, t: &[i64], c: &[i64], l: &[i128]) -> Survivor {
    let den = basis.lift_inv.den;
    let q = basis.gram_inv.quad(&t.iter().map(|&x| x as i128).collect::<Vec<_>>());
    Survivor {
        tuple: CharTuple(t.to_vec()),
        phi: c.to_vec(),
        lift: l.iter().map(|x| (x / den) as i64).collect(),
        d: (Rational::new(BigInt::from(q), BigInt::from(basis.gram_inv.den)) - Rational::from_integer(1.into()))
            / Rational::from_integer(4.into()),
    }
}

/// Stage-2 test: `d = (tᵀG⁻¹t - 1)/4` integral, nonnegative and even.
fn dimension_ok(basis: &SearchBasis, t: &[i64]) -> bool {
    let q = basis.gram_inv.quad(&t.iter().map(|&x| x as i128).collect::<Vec<_>>());
    let den = basis.gram_inv.den;
    let num = q - den;
    let d4 = 4 * den;
    num % d4 == 0 && {
        let d = num / d4;
        d >= 0 && d % 2 == 0
    }
}

/// Runs the six filters. `workers = 0` uses the global pool.
pub fn run_pipeline(basis: &SearchBasis, phi: &[Vec<i64>], v: &BlowupClass, workers: usize) -> Result<PipelineReport> {
    let run = || run_inner(basis, phi, v);
    let report = if workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::UnsupportedShape(e.to_string()))?
            .install(run)
    };
    if let Some(w) = report.wall.first() {
        return Err(Error::WallAmbiguity(format!("{:?}", w.lift)));
    }
    Ok(report)
}

/// Like `run_pipeline` but reports wall classes instead of failing.
pub fn run_pipeline_report(basis: &SearchBasis, phi: &[Vec<i64>], v: &BlowupClass) -> PipelineReport {
    run_inner(basis, phi, v)
}

fn run_inner(basis: &SearchBasis, phi: &[Vec<i64>], v: &BlowupClass) -> PipelineReport {
    let ranges = basis.ranges();
    let k = basis.a.len();
    let (first, rest) = ranges.split_first().expect("nonempty basis");
    let shard = |t0: &i64| {
        let mut counts = StageCounts::default();
        let mut stage2: Vec<Vec<i64>> = Vec::new();
        let mut t = vec![0i64; ranges.len()];
        t[0] = *t0;
        let mut idx = vec![0usize; rest.len()];
        loop {
            for (j, &i) in idx.iter().enumerate() {
                t[j + 1] = rest[j][i];
            }
            counts.box_size += 1;
            if dimension_ok(basis, &t) {
                stage2.push(t.clone());
            }
            let mut p = rest.len();
            loop {
                if p == 0 {
                    return (counts, stage2);
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < rest[p].len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    };
    let shards: Vec<(StageCounts, Vec<Vec<i64>>)> = first.par_iter().map(shard).collect();
    let mut counts = StageCounts::default();
    let mut stage2 = Vec::new();
    for (c, s) in shards {
        counts = counts.merge(c);
        stage2.extend(s);
    }
    counts.dimension = stage2.len() as u64;
    counts.triples = stage2.len() as u64 * phi.len() as u64;

    // Lifts only depend on (B, C); judge each distinct B once.
    let bs: Vec<Vec<i64>> = stage2.iter().map(|t| t[..k].to_vec()).collect::<BTreeSet<_>>().into_iter().collect();
    let verdicts: HashMap<Vec<i64>, Vec<(Verdict, Vec<i128>)>> = bs
        .par_iter()
        .map(|b| (b.clone(), phi.iter().map(|c| judge(basis, v, b, c)).collect()))
        .collect();

    let mut survivors = Vec::new();
    let mut wall = Vec::new();
    for t in &stage2 {
        for (c, (verdict, l)) in phi.iter().zip(&verdicts[&t[..k]]) {
            counts.lifted_dimension += u64::from(verdict.lifted_dimension);
            counts.characteristic += u64::from(verdict.characteristic);
            counts.chamber += u64::from(verdict.chamber);
            if verdict.chamber {
                survivors.push(survivor(basis, t, c, l));
            }
            if verdict.wall {
                wall.push(survivor(basis, t, c, l));
            }
        }
    }
    survivors.sort();
    wall.sort();
    PipelineReport { counts, survivors, wall }
}

/// Unpruned re-implementation over arbitrary rationals, for cross-checking small bases.
pub fn brute_force_survivors(basis: &SearchBasis, phi: &[Vec<i64>], v: &BlowupClass) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
    use itertools::Itertools;
    let ginv = rational_inverse(&basis.gram)?;
    let m = rational_inverse(&basis.pairing_matrix)?;
    let four = Rational::from_integer(4.into());
    let even_nonneg = |d: &Rational| d.is_integer() && !d.is_negative() && d.to_integer().is_even();
    let mut out = Vec::new();
    for t in basis.ranges().into_iter().multi_cartesian_product() {
        let tq: Vec<Rational> = t.iter().map(|&x| Rational::from_integer(x.into())).collect();
        let d = (ginv.bilinear(&tq, &tq)? - Rational::from_integer(1.into())) / &four;
        if !even_nonneg(&d) {
            continue;
        }
        for c in phi {
            let bc: Vec<Rational> = t[..basis.a.len()]
                .iter()
                .chain(c)
                .map(|&x| Rational::from_integer(x.into()))
                .collect();
            let l = m.mul_vec(&bc)?;
            let lc = BlowupClass::new(l.iter().map(|q| q.numer().clone()).collect());
            let sq = l[0].clone() * &l[0] - l[1..].iter().map(|q| q * q).sum::<Rational>();
            let dl = (sq + Rational::from_integer(2.into())) / &four;
            if !even_nonneg(&dl) || !l.iter().all(|q| q.is_integer() && q.to_integer().is_odd()) {
                continue;
            }
            let lv = pair(&lc, v)?;
            if !lv.is_zero() && lv.signum() != l[0].to_integer().signum() {
                out.push((t.clone(), c.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotSurgeryReport {
    pub n: u64,
    pub configuration: ConfigurationReport,
    pub chamber: ChamberReport,
    #[serde(serialize_with = "crate::json::int")]
    pub k_dot_h: BigInt,
    pub no_wall: bool,
    pub ambient: (i64, i64),
    pub surgered: (i64, i64),
    #[serde(serialize_with = "crate::json::rational")]
    pub d_ambient_k: Rational,
    #[serde(serialize_with = "crate::json::rational")]
    pub k_restricted_square: Rational,
    #[serde(serialize_with = "crate::json::rational")]
    pub d_surgered_k: Rational,
    #[serde(serialize_with = "crate::json::rational")]
    pub p_restricted_square: Rational,
    /// Largest square of a characteristic class on the filling.
    #[serde(serialize_with = "crate::json::rational")]
    pub filling_max_square: Rational,
    /// `d(P̃)` at the largest filling square.
    #[serde(serialize_with = "crate::json::rational")]
    pub minimality_bound: Rational,
    /// Small-perturbation invariant of the surviving classes, up to sign.
    pub sw_value: u64,
    pub pass: bool,
}

fn restricted_square(cfg: &SphereConfiguration, x: &BlowupClass) -> Result<Rational> {
    covector_square(&gram_of(&cfg.classes)?, &cfg.pairings(x)?)
}

/// Maximum of `tᵀG⁻¹t` over characteristic pairings `t` in the adjunctive box of a negative
/// definite form; the maximum is attained there.
pub fn max_characteristic_square(gram: &IntegerMatrix) -> Result<Rational> {
    use itertools::Itertools;
    let ranges: Vec<Vec<BigInt>> = (0..gram.rows())
        .map(|i| {
            let s = gram.get(i, i).to_i64().expect("small");
            (s..=-s).step_by(2).map(BigInt::from).collect()
        })
        .collect();
    let mut best: Option<Rational> = None;
    for t in ranges.into_iter().multi_cartesian_product() {
        let sq = covector_square(gram, &t)?;
        if best.as_ref().is_none_or(|b| sq > *b) {
            best = Some(sq);
        }
    }
    best.ok_or(Error::EmptySubset)
}

/// Homological bookkeeping for the knot-surgered family `Y_n`.
pub fn knot_surgery_checks(n: u64) -> Result<KnotSurgeryReport> {
    if n < 2 {
        return Err(Error::InadmissibleParams("twist parameter must be at least 2".into()));
    }
    let cfg = catalog::knot_surgery_configuration();
    let k = catalog::knot_surgery_canonical();
    let p = catalog::knot_surgery_other_class();
    // The pseudo-section sphere is not symplectic, so adjunction is not imposed.
    let configuration = verify_configuration(&cfg, None)?;
    let chamber = verify_chamber_vector(&catalog::chamber_h(), &cfg, &k, -1)?;
    let k_dot_h = pair(&k, &BlowupClass::h(10))?;
    let no_wall = chamber.dot_k.is_negative() && k_dot_h.is_negative();
    let ambient = (13, -9);
    let plumbing = (6, -5);
    let filling = (3, -2);
    let surgered = (ambient.0 - plumbing.0 + filling.0, ambient.1 - plumbing.1 + filling.1);
    let q = |x: i64| Rational::from_integer(x.into());
    let k2 = Rational::from_integer(k.square());
    let d_ambient_k = (k2.clone() - q(3 * ambient.1 + 2 * ambient.0)) / q(4);
    let k_restricted_square = restricted_square(&cfg, &k)?;
    let d_surgered_k = (k2 - &k_restricted_square - q(3 * surgered.1 + 2 * surgered.0)) / q(4);
    let p_restricted_square = restricted_square(&cfg, &p)?;
    let filling_max_square = max_characteristic_square(&catalog::t2_gram())?;
    let minimality_bound = (Rational::from_integer(p.square()) - &p_restricted_square + &filling_max_square
        - q(3 * surgered.1 + 2 * surgered.0))
        / q(4);
    let pass = configuration.pass
        && chamber.pass
        && no_wall
        && d_ambient_k.is_zero()
        && d_surgered_k.is_zero()
        && minimality_bound.is_negative();
    Ok(KnotSurgeryReport {
        n,
        configuration,
        chamber,
        k_dot_h,
        no_wall,
        ambient,
        surgered,
        d_ambient_k,
        k_restricted_square,
        d_surgered_k,
        p_restricted_square,
        filling_max_square,
        minimality_bound,
        sw_value: n,
        pass,
    })
}
