//! Second homology of `CP² # N (-CP²)` in the basis `h, e₁, …, e_N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::exactlin::{rational_inverse, IntegerMatrix, Rational};
use crate::plumbing::StarPlumbing;
use crate::{Error, Result};

/// `c_h·h + Σ c_i·e_i`, coefficients stored as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlowupClass {
    coeffs: Vec<BigInt>,
}

impl BlowupClass {
    /// `coeffs[0]` is the coefficient of `h`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a class needs an h coefficient");
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![BigInt::zero(); n + 1])
    }

    pub fn h(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[0] = BigInt::one();
        c
    }

    pub fn e(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "e{i} outside 1..={n}");
        let mut c = Self::zero(n);
        c.coeffs[i] = BigInt::one();
        c
    }

    /// `-3h + e₁ + … + e_N`.
    pub fn canonical(n: usize) -> Self {
        let mut c = Self::new(vec![BigInt::one(); n + 1]);
        c.coeffs[0] = BigInt::from(-3);
        c
    }

    /// Fiber class `3h - e₁ - … - e₉`.
    pub fn fiber(n: usize) -> Self {
        assert!(n >= 9, "the fiber class needs nine blow-ups");
        let mut c = Self::zero(n);
        c.coeffs[0] = BigInt::from(3);
        for i in 1..=9 {
            c.coeffs[i] = BigInt::from(-1);
        }
        c
    }

    pub fn blowups(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn h_coeff(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn e_coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Same class in a larger blow-up.
    pub fn extended(&self, n: usize) -> Self {
        assert!(n >= self.blowups());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn square(&self) -> BigInt {
        pair(self, self).expect("same dimension")
    }

    /// Parses `6h - e1 - 2e2 - 2e_{10}` in `CP² # n (-CP²)`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        let syntax = |col: usize, what: &str| Error::SyntaxError {
            line: 1,
            column: col + 1,
            expectation: what.to_string(),
        };
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        let skip = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        let digits = |i: &mut usize| -> String {
            let s = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            chars[s..*i].iter().collect()
        };
        let mut first = true;
        skip(&mut i);
        if i == chars.len() {
            return Err(syntax(i, "a term"));
        }
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i] == '+' || chars[i] == '-' || chars[i] == '−' {
                if chars[i] != '+' {
                    sign = -sign;
                }
                i += 1;
                skip(&mut i);
            } else if !first {
                return Err(syntax(i, "`+` or `-`"));
            }
            first = false;
            let num = digits(&mut i);
            let mag = if num.is_empty() {
                BigInt::one()
            } else {
                BigInt::from_str(&num).map_err(|_| syntax(i, "an integer"))?
            };
            skip(&mut i);
            let slot = match chars.get(i) {
                Some('h') => {
                    i += 1;
                    0
                }
                Some('e') => {
                    i += 1;
                    if chars.get(i) == Some(&'_') {
                        i += 1;
                    }
                    let braced = chars.get(i) == Some(&'{');
                    if braced {
                        i += 1;
                    }
                    let idx = digits(&mut i);
                    if braced {
                        if chars.get(i) != Some(&'}') {
                            return Err(syntax(i, "`}`"));
                        }
                        i += 1;
                    }
                    let k: usize = idx.parse().map_err(|_| syntax(i, "an exceptional class index"))?;
                    if k == 0 || k > n {
                        return Err(Error::BadHole { hole: k, holes: n });
                    }
                    k
                }
                _ if !num.is_empty() => return Err(syntax(i, "`h` or `e`")),
                _ => return Err(syntax(i, "a term")),
            };
            coeffs[slot] += sign * mag;
            skip(&mut i);
        }
        Ok(Self { coeffs })
    }
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = if i == 0 { "h".to_string() } else { format!("e{i}") };
            let mag = c.abs();
            let body = if mag.is_one() { basis } else { format!("{mag}{basis}") };
            if out.is_empty() {
                out = if c.is_negative() { format!("-{body}") } else { body };
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Serialize for BlowupClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::json::ints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for BlowupClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Number> = Vec::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("empty class"));
        }
        Ok(Self { coeffs })
    }
}

impl Add for &BlowupClass {
    type Output = BlowupClass;
    fn add(self, o: &BlowupClass) -> BlowupClass {
        assert_eq!(self.blowups(), o.blowups());
        BlowupClass::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &BlowupClass {
    type Output = BlowupClass;
    fn sub(self, o: &BlowupClass) -> BlowupClass {
        assert_eq!(self.blowups(), o.blowups());
        BlowupClass::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &BlowupClass {
    type Output = BlowupClass;
    fn neg(self) -> BlowupClass {
        BlowupClass::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul<&BlowupClass> for &BigInt {
    type Output = BlowupClass;
    fn mul(self, c: &BlowupClass) -> BlowupClass {
        BlowupClass::new(c.coeffs.iter().map(|a| self * a).collect())
    }
}

/// Intersection pairing `x_h y_h - Σ x_i y_i`.
pub fn pair(x: &BlowupClass, y: &BlowupClass) -> Result<BigInt> {
    if x.coeffs.len() != y.coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: x.blowups(),
            found: y.blowups(),
        });
    }
    let mut s = &x.coeffs[0] * &y.coeffs[0];
    for (a, b) in x.coeffs[1..].iter().zip(&y.coeffs[1..]) {
        s -= a * b;
    }
    Ok(s)
}

/// Pairing matrix of a list of classes.
pub fn gram_of(classes: &[BlowupClass]) -> Result<IntegerMatrix> {
    let n = classes.len();
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = pair(&classes[i], &classes[j])?;
        }
    }
    Ok(IntegerMatrix::from_rows(&rows))
}

/// Spheres indexed like the vertices of `graph`: center first, then each arm outward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereConfiguration {
    pub classes: Vec<BlowupClass>,
    pub graph: StarPlumbing,
}

impl SphereConfiguration {
    pub fn new(classes: Vec<BlowupClass>, graph: StarPlumbing) -> Self {
        Self { classes, graph }
    }

    pub fn blowups(&self) -> usize {
        self.classes.first().map_or(0, BlowupClass::blowups)
    }

    /// Pairings of `x` with every sphere.
    pub fn pairings(&self, x: &BlowupClass) -> Result<Vec<BigInt>> {
        self.classes.iter().map(|c| pair(x, c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Violation {
    VertexCount {
        expected: usize,
        found: usize,
    },
    Square {
        vertex: usize,
        expected: i64,
        #[serde(serialize_with = "crate::json::int")]
        found: BigInt,
    },
    Pairing {
        first: usize,
        second: usize,
        expected: i64,
        #[serde(serialize_with = "crate::json::int")]
        found: BigInt,
    },
    Adjunction {
        vertex: usize,
        #[serde(serialize_with = "crate::json::int")]
        found: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationReport {
    pub pass: bool,
    pub adjunction_checked: bool,
    pub gram: IntegerMatrix,
    pub first_violation: Option<Violation>,
}

/// Checks squares, adjacency pairings and, when `canonical` is given, the sphere adjunction
/// identity `K·C + C² = -2`.
pub fn verify_configuration(cfg: &SphereConfiguration, canonical: Option<&BlowupClass>) -> Result<ConfigurationReport> {
    let n = cfg.graph.vertex_count();
    let gram = gram_of(&cfg.classes)?;
    let report = |v: Option<Violation>| ConfigurationReport {
        pass: v.is_none(),
        adjunction_checked: canonical.is_some(),
        gram: gram.clone(),
        first_violation: v,
    };
    if cfg.classes.len() != n {
        return Ok(report(Some(Violation::VertexCount {
            expected: n,
            found: cfg.classes.len(),
        })));
    }
    let weights = cfg.graph.weights();
    for (v, &w) in weights.iter().enumerate() {
        if *gram.get(v, v) != BigInt::from(w) {
            return Ok(report(Some(Violation::Square {
                vertex: v,
                expected: w,
                found: gram.get(v, v).clone(),
            })));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let expected = i64::from(cfg.graph.is_edge(a, b));
            if *gram.get(a, b) != BigInt::from(expected) {
                return Ok(report(Some(Violation::Pairing {
                    first: a,
                    second: b,
                    expected,
                    found: gram.get(a, b).clone(),
                })));
            }
        }
    }
    if let Some(k) = canonical {
        for (v, c) in cfg.classes.iter().enumerate() {
            let adj = pair(k, c)? + gram.get(v, v);
            if adj != BigInt::from(-2) {
                return Ok(report(Some(Violation::Adjunction { vertex: v, found: adj })));
            }
        }
    }
    Ok(report(None))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub pass: bool,
    pub sum: BlowupClass,
    pub sums_to_fiber: bool,
    #[serde(serialize_with = "crate::json::ints")]
    pub squares: Vec<BigInt>,
    pub adjunction: bool,
}

/// Checks that the components (with multiplicity) add up to the fiber class and are
/// `(-2)`-spheres.
pub fn verify_fiber_decomposition(components: &[(BlowupClass, i64)]) -> Result<FiberReport> {
    let n = components.first().map_or(9, |(c, _)| c.blowups());
    if n < 9 {
        return Err(Error::DimensionMismatch { expected: 9, found: n });
    }
    let mut sum = BlowupClass::zero(n);
    let mut squares = Vec::with_capacity(components.len());
    let mut adjunction = true;
    let k = BlowupClass::canonical(n);
    for (c, m) in components {
        if c.blowups() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.blowups(),
            });
        }
        sum = &sum + &(&BigInt::from(*m) * c);
        let sq = c.square();
        adjunction &= pair(&k, c)? + &sq == BigInt::from(-2);
        squares.push(sq);
    }
    let sums_to_fiber = sum == BlowupClass::fiber(n);
    let all_minus_two = squares.iter().all(|s| *s == BigInt::from(-2));
    Ok(FiberReport {
        pass: sums_to_fiber && all_minus_two && adjunction,
        sum,
        sums_to_fiber,
        squares,
        adjunction,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberReport {
    pub pass: bool,
    #[serde(serialize_with = "crate::json::ints")]
    pub sphere_pairings: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::int")]
    pub square: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub dot_h: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub dot_k: BigInt,
    pub expected_k_sign: i8,
    /// Orthogonal replacement, present when the vector fails orthogonality.
    pub repaired: Option<BlowupClass>,
}

/// Checks `W·u = 0` on every sphere, `W² > 0`, `W·h > 0` and `sign(W·K) = k_sign`.
pub fn verify_chamber_vector(
    w: &BlowupClass,
    cfg: &SphereConfiguration,
    canonical: &BlowupClass,
    k_sign: i8,
) -> Result<ChamberReport> {
    let sphere_pairings = cfg.pairings(w)?;
    let square = w.square();
    let dot_h = pair(w, &BlowupClass::h(w.blowups()))?;
    let dot_k = pair(w, canonical)?;
    let orthogonal = sphere_pairings.iter().all(Zero::is_zero);
    let sign = match dot_k.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    };
    let pass = orthogonal && square.is_positive() && dot_h.is_positive() && sign == k_sign;
    let repaired = if orthogonal { None } else { Some(repair_chamber_vector(w, cfg)?) };
    Ok(ChamberReport {
        pass,
        sphere_pairings,
        square,
        dot_h,
        dot_k,
        expected_k_sign: k_sign,
        repaired,
    })
}

/// Projects `w` onto the orthogonal complement of the spheres and clears denominators.
pub fn repair_chamber_vector(w: &BlowupClass, cfg: &SphereConfiguration) -> Result<BlowupClass> {
    let gram = gram_of(&cfg.classes)?;
    let inv = rational_inverse(&gram)?;
    let t: Vec<Rational> = cfg.pairings(w)?.into_iter().map(Rational::from_integer).collect();
    let c = inv.mul_vec(&t)?;
    let mut coeffs: Vec<Rational> = w.coeffs.iter().cloned().map(Rational::from_integer).collect();
    for (ci, u) in c.iter().zip(&cfg.classes) {
        for (x, y) in coeffs.iter_mut().zip(&u.coeffs) {
            *x -= ci * Rational::from_integer(y.clone());
        }
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(BlowupClass::new(if g.is_zero() { ints } else { ints.iter().map(|x| x / &g).collect() }))
}

/// Symplectic form `a·h - Σ b_i·e_i` with `a > b₁ > … > b_N > 0` and `a > Σ b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaParams {
    #[serde(serialize_with = "crate::json::rational")]
    pub a: Rational,
    #[serde(serialize_with = "crate::json::rationals")]
    pub b: Vec<Rational>,
}

impl OmegaParams {
    pub fn new(a: Rational, b: Vec<Rational>) -> Result<Self> {
        let p = Self { a, b };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        let mut prev = &self.a;
        for (i, b) in self.b.iter().enumerate() {
            if b >= prev {
                return Err(Error::InadmissibleParams(format!("b{} is not below the previous parameter", i + 1)));
            }
            prev = b;
        }
        if !prev.is_positive() && !self.b.is_empty() {
            return Err(Error::InadmissibleParams("last b is not positive".into()));
        }
        let total: Rational = self.b.iter().sum();
        if self.a <= total {
            return Err(Error::InadmissibleParams("a does not exceed the sum of the b".into()));
        }
        Ok(())
    }

    /// The pairing of `x` with the symplectic class.
    pub fn evaluate(&self, x: &BlowupClass) -> Rational {
        let mut s = Rational::from_integer(x.h_coeff().clone()) * &self.a;
        for (i, b) in self.b.iter().enumerate() {
            s += Rational::from_integer(x.e_coeff(i + 1).clone()) * b;
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KodairaDimension {
    #[serde(rename = "-inf")]
    NegativeInfinity,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl fmt::Display for KodairaDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NegativeInfinity => "-inf",
            Self::Zero => "0",
            Self::One => "1",
            Self::Two => "2",
        })
    }
}

/// Kodaira dimension from the signs of `K·ω` and `K²` of a minimal model.
pub fn classify_kodaira(kw: &Rational, k2: i64) -> Result<KodairaDimension> {
    let s = if kw.is_positive() {
        1
    } else if kw.is_negative() {
        -1
    } else {
        0
    };
    match (s, k2.signum()) {
        (-1, _) | (_, -1) => Ok(KodairaDimension::NegativeInfinity),
        (0, 0) => Ok(KodairaDimension::Zero),
        (1, 0) => Ok(KodairaDimension::One),
        (1, 1) => Ok(KodairaDimension::Two),
        (kw, k2) => Err(Error::KodairaUndefined { kw, k2: k2 as i8 }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KodairaReport {
    /// Coefficients of `K_X·ω_X` on `a, b₁, …, b_N`.
    #[serde(serialize_with = "crate::json::rationals")]
    pub functional: Vec<Rational>,
    #[serde(serialize_with = "crate::json::rational")]
    pub value: Rational,
    pub k_square: i64,
    pub kodaira_dimension: KodairaDimension,
}

impl KodairaReport {
    /// `5a - 2b1 - 3/2 b2 …` style rendering.
    pub fn functional_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.functional.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = if i == 0 { "a".to_string() } else { format!("b{i}") };
            let mag = c.abs();
            let body = if mag.is_one() { var } else { format!("{mag} {var}") };
            match (out.is_empty(), c.is_negative()) {
                (true, true) => out = format!("-{body}"),
                (true, false) => out = body,
                (false, true) => out += &format!(" - {body}"),
                (false, false) => out += &format!(" + {body}"),
            }
        }
        out
    }
}

/// Coefficients on `a, b₁, …, b_N` of `K_X·ω_X = K·ω - (K·u)ᵀ P⁻¹ (ω·u)`, the pairing after
/// the spheres are replaced by a filling with vanishing canonical class.
pub fn kodaira_functional(cfg: &SphereConfiguration, canonical: &BlowupClass) -> Result<Vec<Rational>> {
    let gram = gram_of(&cfg.classes)?;
    let inv = rational_inverse(&gram)?;
    let ku: Vec<Rational> = cfg.pairings(canonical)?.into_iter().map(Rational::from_integer).collect();
    let row = inv.mul_vec(&ku)?;
    // ω·x is linear in (a, b): coefficient of a is x_h, of b_i is x_i.
    let as_rational = |x: &BlowupClass| -> Vec<Rational> { x.coeffs.iter().cloned().map(Rational::from_integer).collect() };
    let mut functional = as_rational(canonical);
    for (r, u) in row.iter().zip(&cfg.classes) {
        for (f, c) in functional.iter_mut().zip(as_rational(u)) {
            *f -= r * c;
        }
    }
    Ok(functional)
}

/// Value of a functional from `kodaira_functional` at admissible parameters.
pub fn evaluate_functional(functional: &[Rational], params: &OmegaParams) -> Result<Rational> {
    params.check()?;
    if params.b.len() + 1 != functional.len() {
        return Err(Error::DimensionMismatch {
            expected: functional.len() - 1,
            found: params.b.len(),
        });
    }
    Ok(functional[0].clone() * &params.a + functional[1..].iter().zip(&params.b).map(|(f, b)| f * b).sum::<Rational>())
}

pub fn kodaira_report(
    cfg: &SphereConfiguration,
    canonical: &BlowupClass,
    params: &OmegaParams,
    k_square: i64,
) -> Result<KodairaReport> {
    let functional = kodaira_functional(cfg, canonical)?;
    let value = evaluate_functional(&functional, params)?;
    Ok(KodairaReport {
        kodaira_dimension: classify_kodaira(&value, k_square)?,
        functional,
        value,
        k_square,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Odd,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomeoReport {
    pub chi: i64,
    pub sigma: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub parity: Parity,
    /// `3σ + 2χ`, the square of a characteristic class of the right dimension.
    pub k_square: i64,
}

/// Euler characteristic and signature of `X - plumbing ∪ filling`.
pub fn homeo_type_report(ambient: (i64, i64), plumbing: (i64, i64), filling: (i64, i64)) -> HomeoReport {
    let chi = ambient.0 - plumbing.0 + filling.0;
    let sigma = ambient.1 - plumbing.1 + filling.1;
    let b_plus = (chi - 2 + sigma) / 2;
    let b_minus = (chi - 2 - sigma) / 2;
    // With b⁺ = 1 an even form is H ⊕ kE₈, so its signature is divisible by 8.
    let parity = if b_plus == 1 && sigma.rem_euclid(8) != 0 {
        Parity::Odd
    } else {
        Parity::Undetermined
    };
    HomeoReport {
        chi,
        sigma,
        b_plus,
        b_minus,
        parity,
        k_square: 3 * sigma + 2 * chi,
    }
}
