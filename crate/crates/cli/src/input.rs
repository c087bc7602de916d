//! JSON input documents.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{Map, Value};
use starsurg::exactlin::Rational;
use starsurg::handlebody::Handle;
use starsurg::homblowup::BlowupClass;
use starsurg::plumbing::{OuterTwist, StarPlumbing};
use starsurg::Error;

/// An exact rational written as `"p/q"`, `"p"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => Rational::from_str(s.trim())
                .map(Q)
                .map_err(|_| de::Error::custom(format!("`{s}` is not a rational number"))),
            Value::Number(n) => BigInt::from_str(&n.to_string())
                .map(|i| Q(Rational::from_integer(i)))
                .map_err(|_| de::Error::custom(format!("{n} is not an integer"))),
            other => Err(de::Error::custom(format!("expected a rational, found {other}"))),
        }
    }
}

/// A homology class, either as coefficients on `h, e₁, …` or as text such as `"h - e1 - e2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Coeffs(BlowupClass),
    Text(String),
}

fn big_integer<E: de::Error>(v: &Value) -> Result<BigInt, E> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("{n} is not an integer"))),
        other => Err(E::custom(format!("expected an integer, found {other}"))),
    }
}

impl<'de> Deserialize<'de> for ClassSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => Ok(Self::Text(s)),
            Value::Array(xs) if !xs.is_empty() => Ok(Self::Coeffs(BlowupClass::new(
                xs.iter().map(big_integer).collect::<Result<_, _>>()?,
            ))),
            other => Err(de::Error::custom(format!(
                "expected a coefficient array or class text, found {other}"
            ))),
        }
    }
}

impl ClassSpec {
    pub fn resolve(&self, n: usize) -> Result<BlowupClass, Error> {
        match self {
            Self::Coeffs(c) if c.blowups() == n => Ok(c.clone()),
            Self::Coeffs(c) => Err(Error::SchemaError {
                field: "classes".into(),
                reason: format!("class has {} coefficients, expected {}", c.coeffs().len(), n + 1),
            }),
            Self::Text(t) => BlowupClass::parse(n, t),
        }
    }
}

pub fn resolve_all(specs: &[ClassSpec], n: usize) -> Result<Vec<BlowupClass>, Error> {
    specs.iter().map(|s| s.resolve(n)).collect()
}

/// A 2-cycle as handle coefficients or as `"x12 + x34 - x13 - x24"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CycleSpec {
    Coeffs(Vec<i64>),
    Terms(String),
}

/// Parses `x12 - 2x{1,10}` into `(coefficient, holes)` terms.
pub fn parse_cycle_terms(text: &str) -> Result<Vec<(i64, Vec<usize>)>, Error> {
    let err = |col: usize, what: &str| Error::SyntaxError {
        line: 1,
        column: col + 1,
        expectation: what.into(),
    };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            sign = if chars[i] == '-' { -1 } else { 1 };
            i += 1;
        } else if !out.is_empty() {
            return Err(err(i, "`+` or `-`"));
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coef: i64 = if start == i {
            1
        } else {
            chars[start..i].iter().collect::<String>().parse().map_err(|_| err(start, "a coefficient"))?
        };
        if chars.get(i) != Some(&'x') {
            return Err(err(i, "`x`"));
        }
        i += 1;
        let holes: Vec<usize> = if chars.get(i) == Some(&'{') {
            let end = chars[i..].iter().position(|&c| c == '}').ok_or_else(|| err(i, "`}`"))? + i;
            let inner: String = chars[i + 1..end].iter().collect();
            i = end + 1;
            inner
                .split(',')
                .map(|s| s.parse().map_err(|_| err(i, "a hole label")))
                .collect::<Result<_, _>>()?
        } else {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if s == i {
                return Err(err(i, "hole labels"));
            }
            chars[s..i].iter().map(|c| c.to_digit(10).unwrap() as usize).collect()
        };
        out.push((sign * coef, holes));
    }
    if out.is_empty() {
        return Err(err(0, "a term"));
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianSpec {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillingExpect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi1_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_h1: Option<AbelianSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2_cohomology: Option<AbelianSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction_index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HandlebodyDoc {
    pub holes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub handles: Option<Vec<Handle>>,
    /// Vanishing-cycle word; one `(-1)` handle per letter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<CycleSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<FillingExpect>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlumbingExpect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_h1: Option<AbelianSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlumbingDoc {
    pub center: i64,
    pub arms: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arm_labels: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_labels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<OuterTwist>,
    /// Reduced dimensions kept in `phi`; defaults to none.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allowed: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<PlumbingExpect>,
}

impl PlumbingDoc {
    pub fn graph(&self) -> StarPlumbing {
        StarPlumbing {
            center: self.center,
            arms: self.arms.clone(),
            arm_labels: self.arm_labels.clone(),
            center_labels: self.center_labels.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistWordDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holes: Option<usize>,
    pub lhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassListDoc {
    #[serde(rename = "N")]
    pub n: usize,
    pub classes: Vec<ClassSpec>,
    /// When present, the classes are checked as the components of a singular fiber.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberSpec {
    pub vector: ClassSpec,
    pub k_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaSpec {
    pub a: Q,
    pub b: Vec<Q>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KodairaExpect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functional: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kodaira_dimension: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationDoc {
    #[serde(rename = "N")]
    pub n: usize,
    pub classes: Vec<ClassSpec>,
    pub graph: StarPlumbing,
    /// Defaults to `-3h + e₁ + … + e_N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<ClassSpec>,
    #[serde(default = "yes", skip_serializing_if = "is_yes")]
    pub adjunction: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<ChamberSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaSpec>,
    /// `(χ, σ)` of the replacement filling, for the homeomorphism type and `K²`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filling: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_square: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<KodairaExpect>,
}

fn yes() -> bool {
    true
}

fn is_yes(b: &bool) -> bool {
    *b
}

impl ConfigurationDoc {
    pub fn canonical(&self) -> Result<BlowupClass, Error> {
        match &self.canonical {
            Some(c) => c.resolve(self.n),
            None => Ok(BlowupClass::canonical(self.n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    #[serde(rename = "N")]
    pub n: usize,
    pub a: Vec<ClassSpec>,
    pub spheres: Vec<ClassSpec>,
    pub filling_gram: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfigDoc {
    /// Defaults to the `(-5; -2,-2,-2,-2)` search basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<ClassSpec>,
    /// Defaults to the orbit representatives whose reduced dimension occurs on the filling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_counts: Option<[u64; 6]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputDocument {
    Plumbing(PlumbingDoc),
    Handlebody(HandlebodyDoc),
    TwistWord(TwistWordDoc),
    ClassList(ClassListDoc),
    Configuration(ConfigurationDoc),
    SearchConfig(SearchConfigDoc),
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Plumbing(_) => "plumbing",
            Self::Handlebody(_) => "handlebody",
            Self::TwistWord(_) => "twistword",
            Self::ClassList(_) => "class_list",
            Self::Configuration(_) => "configuration",
            Self::SearchConfig(_) => "search_config",
        }
    }
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

fn schema(path: Option<&serde_path_to_error::Path>, e: &serde_json::Error) -> Error {
    let field = path.map_or_else(|| ".".to_string(), ToString::to_string);
    Error::SchemaError {
        field: if field == "." { "(root)".into() } else { field },
        reason: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    }
}

fn payload<T: for<'de> Deserialize<'de>>(body: Map<String, Value>) -> Result<T, Error> {
    serde_path_to_error::deserialize(Value::Object(body)).map_err(|e| schema(Some(e.path()), e.inner()))
}

/// Parses a document, reporting syntax errors with positions and schema errors with the
/// offending field.
pub fn parse(text: &str) -> Result<InputDocument, Error> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            schema(None, &e)
        } else {
            Error::SyntaxError {
                line: e.line(),
                column: e.column(),
                expectation: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
            }
        }
    })?;
    let Value::Object(mut body) = value else {
        return Err(Error::SchemaError {
            field: "(root)".into(),
            reason: "expected an object".into(),
        });
    };
    let kind = match body.remove("kind") {
        Some(Value::String(k)) => k,
        Some(_) => {
            return Err(Error::SchemaError {
                field: "kind".into(),
                reason: "expected a string".into(),
            })
        }
        None => {
            return Err(Error::SchemaError {
                field: "kind".into(),
                reason: "missing field".into(),
            })
        }
    };
    Ok(match kind.as_str() {
        "plumbing" => InputDocument::Plumbing(payload(body)?),
        "handlebody" => InputDocument::Handlebody(payload(body)?),
        "twistword" => InputDocument::TwistWord(payload(body)?),
        "class_list" => InputDocument::ClassList(payload(body)?),
        "configuration" => InputDocument::Configuration(payload(body)?),
        "search_config" => InputDocument::SearchConfig(payload(body)?),
        other => {
            return Err(Error::SchemaError {
                field: "kind".into(),
                reason: format!("unknown kind `{other}`"),
            })
        }
    })
}

/// Canonical text: `kind` first, then the fields in declaration order.
pub fn serialize(doc: &InputDocument) -> String {
    let body = match doc {
        InputDocument::Plumbing(d) => serde_json::to_value(d),
        InputDocument::Handlebody(d) => serde_json::to_value(d),
        InputDocument::TwistWord(d) => serde_json::to_value(d),
        InputDocument::ClassList(d) => serde_json::to_value(d),
        InputDocument::Configuration(d) => serde_json::to_value(d),
        InputDocument::SearchConfig(d) => serde_json::to_value(d),
    }
    .expect("documents serialize");
    let mut out = Map::new();
    out.insert("kind".into(), Value::String(doc.kind().into()));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    serde_json::to_string_pretty(&Value::Object(out)).expect("values serialize")
}

pub fn read(path: &std::path::Path) -> Result<InputDocument, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::SchemaError {
        field: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse(&text)
}
