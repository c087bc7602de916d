//! One function per subcommand. Each returns the structured report, a text rendering and
//! whether every check passed.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use starsurg::catalog;
use starsurg::exactlin::{AbelianGroup, IntegerMatrix, Rational};
use starsurg::handlebody::{self, Handlebody};
use starsurg::homblowup::{self, BlowupClass, OmegaParams, SphereConfiguration};
use starsurg::mcg::relations::{self, RelationName, RelationParams};
use starsurg::mcg::{self, Gathering, TwistWord};
use starsurg::plumbing::{self, StarPlumbing};
use starsurg::swsearch::{self, SearchBasis};
use starsurg::Error;

use crate::input::*;

pub struct Outcome {
    pub pass: bool,
    pub report: Value,
    pub table: String,
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub workers: usize,
    pub max_cosets: usize,
    pub mirror: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            workers: 0,
            max_cosets: handlebody::DEFAULT_MAX_COSETS,
            mirror: false,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn join(xs: &[BigInt]) -> String {
    xs.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", ")
}

fn abelian_matches(g: &AbelianGroup, spec: &AbelianSpec) -> bool {
    g.free_rank == spec.free_rank && g.torsion == spec.torsion.iter().map(|&t| BigInt::from(t)).collect::<Vec<_>>()
}

/// Records a named expectation and whether it held.
struct Checks {
    items: Vec<(String, bool)>,
}

impl Checks {
    fn new() -> Self {
        Self { items: Vec::new() }
    }

    fn add(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push((name.into(), ok));
    }

    fn pass(&self) -> bool {
        self.items.iter().all(|(_, ok)| *ok)
    }

    fn value(&self) -> Value {
        Value::Array(self.items.iter().map(|(n, ok)| json!({"check": n, "pass": ok})).collect())
    }

    fn render(&self, out: &mut String) {
        for (n, ok) in &self.items {
            let _ = writeln!(out, "  {:<4} {n}", if *ok { "ok" } else { "FAIL" });
        }
    }
}

// verify-relation

pub struct RelationArgs {
    pub name: Option<String>,
    pub params: RelationParams,
    pub perturbations: bool,
    pub all: bool,
}

fn gathering(s: &Settings) -> Gathering {
    match (s.mirror, mcg::default_gathering()) {
        (false, g) => g,
        (true, Gathering::Over) => Gathering::Under,
        (true, Gathering::Under) => Gathering::Over,
    }
}

fn relation_entry(name: RelationName, params: &RelationParams, perturb: bool, g: Gathering) -> Result<(bool, Value, String), Error> {
    let (lhs, rhs) = relations::build(name, params)?;
    let started = std::time::Instant::now();
    let equal = mcg::words_equal_with(&lhs, &rhs, g)?;
    let ms = started.elapsed().as_secs_f64() * 1e3;
    let mut v = json!({
        "name": name.as_str(),
        "params": params,
        "holes": lhs.holes(),
        "lhs": lhs.to_string(),
        "rhs": rhs.to_string(),
        "equal": equal,
    });
    let mut ok = equal;
    let mut line = format!("{:<10} {:<28} {}", name.as_str(), params_text(params), if equal { "equal" } else { "UNEQUAL" });
    if perturb {
        let ps = relations::single_hole_perturbations(&lhs, &rhs);
        let mut still_equal = 0usize;
        for (l, r) in &ps {
            if mcg::words_equal_with(l, r, g)? {
                still_equal += 1;
            }
        }
        v["perturbations"] = json!({"count": ps.len(), "equal": still_equal});
        ok &= still_equal == 0;
        let _ = write!(line, "  perturbations {}/{} unequal", ps.len() - still_equal, ps.len());
    }
    let _ = write!(line, "  ({ms:.1} ms)");
    Ok((ok, v, line))
}

fn params_text(p: &RelationParams) -> String {
    let mut parts = Vec::new();
    if let Some(i) = p.i {
        parts.push(format!("i={i}"));
    }
    if let Some(m) = p.m {
        parts.push(format!("m={m}"));
    }
    if let Some(b) = &p.blocks {
        parts.push(format!("blocks={b:?}").replace(' ', ""));
    }
    if let Some(h) = p.holes {
        parts.push(format!("holes={h}"));
    }
    parts.join(" ")
}

/// Relation instances of the full suite.
pub fn relation_suite() -> Vec<(RelationName, RelationParams)> {
    let mut out = Vec::new();
    for n in 3..=6 {
        for blocks in relations::cyclic_three_partitions(n) {
            out.push((
                RelationName::Lantern,
                RelationParams {
                    blocks: Some(blocks.to_vec()),
                    ..Default::default()
                },
            ));
        }
    }
    for m in 2..=4 {
        out.push((
            RelationName::Daisy,
            RelationParams {
                m: Some(m),
                ..Default::default()
            },
        ));
    }
    out.push((RelationName::Park, RelationParams::default()));
    for i in 1..=4 {
        out.push((
            RelationName::Genlantern,
            RelationParams {
                i: Some(i),
                ..Default::default()
            },
        ));
    }
    for name in [RelationName::Qr, RelationName::Uv, RelationName::Kl, RelationName::Mn, RelationName::Op] {
        out.push((name, RelationParams::default()));
    }
    out
}

pub fn verify_relation(args: &RelationArgs, s: &Settings) -> Result<Outcome, Error> {
    let g = gathering(s);
    let cases = if args.all {
        relation_suite()
    } else {
        let name = args.name.as_deref().ok_or_else(|| Error::SchemaError {
            field: "--name".into(),
            reason: "a relation name or --all is required".into(),
        })?;
        vec![(RelationName::parse(name)?, args.params.clone())]
    };
    let mut pass = true;
    let mut entries = Vec::new();
    let mut table = String::new();
    for (name, params) in &cases {
        let (ok, v, line) = relation_entry(*name, params, args.perturbations, g)?;
        pass &= ok;
        entries.push(v);
        let _ = writeln!(table, "{line}");
    }
    let self_test = mcg::lantern_self_test(g);
    let _ = writeln!(table, "convention {:?}, lantern self-test {}", g, if self_test { "passes" } else { "fails" });
    Ok(Outcome {
        pass,
        report: json!({"convention": g, "self_test": self_test, "relations": entries, "pass": pass}),
        table,
    })
}

pub fn compare_words(doc: &TwistWordDoc, s: &Settings) -> Result<Outcome, Error> {
    let parse = |text: &str| match doc.holes {
        Some(n) => TwistWord::parse(n, text),
        None => TwistWord::parse_auto(text),
    };
    let lhs = parse(&doc.lhs)?;
    let Some(rhs_text) = &doc.rhs else {
        let braid = mcg::compile_with(&lhs, gathering(s));
        return Ok(Outcome {
            pass: true,
            report: json!({"word": lhs.to_string(), "holes": lhs.holes(), "braid": braid.to_string()}),
            table: format!("{lhs}\nbraid: {braid}\n"),
        });
    };
    let mut rhs = parse(rhs_text)?;
    if rhs.holes() < lhs.holes() {
        rhs = rhs.with_holes(lhs.holes())?;
    }
    let lhs = if lhs.holes() < rhs.holes() { lhs.with_holes(rhs.holes())? } else { lhs };
    let equal = mcg::words_equal_with(&lhs, &rhs, gathering(s))?;
    Ok(Outcome {
        pass: equal,
        report: json!({"lhs": lhs.to_string(), "rhs": rhs.to_string(), "holes": lhs.holes(), "equal": equal, "pass": equal}),
        table: format!("{lhs}\n{rhs}\n{}\n", if equal { "equal" } else { "UNEQUAL" }),
    })
}

// analyze-filling

fn build_handlebody(doc: &HandlebodyDoc) -> Result<Handlebody, Error> {
    match (&doc.handles, &doc.word) {
        (Some(h), None) => Handlebody::new(doc.holes, h.clone()),
        (None, Some(w)) => Handlebody::from_word(&TwistWord::parse(doc.holes, w)?),
        _ => Err(Error::SchemaError {
            field: "handles".into(),
            reason: "give exactly one of `handles` and `word`".into(),
        }),
    }
}

fn build_cycles(h: &Handlebody, specs: &[CycleSpec]) -> Result<Vec<Vec<BigInt>>, Error> {
    specs
        .iter()
        .map(|c| match c {
            CycleSpec::Coeffs(v) => Ok(v.iter().map(|&x| BigInt::from(x)).collect()),
            CycleSpec::Terms(t) => {
                let terms = parse_cycle_terms(t)?;
                let borrowed: Vec<(i64, &[usize])> = terms.iter().map(|(c, hs)| (*c, hs.as_slice())).collect();
                handlebody::cycle_from_terms(h, &borrowed)
            }
        })
        .collect()
}

pub fn analyze_filling(doc: &HandlebodyDoc, s: &Settings) -> Result<Outcome, Error> {
    let h = build_handlebody(doc)?;
    let cycles = doc.cycles.as_deref().map(|c| build_cycles(&h, c)).transpose()?;
    let homology = handlebody::homology_report(&h, cycles.as_deref())?;
    let pi1 = handlebody::pi1_report(&h, s.max_cosets);
    let boundary = handlebody::boundary_h1(&h);
    let restriction = handlebody::restriction_index(&h);
    let c1: Vec<BigInt> = homology
        .cycles
        .iter()
        .map(|c| handlebody::c1_evaluate(&h, c))
        .collect::<Result<_, _>>()?;

    let mut checks = Checks::new();
    checks.add("fundamental group order determined", pi1.order.is_some());
    if let Some(e) = &doc.expect {
        if let Some(x) = e.euler_characteristic {
            checks.add(format!("euler characteristic = {x}"), homology.euler_characteristic == x);
        }
        if let Some(x) = e.signature {
            checks.add(format!("signature = {x}"), homology.signature == x);
        }
        if let Some(x) = e.pi1_order {
            checks.add(format!("fundamental group order = {x}"), pi1.order == Some(x));
        }
        if let Some(g) = &e.gram {
            checks.add("intersection form", homology.gram == IntegerMatrix::from_rows(g));
        }
        if let Some(b) = &e.boundary_h1 {
            checks.add("boundary first homology", abelian_matches(&boundary, b));
        }
        if let Some(b) = &e.h2_cohomology {
            checks.add("second cohomology", abelian_matches(&homology.h2_cohomology, b));
        }
        if let Some(i) = e.restriction_index {
            checks.add(format!("restriction index = {i}"), restriction.index == Some(BigInt::from(i)));
        }
        if let Some(i) = e.image_order {
            checks.add(format!("restriction image order = {i}"), restriction.image_order == Some(BigInt::from(i)));
        }
        if let Some(v) = &e.c1 {
            checks.add("c1 on cycles", c1 == v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
    }

    let mut table = String::new();
    let _ = writeln!(table, "holes {}, 2-handles {}", h.holes, h.handles.len());
    let _ = writeln!(table, "euler characteristic  {}", homology.euler_characteristic);
    let _ = writeln!(table, "signature             {}", homology.signature);
    let _ = writeln!(table, "definiteness          {}", homology.definiteness);
    let _ = writeln!(table, "H2 rank               {}", homology.h2_rank);
    let _ = writeln!(table, "intersection form     {}", homology.gram);
    let _ = writeln!(table, "H1                    {}", homology.h1);
    let _ = writeln!(table, "H2 (cohomology)       {}", homology.h2_cohomology);
    let order = pi1.order.map_or("unknown (budget exceeded)".to_string(), |o| o.to_string());
    let _ = writeln!(table, "pi1 order             {order}");
    let _ = writeln!(table, "pi1 abelianized       {}", pi1.abelianization);
    let _ = writeln!(table, "boundary H1           {boundary}");
    let opt = |x: &Option<BigInt>| x.as_ref().map_or("-".to_string(), BigInt::to_string);
    let _ = writeln!(
        table,
        "restriction           index {}, image order {}",
        opt(&restriction.index),
        opt(&restriction.image_order)
    );
    let _ = writeln!(table, "c1 on cycles          {}", c1.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", "));
    checks.render(&mut table);

    let pass = checks.pass();
    Ok(Outcome {
        pass,
        report: json!({
            "homology": homology,
            "pi1": pi1,
            "boundary_h1": boundary,
            "restriction": restriction,
            "c1": starsurg_ints(&c1),
            "checks": checks.value(),
            "pass": pass,
        }),
        table,
    })
}

fn starsurg_ints(xs: &[BigInt]) -> Value {
    to_value(&starsurg::json::Ints(xs))
}

// analyze-plumbing

const ORBIT_BOX_LIMIT: usize = 200_000;

pub fn analyze_plumbing(doc: &PlumbingDoc) -> Result<Outcome, Error> {
    let g = doc.graph();
    let inv = plumbing::plumbing_invariants(&g)?;
    let word = plumbing::gaymark_word(&g, doc.outer.unwrap_or_default());
    let allowed: BTreeSet<Rational> = doc.allowed.iter().flatten().map(|q| q.0.clone()).collect();
    let box_size: usize = g.weights().iter().map(|&w| (-w - (w + 2)) as usize / 2 + 1).product();
    let orbits = if box_size <= ORBIT_BOX_LIMIT {
        Some(plumbing::spinc_orbit_analysis(&g, &allowed)?)
    } else {
        None
    };

    let mut checks = Checks::new();
    if let Some(e) = &doc.expect {
        if let Some(w) = &e.word {
            let ok = match &word {
                Ok(generated) => TwistWord::parse(generated.holes(), w).is_ok_and(|x| &x == generated),
                Err(_) => false,
            };
            checks.add("boundary monodromy word", ok);
        }
        if let Some(r) = &e.reduced {
            let want: BTreeSet<Rational> = r.iter().map(|q| q.0.clone()).collect();
            let got: Option<BTreeSet<Rational>> = orbits.as_ref().map(|o| o.reduced_values.iter().cloned().collect());
            checks.add("reduced dimensions", got.as_ref() == Some(&want));
        }
        if let Some(p) = &e.phi {
            let want: BTreeSet<Vec<BigInt>> =
                p.iter().map(|t| t.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let got: Option<BTreeSet<Vec<BigInt>>> = orbits.as_ref().map(|o| o.phi.iter().cloned().collect());
            checks.add("distinguished representatives", got.as_ref() == Some(&want));
        }
        if let Some(b) = &e.boundary_h1 {
            checks.add("boundary first homology", abelian_matches(&inv.boundary_h1, b));
        }
    }

    let mut table = String::new();
    let _ = writeln!(table, "vertices {}, weights {:?}", inv.vertices, g.weights());
    let _ = writeln!(table, "euler characteristic  {}", inv.euler_characteristic);
    let _ = writeln!(table, "signature             {}", inv.signature);
    let _ = writeln!(table, "determinant           {}", inv.determinant);
    let _ = writeln!(table, "boundary H1           {}", inv.boundary_h1);
    match &word {
        Ok(w) => {
            let _ = writeln!(table, "boundary monodromy    {w}");
        }
        Err(e) => {
            let _ = writeln!(table, "boundary monodromy    unavailable: {e}");
        }
    }
    if let Some(o) = &orbits {
        let _ = writeln!(table, "characteristic box    {} tuples, {} orbits", o.box_size, o.orbit_count);
        if o.reduced_values.len() <= 16 {
            let reduced: Vec<String> = o.reduced_values.iter().map(ToString::to_string).collect();
            let _ = writeln!(table, "reduced dimensions    {{{}}}", reduced.join(", "));
        } else {
            let _ = writeln!(table, "reduced dimensions    {} values", o.reduced_values.len());
        }
        if !allowed.is_empty() {
            let _ = writeln!(table, "representatives kept  {}", o.phi.len());
        }
    } else {
        let _ = writeln!(table, "characteristic box    {box_size} tuples, orbit analysis skipped");
    }
    checks.render(&mut table);

    let pass = checks.pass();
    Ok(Outcome {
        pass,
        report: json!({
            "invariants": inv,
            "bad_vertices": g.bad_vertices(),
            "word": word.as_ref().map(ToString::to_string).ok(),
            "orbits": orbits,
            "checks": checks.value(),
            "pass": pass,
        }),
        table,
    })
}

// verify-embedding

pub fn verify_embedding(doc: &ConfigurationDoc) -> Result<Outcome, Error> {
    let classes = resolve_all(&doc.classes, doc.n)?;
    let cfg = SphereConfiguration::new(classes, doc.graph.clone());
    let k = doc.canonical()?;
    let report = homblowup::verify_configuration(&cfg, doc.adjunction.then_some(&k))?;
    let chamber = doc
        .chamber
        .as_ref()
        .map(|c| -> Result<_, Error> { homblowup::verify_chamber_vector(&c.vector.resolve(doc.n)?, &cfg, &k, c.k_sign) })
        .transpose()?;
    let homeo = homeo_for(doc, &cfg)?;

    let mut table = String::new();
    let _ = writeln!(table, "{} spheres in CP2 # {} (-CP2)", cfg.classes.len(), doc.n);
    for (i, c) in cfg.classes.iter().enumerate() {
        let _ = writeln!(table, "  u{i} = {c}   (square {})", c.square());
    }
    let _ = writeln!(table, "pairings              {}", report.gram);
    let _ = writeln!(
        table,
        "configuration         {}{}",
        if report.pass { "ok" } else { "FAIL" },
        if report.adjunction_checked { "" } else { " (adjunction not checked)" }
    );
    if let Some(v) = &report.first_violation {
        let _ = writeln!(table, "  first violation     {}", serde_json::to_string(v).unwrap_or_default());
    }
    if let Some(c) = &chamber {
        let _ = writeln!(
            table,
            "chamber vector        {}  (sphere pairings [{}], square {}, .h {}, .K {})",
            if c.pass { "ok" } else { "FAIL" },
            join(&c.sphere_pairings),
            c.square,
            c.dot_h,
            c.dot_k
        );
        if let Some(r) = &c.repaired {
            let _ = writeln!(table, "  orthogonal projection {r}");
        }
    }
    if let Some(h) = &homeo {
        let _ = writeln!(table, "after surgery         chi {}, sigma {}, b+ {}, b- {}", h.chi, h.sigma, h.b_plus, h.b_minus);
    }
    let pass = report.pass && chamber.as_ref().is_none_or(|c| c.pass);
    Ok(Outcome {
        pass,
        report: json!({"configuration": report, "chamber": chamber, "homeo_type": homeo, "pass": pass}),
        table,
    })
}

fn homeo_for(doc: &ConfigurationDoc, cfg: &SphereConfiguration) -> Result<Option<homblowup::HomeoReport>, Error> {
    let Some(filling) = doc.filling else {
        return Ok(None);
    };
    let inv = plumbing::plumbing_invariants(&cfg.graph)?;
    Ok(Some(homblowup::homeo_type_report(
        catalog::rational_surface(doc.n),
        (inv.euler_characteristic, inv.signature),
        filling,
    )))
}

pub fn fiber_check(doc: &ClassListDoc) -> Result<Outcome, Error> {
    let classes = resolve_all(&doc.classes, doc.n)?;
    let gram = homblowup::gram_of(&classes)?;
    let mut table = String::new();
    for c in &classes {
        let _ = writeln!(table, "  {c}   (square {})", c.square());
    }
    let _ = writeln!(table, "pairings              {gram}");
    let Some(m) = &doc.multiplicities else {
        return Ok(Outcome {
            pass: true,
            report: json!({"classes": classes, "gram": gram, "pass": true}),
            table,
        });
    };
    if m.len() != classes.len() {
        return Err(Error::SchemaError {
            field: "multiplicities".into(),
            reason: format!("{} multiplicities for {} classes", m.len(), classes.len()),
        });
    }
    let comps: Vec<(BlowupClass, i64)> = classes.iter().cloned().zip(m.iter().copied()).collect();
    let fiber = homblowup::verify_fiber_decomposition(&comps)?;
    let _ = writeln!(table, "sum                   {}", fiber.sum);
    let _ = writeln!(table, "fiber decomposition   {}", if fiber.pass { "ok" } else { "FAIL" });
    Ok(Outcome {
        pass: fiber.pass,
        report: json!({"classes": classes, "gram": gram, "fiber": fiber, "pass": fiber.pass}),
        table,
    })
}

// kodaira

pub fn kodaira(doc: &ConfigurationDoc) -> Result<Outcome, Error> {
    let classes = resolve_all(&doc.classes, doc.n)?;
    let cfg = SphereConfiguration::new(classes, doc.graph.clone());
    let k = doc.canonical()?;
    let omega = doc.omega.as_ref().ok_or_else(|| Error::SchemaError {
        field: "omega".into(),
        reason: "symplectic parameters are required".into(),
    })?;
    let params = OmegaParams::new(omega.a.0.clone(), omega.b.iter().map(|q| q.0.clone()).collect())?;
    let homeo = homeo_for(doc, &cfg)?;
    let k_square = match (doc.k_square, &homeo) {
        (Some(x), _) => x,
        (None, Some(h)) => h.k_square,
        (None, None) => {
            return Err(Error::SchemaError {
                field: "k_square".into(),
                reason: "give `k_square` or `filling`".into(),
            })
        }
    };
    let r = homblowup::kodaira_report(&cfg, &k, &params, k_square)?;
    let mut checks = Checks::new();
    if let Some(e) = &doc.expect {
        if let Some(f) = &e.functional {
            checks.add("functional", f.iter().map(|q| &q.0).eq(r.functional.iter()));
        }
        if let Some(d) = &e.kodaira_dimension {
            checks.add(format!("Kodaira dimension {d}"), r.kodaira_dimension.to_string() == *d);
        }
    }
    let mut table = String::new();
    let _ = writeln!(table, "K.omega               {}", r.functional_text());
    let _ = writeln!(table, "value                 {}", r.value);
    let _ = writeln!(table, "K^2                   {}", r.k_square);
    let _ = writeln!(table, "Kodaira dimension     {}", r.kodaira_dimension);
    checks.render(&mut table);
    let pass = checks.pass();
    Ok(Outcome {
        pass,
        report: json!({
            "functional": to_value(&r).get("functional").cloned(),
            "functional_text": r.functional_text(),
            "report": r,
            "checks": checks.value(),
            "pass": pass,
        }),
        table,
    })
}

// sw-search

fn default_phi() -> Result<Vec<Vec<i64>>, Error> {
    let allowed = plumbing::lattice_reduced_dimensions(&catalog::t2_gram(), -2, 3)?;
    let report = plumbing::spinc_orbit_analysis(&catalog::s2_plumbing(), &allowed)?;
    Ok(report
        .phi
        .iter()
        .map(|t| t.iter().map(|x| x.to_i64().expect("small pairing")).collect())
        .collect())
}

pub fn sw_search(doc: &SearchConfigDoc, s: &Settings) -> Result<Outcome, Error> {
    let (basis, n) = match &doc.basis {
        None => (SearchBasis::standard()?, 11),
        Some(b) => (
            SearchBasis::new(resolve_all(&b.a, b.n)?, resolve_all(&b.spheres, b.n)?, IntegerMatrix::from_rows(&b.filling_gram))?,
            b.n,
        ),
    };
    let v = match &doc.chamber {
        Some(c) => c.resolve(n)?,
        None => catalog::chamber_v(),
    };
    let phi = match &doc.phi {
        Some(p) => p.clone(),
        None => default_phi()?,
    };
    let started = std::time::Instant::now();
    let report = swsearch::run_pipeline(&basis, &phi, &v, s.workers)?;
    let elapsed = started.elapsed().as_secs_f64();
    let counts = report.counts.as_array();

    let mut checks = Checks::new();
    let negated: BTreeSet<(Vec<i64>, Vec<i64>)> = report
        .survivors
        .iter()
        .map(|x| (x.tuple.0.iter().map(|a| -a).collect(), x.phi.iter().map(|a| -a).collect()))
        .collect();
    let plain: BTreeSet<(Vec<i64>, Vec<i64>)> = report.survivors.iter().map(|x| (x.tuple.0.clone(), x.phi.clone())).collect();
    checks.add("survivors closed under negation", negated == plain);
    checks.add("survivors have dimension zero", report.survivors.iter().all(|x| x.d.is_zero()));
    if let Some(e) = &doc.expect_counts {
        for (i, (got, want)) in counts.iter().zip(e).enumerate() {
            checks.add(format!("stage {} count {want}", i + 1), got == want);
        }
    }

    let mut table = String::new();
    let names = [
        "adjunctive characteristic box",
        "dimension filter",
        "triples",
        "lifted dimension filter",
        "integral and characteristic",
        "chamber differs",
    ];
    for (i, (name, c)) in names.iter().zip(counts).enumerate() {
        let _ = writeln!(table, "stage {}  {:<30} {c:>8}", i + 1, name);
    }
    for x in &report.survivors {
        let _ = writeln!(table, "survivor {:?} with {:?}: lift {:?}, d = {}", x.tuple.0, x.phi, x.lift, x.d);
    }
    let _ = writeln!(table, "elapsed {elapsed:.2} s");
    checks.render(&mut table);
    let pass = checks.pass();
    Ok(Outcome {
        pass,
        report: json!({
            "counts": report.counts,
            "survivors": report.survivors,
            "wall": report.wall,
            "phi": phi,
            "checks": checks.value(),
            "pass": pass,
        }),
        table,
    })
}

// knot-surgery

pub fn knot_surgery(n: u64) -> Result<Outcome, Error> {
    let r = swsearch::knot_surgery_checks(n)?;
    let mut table = String::new();
    let flag = |b: bool| if b { "ok" } else { "FAIL" };
    let _ = writeln!(table, "n = {n}");
    let _ = writeln!(table, "embedded spheres      {}", flag(r.configuration.pass));
    let _ = writeln!(
        table,
        "chamber vector        {}  (sphere pairings [{}])",
        flag(r.chamber.pass),
        join(&r.chamber.sphere_pairings)
    );
    if let Some(fix) = &r.chamber.repaired {
        let _ = writeln!(table, "  orthogonal projection {fix}");
    }
    let _ = writeln!(table, "no wall               {}  (K.H {}, K.h {})", flag(r.no_wall), r.chamber.dot_k, r.k_dot_h);
    let _ = writeln!(table, "(chi, sigma)          {:?} -> {:?}", r.ambient, r.surgered);
    let _ = writeln!(table, "d(K) before           {}", r.d_ambient_k);
    let _ = writeln!(table, "d(K) after            {}  (restricted square {})", r.d_surgered_k, r.k_restricted_square);
    let _ = writeln!(
        table,
        "minimality bound      {}  (restricted square {}, filling max {})",
        r.minimality_bound, r.p_restricted_square, r.filling_max_square
    );
    let _ = writeln!(table, "SW(K) up to sign      {}", r.sw_value);
    Ok(Outcome {
        pass: r.pass,
        report: to_value(&r),
        table,
    })
}

// homeo-type

pub struct HomeoArgs {
    pub ambient: (i64, i64),
    pub plumbing: (i64, i64),
    pub filling: (i64, i64),
    pub expect: Option<(i64, i64)>,
}

/// `(χ, σ)` of the plumbing and filling of a named surgery.
pub fn surgery_pieces(name: &str) -> Result<((i64, i64), (i64, i64)), Error> {
    let (g, h): (StarPlumbing, Handlebody) = match name.to_ascii_lowercase().as_str() {
        "s1" | "s2" | "s3" | "s4" => {
            let i: usize = name[1..].parse().expect("digit");
            (StarPlumbing::star(i), catalog::t_filling(i))
        }
        "q" => (catalog::q_plumbing(), catalog::r_filling()),
        "u" => (catalog::u_plumbing(), catalog::v_filling()),
        "k" => (catalog::k_plumbing(), catalog::l_filling()),
        _ => {
            return Err(Error::SchemaError {
                field: "--surgery".into(),
                reason: format!("unknown surgery `{name}` (s1..s4, q, u, k)"),
            })
        }
    };
    let p = plumbing::plumbing_invariants(&g)?;
    let f = handlebody::homology_report(&h, None)?;
    Ok(((p.euler_characteristic, p.signature), (f.euler_characteristic, f.signature)))
}

pub fn homeo_type(args: &HomeoArgs) -> Result<Outcome, Error> {
    let r = homblowup::homeo_type_report(args.ambient, args.plumbing, args.filling);
    let pass = args.expect.is_none_or(|e| e == (r.chi, r.sigma));
    let mut table = String::new();
    let _ = writeln!(
        table,
        "{:?} - {:?} + {:?} = (chi {}, sigma {})",
        args.ambient, args.plumbing, args.filling, r.chi, r.sigma
    );
    let _ = writeln!(table, "b+ {}, b- {}, intersection form {:?}", r.b_plus, r.b_minus, r.parity);
    let _ = writeln!(table, "3 sigma + 2 chi       {}", r.k_square);
    if let Some(e) = args.expect {
        let _ = writeln!(table, "expected {:?}  {}", e, if pass { "ok" } else { "FAIL" });
    }
    Ok(Outcome {
        pass,
        report: json!({
            "ambient": args.ambient,
            "plumbing": args.plumbing,
            "filling": args.filling,
            "result": r,
            "pass": pass,
        }),
        table,
    })
}
