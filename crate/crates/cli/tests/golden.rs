use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_starsurg")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, text) = run(&all);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn check(report: &Value, name: &str) -> bool {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"].as_str().unwrap().starts_with(name))
        .unwrap_or_else(|| panic!("no check `{name}`"))["pass"]
        .as_bool()
        .unwrap()
}

#[test]
fn genlantern_three() {
    let (code, r) = run_json(&["verify-relation", "--name", "genlantern", "--i", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["relations"][0]["equal"], true);
    assert_eq!(r["relations"][0]["holes"], 5);
}

#[test]
fn relation_suite_with_perturbations() {
    let (code, r) = run_json(&["verify-relation", "--all", "--perturbations"]);
    assert_eq!(code, 0);
    let rels = r["relations"].as_array().unwrap();
    assert!(rels.len() > 60);
    for rel in rels {
        assert_eq!(rel["equal"], true, "{rel}");
        assert_eq!(rel["perturbations"]["equal"], 0, "{rel}");
    }
}

#[test]
fn mirror_convention_flag() {
    let (code, r) = run_json(&["verify-relation", "--name", "lantern"]);
    assert_eq!(code, 0);
    assert_eq!(r["self_test"], true);
    let default = r["convention"].clone();
    // The opposite gathering composes the mirror image and breaks the lantern relation.
    let (code, r) = run_json(&["--mirror-convention", "verify-relation", "--name", "lantern"]);
    assert_eq!(code, 1);
    assert_ne!(r["convention"], default);
    assert_eq!(r["self_test"], false);
}

#[test]
fn lantern_with_blocks() {
    let (code, _) = run(&["verify-relation", "--name", "lantern", "--blocks", "1,2/3/4,5"]);
    assert_eq!(code, 0);
}

#[test]
fn t2_filling() {
    let (code, r) = run_json(&["analyze-filling", &data("t2.json")]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["homology"]["euler_characteristic"], 3);
    assert_eq!(r["homology"]["signature"], -2);
    assert_eq!(r["pi1"]["order"], 2);
    assert_eq!(r["boundary_h1"]["torsion"], serde_json::json!([2, 2, 12]));
    assert_eq!(r["restriction"]["index"], 2);
    assert_eq!(r["c1"], serde_json::json!([0, 0]));
}

#[test]
fn other_fillings() {
    for f in ["r.json", "v.json", "l.json"] {
        let (code, r) = run_json(&["analyze-filling", &data(f)]);
        assert_eq!(code, 0, "{f}: {r}");
    }
}

#[test]
fn coset_budget_is_a_check_failure() {
    let (code, r) = run_json(&["--max-cosets", "1", "analyze-filling", &data("t2.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["pi1"]["order"], Value::Null);
}

#[test]
fn monodromy_words() {
    for f in ["s1.json", "s3.json", "s4.json", "q.json", "u.json", "k.json"] {
        let (code, r) = run_json(&["analyze-plumbing", &data(f)]);
        assert_eq!(code, 0, "{f}: {r}");
        assert!(check(&r, "boundary monodromy word"), "{f}");
    }
}

#[test]
fn s2_plumbing_against_printed_values() {
    let (code, r) = run_json(&["analyze-plumbing", &data("s2.json")]);
    assert!(check(&r, "boundary monodromy word"));
    assert!(check(&r, "distinguished representatives"));
    assert!(check(&r, "boundary first homology"));
    // The printed reduced set differs from the computed one.
    assert!(!check(&r, "reduced dimensions"));
    assert_eq!(code, 1);
    assert_eq!(r["orbits"]["phi"].as_array().unwrap().len(), 24);
}

#[test]
fn embeddings() {
    for f in ["s2_embedding.json", "u_embedding.json", "k_embedding.json"] {
        let (code, r) = run_json(&["verify-embedding", &data(f)]);
        assert_eq!(code, 0, "{f}: {r}");
    }
    let (_, r) = run_json(&["verify-embedding", &data("s2_embedding.json")]);
    assert_eq!(r["chamber"]["square"], 228);
    assert_eq!(r["chamber"]["dot_k"], 18);
    assert_eq!(r["homeo_type"]["chi"], 11);
    assert_eq!(r["homeo_type"]["sigma"], -7);
}

#[test]
fn printed_chamber_vectors_that_fail() {
    let (code, r) = run_json(&["verify-embedding", &data("q_embedding.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["configuration"]["pass"], true);
    assert_eq!(r["chamber"]["sphere_pairings"], serde_json::json!([114, 0, 0, 0, 0, 0, 0]));
    let (code, r) = run_json(&["verify-embedding", &data("knot_embedding.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["configuration"]["pass"], true);
    assert_eq!(r["chamber"]["sphere_pairings"], serde_json::json!([0, 1, 0, 0, 1]));
}

#[test]
fn singular_fibers() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.file_name().unwrap().to_str().unwrap().starts_with("fiber_") {
            let (code, r) = run_json(&["verify-embedding", path.to_str().unwrap()]);
            assert_eq!(code, 0, "{}: {r}", path.display());
            assert_eq!(r["fiber"]["sums_to_fiber"], true);
            seen += 1;
        }
    }
    assert_eq!(seen, 8);
}

#[test]
fn kodaira_dimension_two() {
    let (code, r) = run_json(&["kodaira", &data("s2_embedding.json")]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(
        r["functional_text"],
        "5 a - 2 b1 - 3/2 b2 - 3/2 b3 - 3/2 b4 - 3/2 b5 - 3/2 b6 - 3/2 b7 - 3/2 b8 - 3/2 b9 - b10 - b11"
    );
    assert_eq!(r["report"]["kodaira_dimension"], "2");
    assert_eq!(r["report"]["k_square"], 1);
}

#[test]
fn sw_search_default_config() {
    let (code, r) = run_json(&["sw-search", "--config", &data("default.json")]);
    let counts = &r["counts"];
    let got: Vec<u64> = ["box_size", "dimension", "triples", "lifted_dimension", "characteristic", "chamber"]
        .iter()
        .map(|k| counts[k].as_u64().unwrap())
        .collect();
    assert_eq!(got, [243_000, 25_040, 600_960, 219_064, 25_040, 2]);
    // Only the fifth printed count disagrees.
    assert!(!check(&r, "stage 5"));
    assert!(check(&r, "stage 6"));
    assert!(check(&r, "survivors closed under negation"));
    assert_eq!(code, 1);
}

#[test]
fn sw_search_output_is_byte_identical_across_workers() {
    let (_, one) = run(&["--json", "--workers", "1", "sw-search"]);
    let (_, four) = run(&["--json", "--workers", "4", "sw-search"]);
    let (_, again) = run(&["--json", "--workers", "4", "sw-search"]);
    assert_eq!(one, four);
    assert_eq!(four, again);
}

#[test]
fn knot_surgery() {
    let (code, r) = run_json(&["knot-surgery", "--n", "3"]);
    assert_eq!(r["d_ambient_k"], "0");
    assert_eq!(r["d_surgered_k"], "0");
    assert_eq!(r["minimality_bound"], "-2/3");
    assert_eq!(r["sw_value"], 3);
    assert_eq!(r["chamber"]["pass"], false);
    assert_eq!(code, 1);
}

#[test]
fn homeomorphism_types() {
    for (args, chi, sigma) in [
        (vec!["--surgery", "s2"], 11, -7),
        (vec!["--blowups", "12", "--surgery", "q"], 10, -6),
        (vec!["--blowups", "13", "--surgery", "u"], 9, -5),
        (vec!["--blowups", "12", "--surgery", "k"], 11, -7),
        (vec!["--ambient", "13,-9", "--surgery", "s2"], 10, -6),
        (vec!["--plumbing", "6,-5", "--filling", "3,-2"], 11, -7),
    ] {
        let expect = format!("{chi},{sigma}");
        let mut all = vec!["homeo-type"];
        all.extend(args.iter().copied());
        all.extend(["--expect", &expect]);
        let (code, r) = run_json(&all);
        assert_eq!(code, 0, "{args:?}: {r}");
    }
    let (code, _) = run(&["homeo-type", "--surgery", "s2", "--expect", "0,0"]);
    assert_eq!(code, 1);
}

#[test]
fn twistword_document() {
    let dir = std::env::temp_dir().join(format!("starsurg-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let same = dir.join("lantern.json");
    std::fs::write(&same, r#"{"kind":"twistword","lhs":"D123 D1 D2 D3","rhs":"D12 D13 D23"}"#).unwrap();
    assert_eq!(run(&["verify-relation", "--file", same.to_str().unwrap()]).0, 0);
    let wrong = dir.join("wrong.json");
    std::fs::write(&wrong, r#"{"kind":"twistword","lhs":"D123 D1 D2 D3","rhs":"D12 D23 D13 D1"}"#).unwrap();
    assert_eq!(run(&["verify-relation", "--file", wrong.to_str().unwrap()]).0, 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("starsurg-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad_arm = dir.join("arm.json");
    std::fs::write(&bad_arm, r#"{"kind":"plumbing","center":-5,"arms":[[-2,"x"]]}"#).unwrap();
    let truncated = dir.join("truncated.json");
    std::fs::write(&truncated, r#"{"kind":"plumbing","#).unwrap();
    for args in [
        vec!["analyze-plumbing", bad_arm.to_str().unwrap()],
        vec!["analyze-plumbing", truncated.to_str().unwrap()],
        vec!["analyze-plumbing", "/nonexistent/input.json"],
        vec!["analyze-filling", &data("s2.json")],
        vec!["verify-relation", "--name", "nonesuch"],
        vec!["verify-relation"],
        vec!["knot-surgery", "--n", "1"],
        vec!["homeo-type", "--surgery", "z"],
    ] {
        let (code, _) = run(&args);
        assert_eq!(code, 2, "{args:?}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn unknown_command_is_rejected() {
    let (code, _) = run(&["blow-down"]);
    assert_ne!(code, 0);
}
