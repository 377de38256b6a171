use psiset_core::scenarios::{parse_scenario, save_scenario, Format, RunOptions};
use psiset_core::{list_builtins, load_scenario, run_scenario, Scenario, ScenarioError};

const CUSTOM: &str = r#"{
  "schema_version": 1,
  "name": "two-points",
  "problem": {
    "type": "set-valued",
    "grid": [[0.0], [1.0], [2.0]],
    "values": [[[1.0, 0.0]], [[0.0, 1.0]], null],
    "cone": {"kind": "orthant", "d": 2},
    "family": {"kind": "linear", "directions": [[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]}
  },
  "eps_ladder": [0.5, 0.1],
  "seed": 3
}"#;

fn schema_pointer(text: &str) -> String {
    match parse_scenario(text, "inline") {
        Err(ScenarioError::Schema { pointer, .. }) => pointer,
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn catalog_covers_the_named_examples() {
    let cat = list_builtins();
    assert!(cat.len() >= 15);
    for name in [
        "indicator",
        "lexicographic",
        "nonsolid",
        "eps_plus",
        "frank",
        "no_lattice_min",
        "two_families",
        "vector_min_gap",
        "eps_h",
        "weff_linear",
        "weff_translative",
        "ssd_avar",
        "fsd_multivariate",
        "bewley_sup",
        "wellposed_halfplane",
    ] {
        let e = cat.iter().find(|e| e.name == name).unwrap_or_else(|| panic!("{name} missing"));
        assert!(!e.source.is_empty());
    }
    assert!(matches!(Scenario::builtin("nope"), Err(ScenarioError::UnknownBuiltin(_))));
}

#[test]
fn file_round_trip_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    let sc = parse_scenario(CUSTOM, "inline").unwrap();
    save_scenario(&sc, &first).unwrap();
    let loaded = load_scenario(&first).unwrap();
    assert_eq!(loaded, sc);
    save_scenario(&loaded, &second).unwrap();
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());

    let b = Scenario::builtin("frank").unwrap();
    save_scenario(&b, &first).unwrap();
    assert_eq!(load_scenario(&first).unwrap(), b);
}

#[test]
fn schema_errors_carry_pointers() {
    let bad_eps = CUSTOM.replace("[0.5, 0.1]", "[0.5, -0.1]");
    assert_eq!(schema_pointer(&bad_eps), "/eps_ladder/1");
    let increasing = CUSTOM.replace("[0.5, 0.1]", "[0.1, 0.5]");
    assert!(schema_pointer(&increasing).starts_with("/eps_ladder"));
    let bad_cone = CUSTOM.replace(r#""d": 2"#, r#""d": "two""#);
    assert_eq!(schema_pointer(&bad_cone), "/problem/cone/d");
    let bad_kind = CUSTOM.replace(r#""kind": "linear""#, r#""kind": "quadratic""#);
    assert_eq!(schema_pointer(&bad_kind), "/problem/family/kind");
    let extra = CUSTOM.replace(r#""seed": 3"#, r#""seed": 3, "colour": "red""#);
    assert_eq!(schema_pointer(&extra), "/colour");
    assert!(matches!(parse_scenario("{", "inline"), Err(ScenarioError::Parse { .. })));
    let missing = std::path::Path::new("/nonexistent/scenario.json");
    assert!(matches!(load_scenario(missing), Err(ScenarioError::Io { .. })));
}

#[test]
fn custom_problem_runs() {
    let sc = parse_scenario(CUSTOM, "inline").unwrap();
    let out = run_scenario(&sc, &RunOptions::default()).unwrap();
    assert!(out.passed(), "{:?}", out.failures().collect::<Vec<_>>());
    assert!(out.files.is_empty());
    let json: serde_json::Value = serde_json::from_str(&out.json).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert!(out.csv.starts_with("scenario,problem,eps,mode,set_size,representatives,hausdorff_to_zero,infimizer,solution"));
}

#[test]
fn runs_are_deterministic_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let opts = RunOptions { out_dir: Some(dir.path().to_path_buf()), formats: Some(vec![Format::Csv]) };
    let sc = Scenario::builtin("two_cluster").unwrap();
    let a = run_scenario(&sc, &opts).unwrap();
    let bytes = std::fs::read(dir.path().join("two_cluster.csv")).unwrap();
    let b = run_scenario(&sc, &opts).unwrap();
    assert_eq!(a.csv, b.csv);
    assert_eq!(bytes, std::fs::read(dir.path().join("two_cluster.csv")).unwrap());
    assert!(!dir.path().join("two_cluster.json").exists());
}

#[test]
fn every_builtin_passes_its_checks() {
    for e in list_builtins() {
        let out = run_scenario(&Scenario::builtin(e.name).unwrap(), &RunOptions::default()).unwrap();
        let failed: Vec<_> = out.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        assert!(failed.is_empty(), "{}: {failed:?}", e.name);
    }
}
