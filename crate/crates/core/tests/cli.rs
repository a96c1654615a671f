//! End-to-end tests of the command-line surface.

use std::path::PathBuf;
use std::process::Command;

use normcat::cli::instance::{parse_instance, Instance};
use normcat::cli::{run, Outcome};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("normcat").chain(args.iter().copied()))
}

/// `name → value` pairs from each output format.
fn results(args: &[&str], format: &str) -> Vec<(String, String)> {
    let mut full = vec!["--format", format];
    full.extend_from_slice(args);
    let out = cli(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    match format {
        "json" => {
            let v: Value = serde_json::from_str(&out.stdout).unwrap();
            v["results"]
                .as_array()
                .unwrap()
                .iter()
                .map(|r| {
                    let value = match &r["value"] {
                        Value::String(s) => s.clone(),
                        n => format!("{}", n.as_f64().unwrap()),
                    };
                    (r["name"].as_str().unwrap().to_string(), value)
                })
                .collect()
        }
        "csv" => out
            .stdout
            .lines()
            .filter_map(|l| l.strip_prefix("result,"))
            .map(|l| {
                let (n, v) = l.split_once(',').unwrap();
                (n.to_string(), v.to_string())
            })
            .collect(),
        _ => out
            .stdout
            .lines()
            .filter(|l| !l.starts_with("seed:") && !l.starts_with("elapsed_ms:") && !l.contains("(witness)"))
            .map(|l| {
                let (n, v) = l.split_once(": ").unwrap();
                (n.to_string(), v.to_string())
            })
            .collect(),
    }
}

fn value(args: &[&str], name: &str) -> f64 {
    let r = results(args, "text");
    let v = &r.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no {name} in {r:?}")).1;
    if v == "inf" {
        f64::INFINITY
    } else {
        v.parse().unwrap()
    }
}

#[test]
fn gh_of_two_point_spaces() {
    let (a, b) = (data("two_point_1.json"), data("two_point_2.json"));
    assert_eq!(value(&["dist", "--kind", "gh", &a, &b], "gh"), 0.5);
    assert_eq!(value(&["dist", "--kind", "dil-plus", &a, &b], "dil_plus"), 0.5);
}

#[test]
fn component_norm_of_sierpinski_bijection() {
    let m = data("sierpinski_bij.json");
    assert_eq!(value(&["norm", "--kind", "comp", "--map", &m], "component"), std::f64::consts::LN_2);
    assert_eq!(value(&["norm", "--kind", "comp", "--map", &m], "monotone"), 1.0);
}

#[test]
fn collapse_map_values() {
    let m = data("collapse_to_ends.json");
    assert_eq!(value(&["norm", "--kind", "dil-dual", "--map", &m], "dilatation_left_dual"), 1.0);
    assert_eq!(value(&["norm", "--kind", "codiam", "--map", &m], "codiameter"), 0.0);
}

#[test]
fn dirac_pair_distances() {
    let (a, b) = (data("dirac_a.json"), data("dirac_b.json"));
    assert_eq!(value(&["dist", "--kind", "w1", &a, &b], "w1"), 1.0);
    assert_eq!(value(&["dist", "--kind", "prokhorov", &a, &b], "prokhorov"), 1.0);
}

#[test]
fn metric_suite_passes() {
    let out = cli(&["check", "--suite", "metric", "--cases", "200", "--seed", "7"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("[pass]") && !out.stdout.contains("FAIL"));
}

#[test]
fn input_errors_exit_with_two() {
    let bad = cli(&["dist", "--kind", "gh", &data("bad_diagonal.json"), &data("two_point_1.json")]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("diagonal"), "{}", bad.stderr);
    let empty = cli(&["norm", "--kind", "dil", "--map", &data("empty_value.json")]);
    assert_eq!(empty.code, 2);
    assert!(empty.stderr.contains("nonempty assignment"), "{}", empty.stderr);
    assert_eq!(cli(&["norm", "--kind", "nonsense", "--map", &data("z4.json")]).code, 2);
    assert_eq!(cli(&["norm", "--kind", "dil", "--map", "/nonexistent.json"]).code, 2);
    assert_eq!(cli(&["generate", "--kind", "poset", "--size", "99"]).code, 2);
    // a metric space is not a map
    assert_eq!(cli(&["norm", "--kind", "dil", "--map", &data("two_point_1.json")]).code, 2);
}

#[test]
fn formats_carry_identical_numbers() {
    let cases: Vec<Vec<String>> = vec![
        vec!["dist".into(), "--kind".into(), "gh".into(), data("two_point_1.json"), data("two_point_2.json")],
        vec!["norm".into(), "--kind".into(), "comp".into(), "--map".into(), data("sierpinski_bij.json")],
        vec!["norm".into(), "--kind".into(), "op".into(), "--map".into(), data("scaling.json")],
        vec!["norm".into(), "--kind".into(), "groth".into(), "--map".into(), data("z4.json"), "--from".into(), "0".into(), "--to".into(), "2".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (j, c, t) = (results(&args, "json"), results(&args, "csv"), results(&args, "text"));
        assert!(!j.is_empty());
        assert_eq!(j, c, "{args:?}");
        assert_eq!(j, t, "{args:?}");
    }
}

const KINDS: [&str; 9] = ["metric", "metric-matrix", "integer-metric", "mm", "poset", "simplicial", "matrix", "finfun", "map"];

#[test]
fn generate_parse_serialize_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for kind in KINDS {
        for seed in ["1", "7"] {
            let path = dir.path().join(format!("{kind}_{seed}.json"));
            let p = path.display().to_string();
            let out = cli(&["--seed", seed, "generate", "--kind", kind, "--size", "3", "--out", &p]);
            assert_eq!(out.code, 0, "{kind}: {}", out.stderr);
            let text = std::fs::read_to_string(&path).unwrap();
            parse_instance(&path).unwrap_or_else(|e| panic!("{kind}: {e}"));
            assert_eq!(Instance::from_json(&text).unwrap().to_json(), text, "{kind}");
        }
    }
}

#[test]
fn generated_mm_space_is_a_probability() {
    let out = cli(&["--seed", "1", "generate", "--kind", "mm", "--size", "3"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let mass: Vec<f64> = v["mass"].as_array().unwrap().iter().map(|m| m.as_f64().unwrap()).collect();
    assert_eq!(mass.len(), 3);
    assert!(mass.iter().all(|&m| m >= 0.0));
    assert!((mass.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn generation_is_deterministic() {
    for kind in KINDS {
        let a = cli(&["--seed", "7", "generate", "--kind", kind, "--size", "4"]);
        let b = cli(&["--seed", "7", "generate", "--kind", kind, "--size", "4"]);
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
}

#[test]
fn seed_defaults_to_environment() {
    let bin = env!("CARGO_BIN_EXE_normcat");
    let from_env = Command::new(bin)
        .env("NORMCAT_SEED", "42")
        .args(["generate", "--kind", "metric", "--size", "4"])
        .output()
        .unwrap();
    let from_flag = Command::new(bin)
        .env_remove("NORMCAT_SEED")
        .args(["--seed", "42", "generate", "--kind", "metric", "--size", "4"])
        .output()
        .unwrap();
    assert!(from_env.status.success());
    assert_eq!(from_env.stdout, from_flag.stdout);
    let echoed = Command::new(bin)
        .env("NORMCAT_SEED", "42")
        .args(["dist", "--kind", "gh", &data("two_point_1.json"), &data("two_point_2.json")])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&echoed.stdout).starts_with("seed: 42\n"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_normcat");
    let wrong_kind = Command::new(bin).args(["norm", "--kind", "set", "--map", &data("z4.json")]).status();
    // z4.json is a monoid, not a finite function
    assert_eq!(wrong_kind.unwrap().code(), Some(2));
    let bad = Command::new(bin).args(["dist", "--kind", "gh", &data("bad_diagonal.json"), &data("two_point_1.json")]).status();
    assert_eq!(bad.unwrap().code(), Some(2));
    let good = Command::new(bin).args(["dist", "--kind", "gh", &data("two_point_1.json"), &data("two_point_2.json")]).status();
    assert_eq!(good.unwrap().code(), Some(0));
}
