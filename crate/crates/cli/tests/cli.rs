use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qhimpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhimpl"))
        .args(args)
        .env_remove("QHAM_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = qhimpl(&full);
    let v: Value = serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&o.stderr)));
    (v, o.status.code().unwrap())
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

#[test]
fn strata_a2_json() {
    let (v, code) = json(&["strata", "--type", "A", "--rank", "2"]);
    assert_eq!(code, 0);
    let strata = v["result"]["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 7);
    let mut dims: Vec<u64> = strata.iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![0, 0, 0, 6, 6, 6, 10]);
    assert_eq!(v["seed"], 0);
}

#[test]
fn weights_f4_text() {
    let o = qhimpl(&["weights", "--type", "F", "--rank", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "2 3 2 1 1"), "{}", stdout(&o));
}

#[test]
fn weights_full_table() {
    let o = qhimpl(&["weights"]);
    let out = stdout(&o);
    for row in [
        "A_r  (1,1,…,1)",
        "B_r  (1,2,2,…,2,1,1)",
        "C_r  (1,1,…,1)",
        "D_r  (1,2,2,…,2,1,1,1)",
        "E_6  (1,2,2,3,2,1,1)",
        "E_7  (2,2,3,4,3,2,1,1)",
        "E_8  (2,3,4,6,5,4,3,2,1)",
        "F_4  (2,3,2,1,1)",
        "G_2  (1,2,1)",
    ] {
        assert!(out.lines().any(|l| l == row), "missing {row:?} in\n{out}");
    }
}

#[test]
fn verify_glue_passes() {
    let (v, code) = json(&["verify-glue", "--n", "3", "--samples", "100", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 7);
    for c in v["result"]["checks"].as_array().unwrap() {
        assert!(c["max_residual"].as_f64().unwrap() <= 1e-6, "{c}");
    }
}

#[test]
fn output_is_byte_identical() {
    for args in [
        vec!["verify-numeric", "double", "--n", "2", "--samples", "20", "--seed", "3", "--format", "json"],
        vec!["sample-rep", "--genus", "1", "--punctures", "2", "--n", "2", "--samples", "30", "--seed", "5"],
        vec!["symmetries", "--type", "A", "--rank", "3", "--format", "csv"],
    ] {
        let a = qhimpl(&args);
        let b = qhimpl(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn every_command_matches_schema() {
    let v = schema();
    let runs: Vec<Vec<&str>> = vec![
        vec!["faces", "--type", "C", "--rank", "2"],
        vec!["strata", "--type", "A", "--rank", "3"],
        vec!["weights"],
        vec!["weights", "--type", "G2"],
        vec!["smooth", "--type", "A", "--rank", "3"],
        vec!["zeta", "--type", "D", "--rank", "4"],
        vec!["symmetries", "--type", "A", "--rank", "2"],
        vec!["check-centralizer", "--type", "B", "--rank", "3"],
        vec!["check-integrality", "--type", "E6"],
        vec!["su-embedding-check", "--n", "4"],
        vec!["verify-numeric", "disc", "--n", "2", "--samples", "5"],
        vec!["verify-numeric", "varpi", "--n", "3", "--samples", "5"],
        vec!["verify-glue", "--n", "2", "--samples", "5"],
        vec!["verify-cotangent", "--n", "2", "--samples", "5"],
        vec!["sample-rep", "--genus", "2", "--punctures", "1", "--n", "2", "--samples", "5"],
        vec!["moduli-dim", "--genus", "0", "--punctures", "3", "--type", "A", "--rank", "2", "--faces", "w1,open,w1.w2"],
        // a failing report still validates
        vec!["verify-numeric", "sphere", "--n", "2", "--samples", "5", "--tol", "1e-30"],
    ];
    for args in runs {
        let (out, _) = json(&args);
        let errors: Vec<String> = v.iter_errors(&out).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:#?}");
    }
}

#[test]
fn rationals_render_as_fractions() {
    let (v, _) = json(&["faces", "--type", "C", "--rank", "2"]);
    let vertices = v["result"]["vertices"].as_array().unwrap();
    let coords: Vec<Vec<&str>> = vertices
        .iter()
        .map(|x| x["coordinates"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect())
        .collect();
    assert!(coords.contains(&vec!["1/2", "0/1"]));
    assert!(coords.contains(&vec!["0/1", "0/1"]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["strata", "--type", "A"],
        vec!["strata", "--type", "G", "--rank", "3"],
        vec!["strata", "--type", "A", "--rank", "2", "--bogus"],
        vec!["verify-numeric", "torus"],
        vec!["verify-glue", "--tol", "-1"],
        vec!["moduli-dim", "--genus", "0", "--punctures", "2", "--type", "A2", "--faces", "open"],
        vec!["smooth", "--type", "A2", "--face", "w1.w2.w3"],
        vec!["sample-rep", "--genus", "0", "--punctures", "1"],
        vec![],
    ] {
        let o = qhimpl(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verification_failure_exits_one_with_worst_sample() {
    let o = qhimpl(&["verify-numeric", "disc", "--n", "2", "--samples", "10", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("worst failure:"), "{out}");
    assert!(out.contains("at sample"), "{out}");
}

#[test]
fn tolerance_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qhimpl"));
        c.args(["verify-glue", "--n", "2", "--samples", "10"]).args(extra);
        match env {
            Some(t) => c.env("QHAM_TOL", t),
            None => c.env_remove("QHAM_TOL"),
        };
        c.output().unwrap().status.code()
    };
    assert_eq!(run(None, &[]), Some(0));
    assert_eq!(run(Some("1e-30"), &[]), Some(1));
    // the flag wins over the environment
    assert_eq!(run(Some("1e-30"), &["--tol", "1e-3"]), Some(0));
    assert_eq!(run(Some("nonsense"), &[]), Some(2));
}

#[test]
fn output_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strata.csv");
    let o = qhimpl(&["strata", "--type", "C", "--rank", "2", "--format", "csv", "--seed", "9", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let mut lines = body.lines();
    assert!(lines.next().unwrap().starts_with("seed,sigma,"));
    assert_eq!(lines.clone().count(), 7);
    assert!(lines.all(|l| l.starts_with("9,")));
}

#[test]
fn text_records_seed() {
    let o = qhimpl(&["zeta", "--type", "A", "--rank", "2", "--seed", "42"]);
    assert!(stdout(&o).starts_with("# zeta seed=42 pass\n"));
}

#[test]
fn moduli_dim_examples() {
    let (v, code) = json(&["moduli-dim", "--genus", "1", "--punctures", "1", "--type", "A1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dims"]["dim_m_sigma"], 6);
    let (v, _) = json(&["moduli-dim", "--genus", "0", "--punctures", "3", "--type", "A1"]);
    assert_eq!(v["result"]["dims"]["dim_reduction_generic"], 0);
    assert_eq!(v["result"]["dims"]["generic"], true);
}

#[test]
fn smooth_a3_edge_not_removable() {
    let (v, _) = json(&["smooth", "--type", "A3", "--face", "w2.w3"]);
    let f = &v["result"]["faces"][0];
    assert_eq!(f["removable"], false);
    assert_eq!(f["type"], "A2");
}
