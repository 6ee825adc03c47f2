use std::path::PathBuf;
use std::process::Command;

use qtau::lie::RootSystem;
use qtau::manifold::{tau, Flavor, ManifoldSpec};
use qtau_cli::record::ExactValue;
use serde_json::Value;

fn spec(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name).display().to_string()
}

fn qtau(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qtau")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, text) = qtau(args);
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

fn exact(v: &Value) -> ExactValue {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn poincare_projective_matches_library() {
    let path = spec("poincare.json");
    let (code, v) = json(&["invariant", "--algebra", "A1", "--r", "5", "--spec", &path, "--flavor", "projective"]);
    assert_eq!(code, 0);
    let inv = &v["invariants"][0];
    assert_eq!(inv["integral"], true);
    assert_eq!(inv["defined"], true);
    let spec = ManifoldSpec::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let lib = tau(&spec, &RootSystem::from_label("A1").unwrap(), 5, 1, Flavor::Projective).unwrap();
    assert_eq!(exact(&inv["value"]).to_cyc().unwrap(), lib.value);
}

#[test]
fn sphere_is_one_in_every_flavor() {
    let (code, v) = json(&["invariant", "--algebra", "A1", "--r", "5", "--spec", &spec("s3.json"), "--flavor", "all"]);
    assert_eq!(code, 0);
    let invs = v["invariants"].as_array().unwrap();
    assert_eq!(invs.len(), 3);
    for inv in invs {
        assert!(exact(&inv["value"]).to_cyc().unwrap().is_one());
    }
}

#[test]
fn undefined_invariant_is_reported() {
    let (code, v) = json(&["invariant", "--algebra", "C2", "--r", "5", "--spec", &spec("lens_b2.json"), "--flavor", "full"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "undefined");
    let inv = &v["invariants"][0];
    assert_eq!(inv["defined"], false);
    assert!(exact(&inv["value"]).to_cyc().unwrap().is_zero());
}

#[test]
fn braid_record_agrees_with_special_trefoil() {
    let value = |file: &str| {
        let (code, v) = json(&["invariant", "--algebra", "A1", "--r", "7", "--spec", &spec(file), "--flavor", "full,projective"]);
        assert_eq!(code, 0);
        v["invariants"].clone()
    };
    let special = std::fs::read_to_string(spec("poincare.json")).unwrap().replace("-1", "1").replace("left", "right");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("trefoil_right_1.json");
    std::fs::write(&tmp, special).unwrap();
    let a = value(tmp.to_str().unwrap());
    let b = value("braid_trefoil.json");
    for k in 0..2 {
        assert_eq!(exact(&a[k]["value"]), exact(&b[k]["value"]));
    }
}

#[test]
fn example_specs_round_trip() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let s = ManifoldSpec::from_json(&text).unwrap();
        assert_eq!(ManifoldSpec::from_json(&s.to_json()).unwrap(), s);
        n += 1;
    }
    assert!(n >= 8);
}

#[test]
fn verify_examples_pass() {
    let cases: Vec<Vec<String>> = vec![
        vec!["splitting".into(), "--algebra".into(), "A1".into(), "--r".into(), "5".into()],
        vec!["gauss-vanish".into(), "--algebra".into(), "C2".into(), "--r".into(), "5".into()],
        vec!["congruence".into(), "--algebra".into(), "A1".into(), "--spec".into(), spec("poincare.json"), "--primes".into(), "7,11,13".into(), "--order".into(), "4".into()],
        vec!["smatrix".into(), "--algebra".into(), "A2".into(), "--r".into(), "5".into()],
        vec!["kirby".into(), "--algebra".into(), "A1".into(), "--r".into(), "7".into()],
        vec!["integrality".into(), "--algebra".into(), "A2".into(), "--r".into(), "7".into()],
        vec!["symmetry1".into(), "--algebra".into(), "A1".into(), "--r".into(), "5".into()],
        vec!["symmetry2".into(), "--algebra".into(), "A1".into(), "--r".into(), "7".into()],
    ];
    for args in cases {
        let mut full = vec!["verify"];
        full.extend(args.iter().map(String::as_str));
        let (code, v) = json(&full);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["failed"], 0);
        assert!(v["passed"].as_u64().unwrap() > 0);
    }
    let (_, v) = json(&["verify", "gauss-vanish", "--algebra", "C2", "--r", "5"]);
    assert_eq!(v["cases"][0]["detail"], "expected vanishes, computed vanishes");
}

#[test]
fn gauss_vanish_reports_mismatch_as_check_failure() {
    let (code, v) = json(&["verify", "gauss-vanish", "--algebra", "B4", "--r", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "check_failed");
}

#[test]
fn series_outputs() {
    let (code, v) = json(&["series", "--algebra", "A1", "--spec", &spec("lens_b2.json"), "--order", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["series"]["coeffs"].as_array().unwrap().len(), 5);

    let (_, v) = json(&["series", "--algebra", "A1", "--spec", &spec("s3.json"), "--order", "4"]);
    let c: Vec<(String, String)> = v["series"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["num"].as_str().unwrap().into(), x["den"].as_str().unwrap().into()))
        .collect();
    let one = ("1".to_string(), "1".to_string());
    let zero = ("0".to_string(), "1".to_string());
    assert_eq!(c, vec![one, zero.clone(), zero.clone(), zero.clone(), zero]);

    let (code, v) = json(&["series", "--algebra", "A1", "--spec", &spec("poincare.json"), "--primes", "7,11,13"]);
    assert_eq!(code, 0);
    let table = v["series"]["residues"].as_array().unwrap();
    assert_eq!(table.len(), 3);
    assert!(table.iter().all(|t| t["pass"] == true));
}

#[test]
fn reproducible_output_is_byte_identical() {
    let args = ["invariant", "--algebra", "A2", "--r", "5", "--spec", &spec("hopf_2_2.json"), "--flavor", "all", "--reproducible"];
    let (_, a) = qtau(&args);
    let (_, b) = qtau(&args);
    assert_eq!(a, b);
    assert!(!a.contains("elapsed_ms"));
    let (_, c) = qtau(&args[..args.len() - 1]);
    assert!(c.contains("elapsed_ms"));
}

#[test]
fn approximation_agrees_with_exact_value() {
    for digits in ["6", "12", "15"] {
        let (_, v) = json(&["invariant", "--algebra", "A1", "--r", "11", "--spec", &spec("brieskorn237.json"), "--flavor", "all", "--digits", digits]);
        let d: i32 = digits.parse().unwrap();
        for inv in v["invariants"].as_array().unwrap() {
            let x = exact(&inv["value"]);
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for (k, c) in x.coeffs.iter().enumerate() {
                let (n, dn) = c.split_once('/').unwrap_or((c, "1"));
                let c = n.parse::<f64>().unwrap() / dn.parse::<f64>().unwrap();
                let t = std::f64::consts::TAU * k as f64 / x.m as f64;
                re += c * t.cos();
                im += c * t.sin();
            }
            let tol = 10f64.powi(-d).max(1e-13);
            let got_re: f64 = inv["approx"]["re"].as_str().unwrap().parse().unwrap();
            let got_im: f64 = inv["approx"]["im"].as_str().unwrap().parse().unwrap();
            assert!((got_re - re).abs() <= tol && (got_im - im).abs() <= tol, "{inv}");
            assert_eq!(inv["approx"]["re"].as_str().unwrap().split('.').nth(1).unwrap().len(), d as usize);
        }
    }
}

#[test]
fn out_flag_writes_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qtau_out.json");
    let _ = std::fs::remove_file(&path);
    let (code, stdout) = qtau(&["verify", "smatrix", "--algebra", "A1", "--r", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "ok");
}

#[test]
fn error_classes_map_to_exit_codes() {
    let s3 = spec("s3.json");
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["invariant", "--algebra", "Q1", "--r", "5", "--spec", &s3], 2, "bad_input"),
        (vec!["invariant", "--algebra", "A1", "--spec", &s3], 2, "bad_input"),
        (vec!["invariant", "--algebra", "A1", "--r", "5"], 2, "bad_input"),
        (vec!["invariant", "--algebra", "A2", "--rank", "3", "--r", "5", "--spec", &s3], 2, "bad_input"),
        (vec!["invariant", "--algebra", "A1", "--r", "5", "--spec", &s3, "--digits", "20"], 2, "bad_input"),
        (vec!["invariant", "--algebra", "A1", "--r", "5", "--spec", "/no/such/file.json"], 2, "bad_input"),
        (vec!["series", "--algebra", "A1", "--spec", &s3, "--primes", "7,9"], 2, "bad_input"),
        (vec!["invariant", "--algebra", "E8", "--r", "31", "--spec", &s3, "--flavor", "full"], 3, "resource"),
        (vec!["verify", "symmetry1", "--algebra", "A2", "--r", "7", "--max-enumeration", "10"], 3, "resource"),
    ];
    for (args, want, class) in cases {
        let (code, v) = json(&args);
        assert_eq!(code, want, "{args:?}");
        assert_eq!(v["error"]["class"], class, "{args:?}");
    }
    let (code, _) = qtau(&["invariant", "--algebra", "A1", "--r", "5", "--max-weyl", "0"]);
    assert_eq!(code, 2);
    let (code, v) = json(&["invariant", "--algebra", "A", "--rank", "2", "--r", "5", "--spec", &s3]);
    assert_eq!(code, 0);
    assert_eq!(v["job"]["algebra"], "A2");
}
