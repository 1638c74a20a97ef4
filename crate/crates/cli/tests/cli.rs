use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str], file: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_certipoly"))
        .args(args)
        .arg(file)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_system(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

/// `m*2^e` as f64.
fn dyadic(s: &Value) -> f64 {
    let (m, e) = s.as_str().unwrap().split_once("*2^").unwrap();
    m.parse::<f64>().unwrap() * 2f64.powi(e.parse().unwrap())
}

#[test]
fn solve_toy_system() {
    let v = json(&run(&["solve"], &fixture("toy_solve.sys")));
    let boxes = v.as_array().unwrap();
    assert_eq!(boxes.len(), 4);
    for b in boxes {
        let coords = b.as_array().unwrap();
        assert_eq!(coords.len(), 3);
        assert_eq!(coords[0]["var"], "mu");
        assert!(dyadic(&coords[0]["lo"]) <= dyadic(&coords[0]["hi"]));
        assert!(coords[0]["decimal"].as_str().unwrap().starts_with('['));
    }
}

#[test]
fn solve_inconsistent_is_empty() {
    let f = temp_system("vars: x\neqs:\nx\nx + 1\n");
    let v = json(&run(&["solve"], f.path()));
    assert_eq!(v, Value::Array(vec![]));
}

#[test]
fn exit_codes() {
    let bad = temp_system("vars: x\neqs:\nx^^2 - 1\n");
    assert_eq!(run(&["solve"], bad.path()).status.code(), Some(2));
    let undeclared = temp_system("vars: x\neqs:\ny - 1\n");
    assert_eq!(run(&["solve"], undeclared.path()).status.code(), Some(2));
    let missing = Path::new("/nonexistent/system.sys");
    assert_eq!(run(&["solve"], missing).status.code(), Some(2));
    let curve = temp_system("vars: x, y\neqs:\nx*y - 1\n");
    assert_eq!(run(&["solve"], curve.path()).status.code(), Some(3));
    let pole = temp_system("matrix:\n1/(s^2 + 1)\n");
    assert_eq!(run(&["hinf"], pole.path()).status.code(), Some(3));
}

#[test]
fn parametric_stability_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("cells.dat");
    let out = run(
        &["stability", "--parametric", "--plot", plot.to_str().unwrap()],
        &fixture("param_stability.sys"),
    );
    let v = json(&out);
    assert_eq!(v["stable"], serde_json::json!([["0", "-1"]]));
    assert_eq!(v["unstable"].as_array().unwrap().len(), 8);
    let text = std::fs::read_to_string(&plot).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.len() == 3));
    assert_eq!(rows.iter().filter(|r| r[2] == "stable").count(), 1);
}

#[test]
fn plain_stability() {
    let f = temp_system("vars: z1, z2\neqs:\nz1*z2 - 4\n");
    assert_eq!(json(&run(&["stability"], f.path()))["stable"], true);
    let g = temp_system("vars: z\neqs:\n2*z - 1\n");
    assert_eq!(json(&run(&["stability"], g.path()))["stable"], false);
}

#[test]
fn hinf_example() {
    let v = json(&run(&["hinf"], &fixture("golden_hinf.sys")));
    assert_eq!(v["hinf"]["lo"], "51*2^-5");
    assert_eq!(v["hinf"]["hi"], "13*2^-3");
    let v = json(&run(&["hinf", "--starting-precision", "10"], &fixture("golden_hinf.sys")));
    let (lo, hi) = (dyadic(&v["hinf"]["lo"]), dyadic(&v["hinf"]["hi"]));
    assert!(lo <= 1.61803 && 1.61803 <= hi && hi - lo <= 1e-3);
}

#[test]
fn cad_dv_rur_refine() {
    let cad = temp_system("params: u\neqs:\nu\n");
    assert_eq!(json(&run(&["cad"], cad.path()))["samples"].as_array().unwrap().len(), 2);
    let dv = temp_system("vars: x\nparams: u\neqs:\nx^2 + u\n");
    assert_eq!(json(&run(&["dv"], dv.path()))["polys"], serde_json::json!(["u"]));
    let rur = json(&run(&["rur"], &fixture("sqrt2.sys")));
    assert_eq!(rur["f_bar"], "T^2 - 2");
    assert_eq!(rur["denominator"], "2*T");
    let out = Command::new(env!("CARGO_BIN_EXE_certipoly"))
        .args(["refine", "--point", "3/2", "--precision", "40"])
        .arg(fixture("sqrt2.sys"))
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["certified"], true);
    let (lo, hi) = (dyadic(&v["box"][0]["lo"]), dyadic(&v["box"][0]["hi"]));
    assert!(lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= hi);
}

#[test]
fn identify_toy_model() {
    let v = json(&run(&["identify"], &fixture("toy_identify.sys")));
    let cands = v["candidates"].as_array().unwrap();
    assert_eq!(cands.len(), 4);
    let best = cands.iter().find(|c| c["nonnegative"] == true).unwrap();
    let mu = dyadic(&best["params"][0]["lo"]);
    assert!((mu - 0.5).abs() < 1e-3, "{mu}");
}

#[test]
fn output_is_byte_deterministic() {
    for (args, file) in [
        (vec!["solve"], "toy_solve.sys"),
        (vec!["stability", "--parametric"], "param_stability.sys"),
        (vec!["hinf"], "golden_hinf.sys"),
    ] {
        let a = run(&args, &fixture(file));
        let b = run(&args, &fixture(file));
        assert_eq!(a.stdout, b.stdout, "{file}");
    }
}
