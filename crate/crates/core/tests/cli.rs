use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pdneg").chain(args.iter().copied());
    let code = pdneg::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not json ({e}): {s:?}"))
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
    }
}

const EX1: &str = "0.1,0.2,0.15,0.3,0.25";

#[test]
fn negate_involutive_example() {
    let (code, out, err) = run(&["negate", "--negator", "involutive", "--dist", EX1]);
    assert_eq!(code, 0, "{err}");
    assert!(err.is_empty());
    assert_close(&floats(&json(&out)), &[0.3, 0.2, 0.25, 0.1, 0.15], 1e-12);
}

#[test]
fn iterate_yager_csv() {
    let (code, out, _) = run(&[
        "iterate", "--negator", "yager", "--dist", "1,0,0,0,0", "-k", "3", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "k,p_1,p_2,p_3,p_4,p_5,entropy,linf");
    assert!(lines[2].starts_with("1,0,0.25,0.25,0.25,0.25,"), "{}", lines[2]);
    // 1 - 4 * 0.25^2 and |0 - 0.2|
    let row: Vec<f64> = lines[2].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(row.len(), 8);
    assert!((row[6] - 0.75).abs() < 1e-15);
    assert!((row[7] - 0.2).abs() < 1e-15);
}

#[test]
fn golden_involutive_orbit() {
    let (code, out, _) = run(&[
        "iterate", "--negator", "involutive", "--dist", EX1, "--steps", "4", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let golden = include_str!("golden/example1_involutive_orbit.csv");
    assert_eq!(out, golden);
    let expected_odd = [0.3, 0.2, 0.25, 0.1, 0.15];
    let expected_even = [0.1, 0.2, 0.15, 0.3, 0.25];
    for line in golden.lines().skip(1) {
        let row: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let k = row[0] as usize;
        let expected = if k.is_multiple_of(2) { expected_even } else { expected_odd };
        assert_close(&row[1..6], &expected, 1e-12);
        assert!((row[6] - 0.775).abs() < 1e-12);
        assert!((row[7] - 0.1).abs() < 1e-12);
    }
}

#[test]
fn exit_codes() {
    let (code, out, err) = run(&["negate", "--negator", "tsallis:k=0", "--dist", "0.5,0.5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("domain"));

    let (code, _, _) = run(&["negate", "--negator", "linear:alpha=1.5", "--dist", "0.5,0.5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["negate", "--negator", "tsallis:k=-1", "--dist", "1,0"]);
    assert_eq!(code, 2);

    let (code, out, _) = run(&["negate", "--negator", "yager", "--dist", "0.5,0.6"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let (code, _, _) = run(&["negate", "--negator", "nope", "--dist", "0.5,0.5"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["negate", "--negator", "yager", "--dist", "1"]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&["negate", "--negator", "yager"]);
    assert_eq!(code, 1);
    assert!(err.contains("Usage"), "{err}");
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["converge", "--negator", "yager", "--dist", EX1, "--eps", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn negate_output_round_trips() {
    let (_, once, _) = run(&["negate", "--negator", "linear:alpha=0.3", "--dist", EX1]);
    let (code, twice, _) = run(&["negate", "--negator", "linear:alpha=0.3", "--dist", once.trim()]);
    assert_eq!(code, 0);
    let (_, trace, _) = run(&["iterate", "--negator", "linear:alpha=0.3", "--dist", EX1, "-k", "2"]);
    let trace = json(&trace);
    let step2 = floats(&trace["steps"][2]["dist"]);
    assert_close(&floats(&json(&twice)), &step2, 1e-12);
    assert_eq!(trace["spec"], "linear:alpha=0.3");
    assert_eq!(trace["steps"][0]["k"], 0);
}

#[test]
fn dist_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, "[0.1, 0.2, 0.15, 0.3, 0.25]").unwrap();
    let arg = format!("@{}", path.display());
    let (code, out, _) = run(&["negate", "--negator", "involutive", "--dist", &arg]);
    assert_eq!(code, 0);
    assert_close(&floats(&json(&out)), &[0.3, 0.2, 0.25, 0.1, 0.15], 1e-12);
    let (code, _, _) = run(&["negate", "--negator", "involutive", "--dist", "@/missing.json"]);
    assert_eq!(code, 1);
}

#[test]
fn converge_outputs() {
    let (code, out, _) = run(&["converge", "--negator", "yager", "--dist", "0.3,0.7"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "oscillating");
    assert_eq!(v["period"], 2);

    let (_, out, _) = run(&["converge", "--negator", "uniform", "--dist", EX1]);
    let v = json(&out);
    assert_eq!(v["outcome"], "converged");
    assert_eq!(v["k"], 1);

    let (_, out, _) = run(&[
        "converge", "--negator", "yager", "--dist", "1,0,0,0,0", "--max-iter", "2",
    ]);
    assert_eq!(json(&out)["outcome"], "max_iter_reached");
}

#[test]
fn classify_output() {
    let (code, out, _) = run(&[
        "classify", "--negator", "linear:alpha=0.5", "-n", "5", "--samples", "100", "--seed", "3",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "strictly_contracting");
    assert_eq!(v["n"], 5);
    assert_eq!(v["samples"], 100);
    assert_eq!(v["spec"], "linear:alpha=0.5");
    let w = &v["witnesses"][0];
    for key in ["p", "np", "nnp"] {
        assert!(w[key].is_f64());
    }
    for flag in ["contracting", "strictly_contracting", "expanding", "involutive"] {
        assert!(w["flags"][flag].is_boolean());
    }
    // same seed, same report
    let (_, again, _) = run(&[
        "classify", "--negator", "linear:alpha=0.5", "-n", "5", "--samples", "100", "--seed", "3",
    ]);
    assert_eq!(out, again);
    // seed is mandatory
    let (code, _, _) = run(&["classify", "--negator", "yager", "-n", "5"]);
    assert_eq!(code, 1);
}

#[test]
fn entropy_and_fixed_point() {
    let (code, out, _) = run(&["entropy", "--dist", EX1]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!((v["entropy"].as_f64().unwrap() - 0.775).abs() < 1e-12);
    assert!((v["max_entropy"].as_f64().unwrap() - 0.8).abs() < 1e-15);

    let (code, out, _) = run(&["fixed-point", "--negator", "yager", "-n", "5"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["fixed_point"], 0.2);
    assert_eq!(v["crossings"].as_array().unwrap().len(), 1);
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_pdneg");
    let ok = Command::new(bin)
        .args(["negate", "--negator", "involutive", "--dist", EX1])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    json(std::str::from_utf8(&ok.stdout).unwrap());

    let bad = Command::new(bin)
        .args(["negate", "--negator", "tsallis:k=0", "--dist", "0.5,0.5"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());

    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
