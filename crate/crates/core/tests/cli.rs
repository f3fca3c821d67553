use std::process::Command;

use kgring::cli::{run, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_OK, EXIT_VERIFY};
use kgring::model::{ModelParams, QuantumNumbers};
use kgring::radial::{coulomb_energy, solve_bound_state, SolverConfig};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kgring").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn single_state_gives_one_row() {
    let (code, out, _) = invoke(&["--a0", "0.25", "--r0", "2"]);
    assert_eq!(code, EXIT_OK);
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    let e: f64 = rows[0][col(&h, "E_R")].parse().unwrap();
    assert!((e - 0.877_639_391_374_930_8).abs() < 1e-12);
    assert_eq!(rows[0][col(&h, "status")], "ok");
    assert!(out.ends_with('\n') && !out.contains('\r'));
}

#[test]
fn rows_sorted_and_complete() {
    let (code, out, _) = invoke(&["--a0", "0.25", "--r0", "2", "--C", "0.3", "--n", "0..2", "--ntheta", "0..1", "--m", "0..2"]);
    assert_eq!(code, EXIT_OK);
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 3 * 2 * 3);
    let key = |r: &Vec<String>| {
        (
            r[col(&h, "n")].parse::<u32>().unwrap(),
            r[col(&h, "ntheta")].parse::<u32>().unwrap(),
            r[col(&h, "m")].parse::<u32>().unwrap(),
        )
    };
    let keys: Vec<_> = rows.iter().map(key).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for r in &rows {
        let e: f64 = r[col(&h, "E_R")].parse().unwrap();
        assert!(e.abs() < 1.0);
    }
}

#[test]
fn ring_free_rows_match_pure_kratzer() {
    let (_, out, _) = invoke(&["--a0", "0.25", "--r0", "2", "--n", "0..2", "--ntheta", "0..2", "--m", "0..1"]);
    let (h, rows) = csv_rows(&out);
    let p = ModelParams::kratzer(1.0, 0.25, 2.0, 0.0, 3).unwrap();
    for r in rows {
        let qn = QuantumNumbers::new(
            r[col(&h, "n")].parse().unwrap(),
            r[col(&h, "ntheta")].parse().unwrap(),
            r[col(&h, "m")].parse().unwrap(),
        );
        let want = solve_bound_state(&p, qn, &SolverConfig::default()).unwrap().energy;
        let got: f64 = r[col(&h, "E_R")].parse().unwrap();
        assert!((got - want).abs() <= 1e-12, "{qn:?}");
        // for C = 0 in three dimensions, j is the integer ntilde + m
        let j: f64 = r[col(&h, "j")].parse().unwrap();
        assert!((j - (qn.n_theta + qn.m) as f64).abs() < 1e-12);
    }
}

#[test]
fn coulomb_rows_match_closed_form() {
    let (code, out, _) = invoke(&["--coulomb", "0.5", "--n", "0..2", "--ntheta", "0..2", "--D", "3..4", "--mode", "limits"]);
    assert_eq!(code, EXIT_OK);
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 18);
    for r in &rows {
        let e: f64 = r[col(&h, "E_R")].parse().unwrap();
        let closed: f64 = r[col(&h, "E_coulomb")].parse().unwrap();
        assert!((e - closed).abs() <= 1e-10 * closed.abs().max(1.0));
        let d: u32 = r[col(&h, "D")].parse().unwrap();
        if d == 3 {
            let n: u32 = r[col(&h, "n")].parse().unwrap();
            let l: f64 = r[col(&h, "ntheta")].parse().unwrap();
            assert!((closed - coulomb_energy(1.0, 0.25, n, l, 3)).abs() < 1e-15);
        }
        let res: f64 = r[col(&h, "nonrel_residual")].parse().unwrap();
        assert!(res.abs() <= 1e-10);
    }
}

#[test]
fn json_round_trips_bit_exactly() {
    let args = ["--a0", "0.25", "--r0", "2", "--C", "0.3", "--n", "0..1", "--m", "0..1", "--D", "3..4"];
    let (_, csv_out, _) = invoke(&args);
    let mut jargs = args.to_vec();
    jargs.extend(["--format", "json"]);
    let (code, json_out, _) = invoke(&jargs);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let rows = v.as_array().unwrap();
    let (h, csv_rows) = csv_rows(&csv_out);
    assert_eq!(rows.len(), csv_rows.len());
    for (obj, row) in rows.iter().zip(&csv_rows) {
        for name in ["j", "j_prime", "m_prime", "E_R", "binding", "E_NR", "zeta", "residual"] {
            let a = obj[name].as_f64().unwrap();
            let b: f64 = row[col(&h, name)].parse().unwrap();
            assert_eq!(a.to_bits(), b.to_bits(), "{name}");
        }
    }
    // every numeric token also round-trips through the standard parser
    for tok in json_out.split([',', '}', '\n']).filter_map(|t| t.split_once(": ")) {
        let text = tok.1.trim();
        if text.contains('e') && !text.starts_with('"') {
            let v: f64 = text.parse().unwrap();
            assert_eq!(kgring::cli::format_num(v), text, "{}", tok.0);
        }
    }
    // and against the library directly
    let p = ModelParams::kratzer(1.0, 0.25, 2.0, 0.3, 3).unwrap();
    let s = solve_bound_state(&p, QuantumNumbers::new(0, 0, 0), &SolverConfig::default()).unwrap();
    assert_eq!(rows[0]["E_R"].as_f64().unwrap().to_bits(), s.energy.to_bits());
    assert_eq!(rows[0]["zeta"].as_f64().unwrap().to_bits(), s.intermediates.zeta.to_bits());
}

#[test]
fn output_is_byte_stable() {
    let args = ["--a0", "0.25", "--r0", "2", "--C", "0.3", "--n", "0..2", "--ntheta", "0..2", "--m", "0..2", "--format", "json"];
    let first = invoke(&args).1;
    for _ in 0..3 {
        assert_eq!(invoke(&args).1, first);
    }
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.csv");
    let (code, out, _) = invoke(&["--a0", "0.25", "--r0", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,ntheta,m,D,j,"));
}

#[test]
fn config_errors_name_the_field() {
    for (args, field) in [
        (vec!["--a0", "0.25", "--r0", "-2"], "r0"),
        (vec!["--a0", "0.25", "--r0", "2", "--mu", "0"], "mu"),
        (vec!["--a0", "0.25", "--r0", "2", "--D", "1"], "D"),
        (vec!["--a0", "0.25", "--r0", "2", "--C", "-1"], "C"),
        (vec!["--coulomb", "-1"], "A"),
        (vec!["--a0", "0.25", "--r0", "2", "--n", "3..1"], "--n"),
        (vec!["--r0", "2"], "--a0"),
        (vec!["--a0", "0.25", "--r0", "2", "--format", "xml"], "--format"),
        (vec!["--a0", "0.25", "--r0", "2", "--coulomb", "1"], "--coulomb"),
    ] {
        let (code, out, err) = invoke(&args);
        assert_eq!(code, EXIT_CONFIG, "{args:?}");
        assert!(out.is_empty());
        assert!(err.contains(field), "{args:?}: {err}");
    }
}

#[test]
fn verify_mode_passes_and_reports() {
    let (code, out, _) = invoke(&["--a0", "0.25", "--r0", "2", "--C", "0.3", "--n", "0..1", "--m", "0..1", "--mode", "verify", "--grid", "2000"]);
    assert_eq!(code, EXIT_OK);
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert_eq!(r[col(&h, "status")], "pass");
        let gap: f64 = r[col(&h, "xc_gap")].parse().unwrap();
        assert!(gap <= 5e-4);
    }
}

#[test]
fn verify_mode_fails_on_crosscheck_gap() {
    // strong Coulomb coupling on a coarse grid: the finite-difference gap exceeds the tolerance
    let (code, out, _) = invoke(&["--coulomb", "2", "--mode", "verify", "--grid", "400"]);
    assert_eq!(code, EXIT_VERIFY);
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows[0][col(&h, "status")], "fail");
    assert_eq!(rows[0][col(&h, "pass")], "false");
}

#[test]
fn wavefunction_samples() {
    let (code, out, _) = invoke(&["--a0", "0.25", "--r0", "2", "--n", "1", "--mode", "wavefunction", "--samples", "50"]);
    assert_eq!(code, EXIT_OK);
    let (h, rows) = csv_rows(&out);
    assert_eq!(h[..4], ["n", "ntheta", "m", "D"]);
    assert_eq!(rows.len(), 50);
    let xs: Vec<f64> = rows.iter().map(|r| r[col(&h, "x")].parse().unwrap()).collect();
    // log-spaced by default: constant ratio
    let q0 = xs[1] / xs[0];
    assert!(xs.windows(2).all(|w| (w[1] / w[0] - q0).abs() < 1e-9));
    // n = 1 has exactly one radial node
    let vals: Vec<f64> = rows.iter().map(|r| r[col(&h, "value")].parse().unwrap()).collect();
    assert_eq!(vals.windows(2).filter(|w| w[0] * w[1] < 0.0).count(), 1);

    let (_, out, _) = invoke(&["--a0", "0.25", "--r0", "2", "--ntheta", "2", "--mode", "wavefunction", "--axis", "polar", "--samples", "11"]);
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows[0][col(&h, "axis")], "theta");
    let last: f64 = rows[10][col(&h, "x")].parse().unwrap();
    assert_eq!(last, std::f64::consts::PI);
}

#[test]
fn strict_mode_accepts_feasible_runs() {
    // strict mode only reacts to infeasible rows
    let (code, _, _) = invoke(&["--a0", "0.25", "--r0", "2", "--C", "2", "--n", "0..2", "--m", "0..2", "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_ne!(EXIT_INFEASIBLE, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_kgring");
    let ok = Command::new(exe).args(["--a0", "0.25", "--r0", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("n,ntheta,m,D"));
    let bad = Command::new(exe).args(["--a0", "0.25"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let help = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
