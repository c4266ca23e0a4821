use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn beamforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beamforge"))
        .args(args)
        .output()
        .expect("spawn beamforge")
}

fn json(args: &[&str]) -> Value {
    let out = beamforge(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    beamforge(args).status.code().unwrap()
}

#[test]
fn enumerate_counts() {
    let d = json(&["enumerate", "--beta", "-15.5", "--k", "3"]);
    assert_eq!(d["counts"]["unimodal"], 24);
    assert_eq!(d["counts"]["general_bimodal"], 24);
    assert_eq!(d["counts"]["ee_families"], 0);
    assert_eq!(d["verification"]["passed"], true);

    let d = json(&["enumerate", "--beta", "-15.5", "--k", "3", "--pairs", "1,2"]);
    assert_eq!(d["counts"]["general_bimodal"], 8);
    for s in d["general_bimodal"].as_array().unwrap() {
        let modes: Vec<u64> = s["modes"].as_array().unwrap().iter().map(|m| m["n"].as_u64().unwrap()).collect();
        assert_eq!(modes, [1, 2]);
    }
}

#[test]
fn enumerate_unloaded_is_trivial() {
    let d = json(&["enumerate", "--beta", "0", "--k", "3"]);
    assert_eq!(d["counts"]["unimodal"], 0);
    assert_eq!(d["counts"]["general_bimodal"], 0);
    assert_eq!(d["counts"]["ee_families"], 0);
    assert!(d["note"].as_str().unwrap().contains("E empty"));
}

#[test]
fn enumerate_b1_family_with_samples() {
    let d = json(&["enumerate", "--beta", "-10", "--k", "2", "--samples", "3"]);
    let fams = d["ee_families"].as_array().unwrap();
    let b1 = fams.iter().find(|f| f["kind"] == "B1" && f["modes"] == serde_json::json!([1, 2])).expect("B1 (1,2)");
    let samples = b1["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 3);
    for s in samples {
        let a1 = s["modes"][0]["alpha"].as_f64().unwrap();
        let a2 = s["modes"][1]["alpha"].as_f64().unwrap();
        assert!((a1 * a1 + 4.0 * a2 * a2 - 5.0).abs() < 1e-9);
    }
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["enumerate", "--beta", "-15.5", "--k", "3", "--samples", "2"][..],
        &["oracle", "--beta", "-15.5", "--k", "3", "--modes", "2", "--starts", "200", "--seed", "11"][..],
        &["sweep", "--k", "3", "--to", "20", "--steps", "9", "--modes", "1,2", "--pairs", "1-2"][..],
    ] {
        let a = beamforge(args);
        let b = beamforge(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn floats_carry_17_digits() {
    let out = beamforge(&["sets", "--beta", "-15.5", "--k", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"beta\": -1.5500000000000000e1"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["sets", "--beta", "-10", "--k", "2"]), 0);
    assert_eq!(code(&["enumerate", "--k", "3"]), 2);
    assert_eq!(code(&["enumerate", "--beta", "-10", "--k", "3", "--spectrum", "power:-1"]), 2);
    assert_eq!(code(&["enumerate", "--beta", "-10", "--k", "3", "--spectrum", "bogus"]), 2);
    assert_eq!(code(&["enumerate", "--beta", "-10", "--k", "-1"]), 2);
    assert_eq!(code(&["sets", "--beta", "-10", "--k", "2", "--csv"]), 2);
    assert_eq!(code(&["enumerate", "--beta", "-10", "--k", "3", "--pairs", "2,1"]), 2);
    assert_eq!(code(&["oracle", "--beta", "-10", "--k", "3", "--modes", "2", "--starts", "0"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    // a residual tolerance below round-off cannot be met
    assert_eq!(code(&["enumerate", "--beta", "-15.5", "--k", "3", "--tol-res", "1e-30"]), 3);
    assert_eq!(code(&["sets", "--beta", "-10", "--k", "2", "--out", "/nonexistent/dir/x.json"]), 1);
}

#[test]
fn empty_sweep_is_header_only() {
    let out = beamforge(&["sweep", "--k", "3", "--to", "20", "--steps", "0", "--modes", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("beta,branch_id,"));
}

#[test]
fn sweep_forks_at_boundaries() {
    let out = beamforge(&["sweep", "--k", "3", "--from", "0", "--to", "20", "--steps", "41", "--modes", "1"]);
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let mut first = std::collections::BTreeMap::new();
    let mut seen_betas = Vec::new();
    for r in rdr.records() {
        let r = r.unwrap();
        let neg_beta = -r[0].parse::<f64>().unwrap();
        seen_betas.push(neg_beta);
        first.entry(r[1].to_string()).or_insert(neg_beta);
    }
    for boundary in [1.0, 7.0, 10.0] {
        assert!(seen_betas.contains(&boundary), "grid misses {boundary}");
    }
    // each branch is born just past its fork value: lambda_1 = 1, mu_1 = 7, nu_1 = 10
    for (branch, fork) in [("unimodal(1,+)", 1.0), ("unimodal(2,+)", 7.0), ("unimodal(3,+)", 10.0), ("unimodal(4,+)", 10.0)] {
        let born = first[branch];
        assert!(born > fork && born <= fork + 0.5, "{branch} born at {born}");
    }
}

#[test]
fn dirichlet_effective_count() {
    let out = beamforge(&["sweep", "--k", "1", "--spectrum", "dirichlet", "--to", "400", "--steps", "17", "--modes", "1"]);
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let pi2 = std::f64::consts::PI.powi(2);
    for r in rdr.records() {
        let r = r.unwrap();
        let neg_beta = -r[0].parse::<f64>().unwrap();
        let n_eff: usize = r[7].parse().unwrap();
        // modes with lambda_n = n^2 pi^2 strictly below -beta
        let expect = (1..).take_while(|&n: &usize| ((n * n) as f64) * pi2 < neg_beta).count();
        assert_eq!(n_eff, expect, "-beta = {neg_beta}");
    }
}

#[test]
fn sweep_plot_and_unimodal_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let plot = dir.path().join("sweep.gp");
    let out = beamforge(&[
        "sweep", "--k", "3", "--to", "12", "--steps", "13", "--modes", "1",
        "--out", csv_path.to_str().unwrap(), "--plot", plot.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let script = fs::read_to_string(&plot).unwrap();
    assert!(script.contains("sweep.csv"));
    assert!(script.contains("plot "));
    assert_eq!(code(&["sweep", "--k", "3", "--to", "12", "--modes", "1", "--plot", "x.gp"]), 2);

    let out = beamforge(&["unimodal", "--k", "3", "--csv", "--mode", "1", "--to", "12", "--steps", "13"]);
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(&rdr.headers().unwrap()[0], "neg_beta");
    for r in rdr.records() {
        let r = r.unwrap();
        let neg_beta: f64 = r[0].parse().unwrap();
        // alpha_{1,1} = sqrt(-beta - lambda_1) for the scaled spectrum
        if neg_beta > 1.0 {
            let a: f64 = r[1].parse().unwrap();
            assert!((a - (neg_beta - 1.0).sqrt()).abs() < 1e-12);
        } else {
            assert!(r[1].is_empty());
        }
    }
}

#[test]
fn profile_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("profile.csv");
    let out = beamforge(&["enumerate", "--beta", "-5", "--k", "3", "--profile", p.to_str().unwrap(), "--points", "11"]);
    assert!(out.status.success());
    let text = fs::read_to_string(&p).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "solution,tag,x,u,v");
    // trivial plus the four unimodal solutions on mode 1 at -beta = 5
    assert_eq!(lines.count(), 5 * 11);
}

#[test]
fn single_and_convert() {
    let d = json(&["single", "--beta", "-50", "--spectrum", "dirichlet"]);
    assert!(d["max_relative_residual"].as_f64().unwrap() < 1e-10);
    assert!(!d["unimodal"].as_array().unwrap().is_empty());

    let d = json(&["convert", "--ell", "1", "--h", "0.1", "--E", "1", "--nu", "0", "--D", "-0.05", "--kappa", "0.05", "--area", "1"]);
    assert!(d["params"]["beta"].as_f64().unwrap() < 0.0);
    assert!(d["diagnostics"]["warnings"].as_array().unwrap().is_empty());
}
