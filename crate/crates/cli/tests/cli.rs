use std::path::Path;
use std::process::{Command, Output};

use lacuna::lattice::FigureData;
use lacuna::suite::Report;
use lacuna::CyclotomicNumber;
use serde_json::Value;

fn lacuna(args: &[&str]) -> Output {
    lacuna_env(args, None)
}

fn lacuna_env(args: &[&str], defaults: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lacuna"));
    cmd.args(args).env_remove("LACUNA_DEFAULTS");
    if let Some(p) = defaults {
        cmd.env("LACUNA_DEFAULTS", p);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn bernoulli_values() {
    let o = lacuna(&["bernoulli", "--n", "12", "--method", "oracle"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "-691/2730");
    assert_eq!(stdout(&lacuna(&["bernoulli", "--n", "0"])).trim(), "1");
    let o = lacuna(&["bernoulli", "--n", "24", "--method", "lacunary12", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"], "-236364091/2730");
    assert_eq!(v["matches_oracle"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&lacuna(&["bernoulli", "--n", "13", "--method", "lacunary12"])), 2);
    assert_eq!(code(&lacuna(&["bernoulli"])), 2);
    assert_eq!(code(&lacuna(&["verify", "nonexistent"])), 2);
    assert_eq!(code(&lacuna(&["verify", "lehmer", "--tau", "i"])), 2);
    assert_eq!(code(&lacuna(&["verify", "all", "--nmax", "3"])), 2);
    assert_eq!(code(&lacuna(&["verify", "lehmer", "--tol", "-1"])), 2);
    assert_eq!(code(&lacuna(&["alpha", "--N", "3", "--k", "0", "--method", "doubling"])), 2);
    assert_eq!(code(&lacuna(&["alpha", "--N", "3", "--k", "0", "--method", "bogus"])), 2);
    assert_eq!(code(&lacuna(&["lattice"])), 2);
}

#[test]
fn alpha_signsum_value_round_trips() {
    let o = lacuna(&["alpha", "--N", "2", "--k", "1", "--method", "signsum", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"]["conductor"], 4);
    assert_eq!(v["value"]["coeffs"], serde_json::json!(["0", "-8"]));
    assert!((v["embedding"]["im"].as_f64().unwrap() + 8.0).abs() < 1e-12);
    let z: CyclotomicNumber = serde_json::from_value(v["value"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&z).unwrap(), v["value"]);
}

#[test]
fn alpha_all_agrees() {
    let o = lacuna(&["alpha", "--N", "6", "--k", "0", "--method", "all", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["agreement"], true);
    for entry in v["values"].as_array().unwrap() {
        assert_eq!(entry["value"]["coeffs"][3], "720");
    }
}

#[test]
fn alpha_orbit_matches_series() {
    let orbit = json(&lacuna(&["alpha", "--N", "7", "--k", "1", "--method", "orbit", "--format", "json"]));
    let series = json(&lacuna(&["alpha", "--N", "7", "--k", "1", "--method", "series", "--format", "json"]));
    assert_eq!(orbit["value"], series["value"]);
}

#[test]
fn verify_ramanujan12() {
    let o = lacuna(&["verify", "ramanujan12", "--nmax", "8", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let reports: Vec<Report> = serde_json::from_slice(&o.stdout).unwrap();
    let main: Vec<&Report> = reports.iter().filter(|r| r.identity() == "ramanujan12").collect();
    assert_eq!(main.len(), 9);
    assert!(reports.iter().all(Report::passed));
}

#[test]
fn verify_barnes_case() {
    let o = lacuna(&["verify", "barnes_lacunary", "--w", "3", "--p", "4", "--kmax", "6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let r = &v[0];
    assert!(r["residual"].as_f64().unwrap() < 1e-6);
    assert!(r["budget"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["pass"], true);
}

#[test]
fn printed_sign_fails_with_erratum() {
    let o = lacuna(&["verify", "two_interval", "--variant", "inv_sqrt2", "--printed-sign", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    for r in v.as_array().unwrap() {
        assert_eq!(r["status"], "fail");
        assert!(r["erratum"].is_string());
    }
}

#[test]
fn report_json_round_trips_and_records_seed() {
    let o = lacuna(&["verify", "multisection", "--cases", "5", "--seed", "7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let reports: Vec<Report> = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&reports).unwrap(), v);
    assert!(reports.iter().all(|r| r.params()["seed"] == "7"));
    let o = lacuna(&["verify", "sech2", "--nmax", "2", "--format", "json"]);
    let v = json(&o);
    let reports: Vec<Report> = serde_json::from_value(v.clone()).unwrap();
    assert!(matches!(reports[0], Report::Numeric(_)));
    assert_eq!(serde_json::to_value(&reports).unwrap(), v);
}

#[test]
fn lattice_six_interval_emit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("six.json");
    let o = lacuna(&["lattice", "--six-interval", "--emit", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("six_interval: 36 points, 18 edges"));
    let data: FigureData = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(data.points.len(), 36);
    assert_eq!(data.edges.len(), 18);
}

#[test]
fn lattice_orbit_table() {
    let want = [0.890084, 1.109916, 1.603875, 2.0, 2.493959, 2.828427, 2.828427, 3.603875, 4.493959];
    let v = json(&lacuna(&["lattice", "--orbits", "7", "--format", "json"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for (r, w) in rows.iter().zip(want) {
        assert!((r["radius"].as_f64().unwrap() - w).abs() < 1e-5);
    }
    let v = json(&lacuna(&["lattice", "--orbits", "4", "--format", "json"]));
    let hist = v["histogram"].as_object().unwrap();
    let mut total = 0;
    for (size, count) in hist {
        let size: u64 = size.parse().unwrap();
        assert_eq!(8 % size, 0);
        total += size * count.as_u64().unwrap();
    }
    assert_eq!(total, 16);
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lehmer.csv");
    let o = lacuna(&["verify", "lehmer", "--nmax", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let body = std::fs::read_to_string(&path).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("identity,status,residual,budget,params,erratum"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn defaults_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.toml");
    std::fs::write(&path, "version = 1\n[suite.lehmer]\nnmax = 2\n").unwrap();
    let o = lacuna_env(&["verify", "lehmer", "--format", "json"], Some(&path));
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o).as_array().unwrap().len(), 3);
    std::fs::write(&path, "version = 1\n[suite.lehmer]\nnmax = -2\n").unwrap();
    assert_eq!(code(&lacuna_env(&["verify", "lehmer"], Some(&path))), 2);
    assert_eq!(code(&lacuna_env(&["verify", "lehmer"], Some(&dir.path().join("missing.toml")))), 2);
}

#[test]
fn eisenstein_table_and_coefficients() {
    let o = lacuna(&["eisenstein", "--tau", "i", "--kmin", "2", "--kmax", "3", "--N", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["table"]["values"].as_array().unwrap().len(), 2);
    let g6 = &v["table"]["values"][1][1];
    assert!(g6[0].as_f64().unwrap().abs() < 1e-10);
    assert!(v["coeffs"]["max_discrepancy"].as_f64().unwrap() < 1e-8);
}

#[test]
fn export_all_figures() {
    let dir = tempfile::tempdir().unwrap();
    let o = lacuna(&["export", "all", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    for (name, points) in [("two_interval", 4), ("four_interval", 16), ("six_interval", 36)] {
        let data: FigureData =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap()).unwrap();
        assert_eq!(data.points.len(), points, "{name}");
    }
    assert_eq!(code(&lacuna(&["export", "nine_interval"])), 2);
}

#[test]
fn verify_all_passes_in_canonical_order() {
    let o = lacuna(&["verify", "all", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let reports: Vec<Report> = serde_json::from_slice(&o.stdout).unwrap();
    let mut ids: Vec<&str> = reports.iter().map(Report::identity).collect();
    ids.dedup();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for id in lacuna::suite::IDENTITIES {
        assert!(ids.contains(&id), "{id}");
    }
    let keys: Vec<_> = reports.iter().map(Report::sort_key).collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]));
}
