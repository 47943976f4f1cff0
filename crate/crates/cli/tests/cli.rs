use std::process::{Command, Output};

use serde_json::Value;
use w3cft::charge::{h_at_b2, KacCharge};
use w3cft::rational::{parse_rational, rat};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_w3cft"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// CSV and JSON carry the same values for the same command.
fn assert_same_payload(args: &[&str]) {
    let j = json(args);
    let (header, rows) = csv_rows(args);
    let cols: Vec<String> = j["columns"].as_array().unwrap().iter().map(cell_text).collect();
    assert_eq!(cols, header);
    let jrows = j["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), rows.len());
    for (jr, cr) in jrows.iter().zip(&rows) {
        let jr: Vec<String> = jr.as_array().unwrap().iter().map(cell_text).collect();
        for (a, b) in jr.iter().zip(cr) {
            if a != b {
                let (x, y): (f64, f64) = (a.parse().unwrap(), b.parse().unwrap());
                assert_eq!(x, y, "{args:?}");
            }
        }
    }
}

#[test]
fn csv_and_json_agree() {
    assert_same_payload(&["kac-table", "4", "5"]);
    assert_same_payload(&["curves", "w3-psi"]);
    assert_same_payload(&["curves", "w3-eps", "--exact"]);
    assert_same_payload(&["curves", "virasoro"]);
    assert_same_payload(&["orbits", "--p-max", "3"]);
    assert_same_payload(&["potts"]);
    assert_same_payload(&["spin-search", "specs/sigma_prime.toml"]);
}

#[test]
fn json_rationals_round_trip() {
    let j = json(&["kac-table", "4", "5"]);
    let b2 = rat(4, 5);
    for row in j["rows"].as_array().unwrap() {
        let n: Vec<i64> = (0..4).map(|i| row[i].as_i64().unwrap()).collect();
        let h = parse_rational(row[7].as_str().unwrap()).unwrap();
        assert_eq!(h, h_at_b2(&KacCharge::from_ints(n[0], n[1], n[2], n[3]), &b2));
        assert!(row[7].as_str().unwrap().contains('/'));
    }
}

#[test]
fn kac_table_potts_and_inverted() {
    let (_, rows) = csv_rows(&["kac-table", "4", "5"]);
    assert_eq!(rows.len(), 6);
    let mut hs: Vec<String> = rows.iter().map(|r| r[7].clone()).collect();
    hs.sort();
    assert_eq!(hs, ["0/1", "1/15", "1/15", "2/3", "2/3", "2/5"]);
    // (5, 4): the field [[2,1],[1,1]] has h = 1/15 at b² = 5/4.
    let (_, rows) = csv_rows(&["kac-table", "5", "4"]);
    let hit = rows.iter().find(|r| {
        let z = [&r[0], &r[1], &r[2], &r[3]];
        z == ["2", "1", "1", "1"] || r[4] == "(2,1,1,1)" || r[5] == "(2,1,1,1)"
    });
    assert_eq!(hit.unwrap()[7], "1/15");
    let (header, rows) = csv_rows(&["kac-table", "1", "1"]);
    assert_eq!(header.len(), 9);
    assert!(rows.is_empty());
}

#[test]
fn exact_curve_rows() {
    let j = json(&["curves", "w3-eps", "--exact", "--grid", "1/2:2:31"]);
    let cols: Vec<&str> = j["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(&cols[..4], ["b2", "c", "h_sigma", "h_epsilon"]);
    let row = j["rows"].as_array().unwrap().iter().find(|r| r[0] == "4/5").unwrap();
    assert_eq!((row[2].as_str(), row[3].as_str()), (Some("1/15"), Some("2/5")));
    let j = json(&["curves", "w3-psi", "--exact"]);
    let row = &j["rows"][0];
    assert_eq!(row[0], "1/2");
    let cols: Vec<&str> = j["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    for name in ["h_sigma", "h_sigma_double_prime", "h_psi"] {
        let i = cols.iter().position(|c| *c == name).unwrap();
        assert_eq!(row[i], "-1/3", "{name}");
    }
}

#[test]
fn spin_search_prints_one_sigma_orbit() {
    let (_, rows) = csv_rows(&["spin-search", "specs/sigma.toml"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][2..6], ["2/3", "-1/3", "1/3", "1/3"]);
    let (_, rows) = csv_rows(&["spin-search", "specs/sigma_double_prime.toml"]);
    assert_eq!(&rows[0][2..6], ["1/1", "1/1", "2/1", "1/1"]);
}

#[test]
fn orbit_triple_point_at_p4() {
    let (_, rows) = csv_rows(&["orbits", "--p-min", "4", "--p-max", "4"]);
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().filter(|r| r[0] == "sigma").any(|r| r[7] == "2"));
}

#[test]
fn check_passes() {
    let out = run(&["check"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["kac-table", "4", "6"][..],
        &["curves", "w3-psi", "--grid", "1:1:5"],
        &["curves", "w3-psi", "--grid", "0.5:1:1"],
        &["orbits", "sigma4"],
        &["orbits", "--p-max", "101"],
        &["spin-search", "no/such/file.toml"],
        &["fusion", "spectrum", "--charge", "1,2"],
        &["frobnicate"],
        &["potts", "--cutoff", "0"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_spec_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("w3cft-spec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(&path, "mode = \"self\"\npairs = [[1, 0]]\n").unwrap();
    assert_eq!(run(&["spin-search", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::write(&path, "mode = \"self\"\npairs = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 1]]\ncharge_filter = \"1/2\"\n").unwrap();
    let out = run(&["spin-search", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("w3cft-out-{}.csv", std::process::id()));
    let out = run(&["potts", "--fusions", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("left,right,products\n"));
    assert!(text.contains("σ*,1 + ε"));
    std::fs::remove_file(&path).unwrap();
}
