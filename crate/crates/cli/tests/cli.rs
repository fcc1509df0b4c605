use std::process::{Command, Output};

use serde_json::Value;

fn nilorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilorb"))
        .args(args)
        .env_remove("NILORB_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = nilorb(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn rows(v: &Value) -> &Vec<Value> {
    v["rows"].as_array().unwrap()
}

#[test]
fn orbit_tables() {
    for (ty, p, n) in [("C2", "0", 4), ("A1", "0", 2), ("G2", "7", 5)] {
        let (code, v) = json(&["orbits", "--type", ty, "--char", p]);
        assert_eq!(code, 0);
        assert_eq!(v["schema_version"], 1);
        assert_eq!(rows(&v).len(), n, "{ty}");
    }
}

#[test]
fn bad_prime_and_bad_type_are_config_errors() {
    let (code, v) = json(&["orbits", "--type", "G2", "--char", "3"]);
    assert_eq!(code, 4);
    assert_eq!(v["error"]["class"], "config");
    let (code, _) = json(&["orbits", "--type", "Q3"]);
    assert_eq!(code, 4);
    let (code, _) = json(&["orbits"]);
    assert_eq!(code, 4);
}

#[test]
fn optimal_regular_orbits() {
    let (code, v) = json(&["optimal", "--type", "C2", "--orbit", "3", "--bound", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(rows(&v)[0]["associated_cochar"], serde_json::json!([3, 4]));
    let (code, _) = json(&["optimal", "--type", "A1", "--orbit", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn zero_orbit_is_rejected() {
    let (code, v) = json(&["optimal", "--type", "C2", "--orbit", "0"]);
    assert_eq!(code, 4);
    assert_eq!(v["passed"], false);
    assert!(v["error"]["message"].as_str().unwrap().contains("zero"));
}

#[test]
fn finite_field_commands() {
    let (code, v) = json(&["uorbit", "--type", "C2", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v).len(), 3);
    let (code, v) = json(&["rational", "--type", "A1", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v).len(), 3);
    assert_eq!(rows(&v)[0]["nilpotent_count"], 9);
}

#[test]
fn local_commands() {
    let (code, v) = json(&["c2local", "--q", "3", "--prec", "16"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v)[0]["orbit_count"], 3);
    let (code, _) = json(&["artin-schreier", "--q", "3", "--g", "t^-1", "--expect", "unsolvable"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["artin-schreier", "--q", "3", "--g", "t^-1", "--expect", "solvable"]);
    assert_eq!(code, 2);
}

#[test]
fn csv_and_json_carry_the_same_data() {
    for args in [
        vec!["orbits", "--type", "G2", "--char", "7"],
        vec!["rational", "--type", "A1", "--q", "5"],
        vec!["c2local", "--q", "5"],
    ] {
        let (_, v) = json(&args);
        let mut csv_args = args.clone();
        csv_args.extend(["--format", "csv"]);
        let out = nilorb(&csv_args);
        let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
        let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
        let records: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), rows(&v).len());
        for (rec, row) in records.iter().zip(rows(&v)) {
            assert_eq!(&rec[0], "1");
            assert_eq!(&rec[1], v["command"].as_str().unwrap());
            assert_eq!(&rec[2], v["passed"].to_string());
            let row = row.as_object().unwrap();
            assert_eq!(header.len() - 3, row.len());
            for (col, cell) in header.iter().zip(rec.iter()).skip(3) {
                let expected = match &row[col] {
                    Value::String(s) => s.clone(),
                    Value::Null => String::new(),
                    other => other.to_string(),
                };
                assert_eq!(cell, expected, "{col}");
            }
        }
    }
}

#[test]
fn output_is_deterministic_and_seed_env_applies() {
    let args = ["c2local", "--q", "3", "--seed", "5"];
    let a = nilorb(&args).stdout;
    let b = nilorb(&args).stdout;
    assert_eq!(a, b);
    let env = Command::new(env!("CARGO_BIN_EXE_nilorb"))
        .args(["c2local", "--q", "3", "--seed", "1"])
        .env("NILORB_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a);
}

#[test]
fn output_file_and_threads() {
    let path = std::env::temp_dir().join(format!("nilorb-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = nilorb(&["orbits", "--type", "A2", "--output", p, "--threads", "2"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows(&v).len(), 3);
    std::fs::remove_file(path).ok();
}
