use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqgroup")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn seq_chebyshev_and_fibonacci() {
    let out = stdout(&["seq", "--t", "3", "--x", "0,1", "--range", "-3..6", "--format", "csv"]);
    let values: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(values, ["-8", "-3", "-1", "0", "1", "3", "8", "21", "55", "144"]);
    let fib = json(&["seq", "--T", "1", "--Q", "-1", "--x", "0,1", "--range", "0..10"]);
    let xs: Vec<&str> = fib.as_array().unwrap().iter().map(|r| r["x"].as_str().unwrap()).collect();
    assert_eq!(xs, ["0", "1", "1", "2", "3", "5", "8", "13", "21", "34", "55"]);
}

#[test]
fn seq_empty_range() {
    assert_eq!(stdout(&["seq", "--t", "3", "--x", "0,1", "--range", "5..4"]), "");
}

#[test]
fn seq_rational_terms() {
    let v = json(&["seq", "--t", "19/3", "--x", "1/2,-1", "--range", "0..2"]);
    assert_eq!(v[2]["x"], "-41/6");
}

#[test]
fn classify_reports() {
    let v = json(&["classify", "--t", "11/7"]);
    assert_eq!(v["class"]["kind"], "cubic");
    assert_eq!(v["class"]["f"], "5/7");
    assert_eq!(v["class"]["associates"], serde_json::json!(["2/7", "-13/7"]));
    assert_eq!(v["primitivity"]["is_primitive"], true);

    let v = json(&["classify", "--t", "7"]);
    assert_eq!(v["primitivity"]["is_primitive"], false);
    let w = &v["primitivity"]["witnesses"][0];
    assert_eq!((w["r"].as_u64(), w["u"].as_str()), (Some(2), Some("3")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--t", "2"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--t", "1/0"]).status.code(), Some(2));
    assert_eq!(run(&["sqrt", "--t", "3", "--x", "1,5", "--T", "2"]).status.code(), Some(2));
    assert_eq!(run(&["torsion", "--t", "-2"]).status.code(), Some(2));
    assert_eq!(run(&["divisors", "--t", "3", "--x", "0,0"]).status.code(), Some(2));
    assert_eq!(run(&["partition", "--t", "3", "--cubic", "--window", "below:100"]).status.code(), Some(2));
    assert_eq!(run(&["table3", "--window", "bogus"]).status.code(), Some(2));
}

#[test]
fn torsion_tables() {
    let v = json(&["torsion", "--t", "6/5", "--group", "laxton"]);
    assert_eq!(v["group_type"], "Z_2 x Z_4");
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    let row = &v["elements"][1];
    assert!(row["element"].is_array() && row["order"].is_u64() && row["coset_witness_k"].is_i64());

    let v = json(&["torsion", "--t", "11/7", "--group", "l"]);
    let orders: Vec<u64> = v.as_array().unwrap().iter().map(|e| e["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [2, 3, 3, 6, 6]);
}

#[test]
fn square_roots_and_shift_equivalence() {
    // D² = [3, 8] at t = 3
    let v = json(&["sqrt", "--t", "3", "--x", "3,8"]);
    assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    let v = json(&["sqrt", "--t", "3", "--x", "1,1"]);
    assert!(v["roots"].as_array().unwrap().is_empty());

    let v = json(&["laxton-eq", "--t", "3", "--x", "3,8", "--y", "1,3"]);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["witness"]["k"], 1);
    let v = json(&["laxton-eq", "--t", "3", "--x", "2,7", "--y", "1,1"]);
    assert_eq!(v["equivalent"], false);
}

#[test]
fn divisors_listing() {
    let v = json(&["divisors", "--t", "3", "--x", "1,1", "--primes", "100"]);
    let primes = v["primes"].as_array().unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, primes.len());
    assert_eq!(v["denominator"], 98);
    assert!(primes.iter().all(|p| p.as_u64().unwrap() % 2 == 1));
}

#[test]
fn partitions() {
    let v = json(&["partition", "--t", "3", "--x", "2,7", "--window", "below:3000"]);
    assert_eq!(v["disjoint"], true);
    assert_eq!(v["union_matches"], true);
    assert_eq!(v["sets"].as_array().unwrap().len(), 6);
    let v = json(&["partition", "--t", "11/7", "--cubic", "--window", "below:3000"]);
    assert_eq!(v["disjoint"], true);
    assert_eq!(v["union_matches"], true);
}

#[test]
fn table3_csv_defaults() {
    let out = run(&["table3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "T,Q,x0,x1,density_X,density_WX,density_intersection,density_product,window_mode,window_size,convention"
    );
    assert_eq!(lines.len(), 13, "six rows for each convention");
    assert!(lines[1].starts_with("5,3,17,11,0.356"));
    assert!(String::from_utf8(out.stderr).unwrap().is_empty(), "no deviations flagged");
}

#[test]
fn table3_json_matches_csv() {
    let v = json(&["table3", "--convention", "pi_t"]);
    let runs = v.as_array().unwrap();
    assert_eq!(runs.len(), 1);
    assert!(runs[0]["deviations"].as_array().unwrap().is_empty());
    let csv = stdout(&["table3", "--convention", "pi_t", "--format", "csv"]);
    let first: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    let d = runs[0]["rows"][0]["density_x"].as_f64().unwrap();
    assert_eq!(format!("{d:.6}"), first[4]);
}

#[test]
fn parallel_output_is_identical() {
    let args = ["independence", "--T", "3", "--Q", "-2", "--x", "4,15", "--format", "json", "--full"];
    let a = stdout(&args);
    let mut p = args.to_vec();
    p.push("--parallel");
    assert_eq!(a, stdout(&p));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert!(v["members"]["gamma_x"].is_array());
    let no_full = json(&["independence", "--T", "3", "--Q", "-2", "--x", "4,15"]);
    assert!(no_full.get("members").is_none());
}

#[test]
fn independence_round_trips() {
    let text = stdout(&["independence", "--T", "5", "--Q", "3", "--x", "17,11", "--format", "json"]);
    let rep: seqgroup::DensityReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", text);
}
