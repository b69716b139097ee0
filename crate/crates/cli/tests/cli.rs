use std::process::{Command, Output};

use hnstrat::{format_rational, parse_rational};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnstrat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

const GL14_MU: &str = "1,1,1,1,0,0,0,0,0,0,0,0,0,0";
const GL14_NU1: &str = "3/2,3/2,3/2,3/2,4/5,4/5,4/5,4/5,4/5,4/5,4/5,4/5,4/5,4/5";
const GL14_NU2: &str = "8/7,8/7,8/7,8/7,8/7,8/7,8/7,6/7,6/7,6/7,6/7,6/7,6/7,6/7";

#[test]
fn enumerate_gl2() {
    let v = json(&["enumerate", "--group", "gl:2", "--mu", "1,0"]);
    assert_eq!(v["count"], 2);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(strs(&classes[0]["nu"]), ["1", "0"]);
    assert_eq!(strs(&classes[1]["nu"]), ["1/2", "1/2"]);
}

#[test]
fn enumerate_gl1_is_trivial() {
    let v = json(&["enumerate", "--group", "gl:1", "--mu", "0"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["classes"][0]["in_b_hn"], true);
}

#[test]
fn enumerate_superbasic_inner_form() {
    let v = json(&[
        "enumerate",
        "--group",
        "gl:5",
        "--twist",
        "2",
        "--mu",
        "0,0,0,-1,-1",
    ]);
    let classes = v["classes"].as_array().unwrap();
    let target = classes
        .iter()
        .find(|c| strs(&c["nu"]) == ["-1/3", "-1/3", "-1/3", "-1/2", "-1/2"])
        .expect("class present");
    assert_eq!(target["in_b_hn"], false);
    let in_hn: Vec<&Value> = classes.iter().filter(|c| c["in_b_hn"] == true).collect();
    assert_eq!(in_hn.len(), 1);
    assert_eq!(strs(&in_hn[0]["nu"]), vec!["-2/5"; 5]);
}

#[test]
fn mu_is_echoed_raw_and_sorted() {
    let v = json(&["enumerate", "--group", "gl:3", "--mu", "0,1,0"]);
    assert_eq!(v["mu_input"], serde_json::json!([0, 1, 0]));
    assert_eq!(v["mu"], serde_json::json!([1, 0, 0]));
    let neg = json(&["enumerate", "--group", "gl:2", "--mu", "-1,0"]);
    assert_eq!(neg["mu"], serde_json::json!([0, -1]));
}

#[test]
fn theta_gl5_lists_both_types() {
    let v = json(&[
        "theta",
        "--group",
        "gl:5",
        "--mu",
        "4,3,2,1,0",
        "--nu",
        "5/2,5/2,5/3,5/3,5/3",
    ]);
    let types: Vec<Value> = v["types"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["neg_lambda"].clone())
        .collect();
    assert!(types.len() >= 2);
    assert!(types.contains(&serde_json::json!([1, 4, 0, 2, 3])));
    assert!(types.contains(&serde_json::json!([2, 3, 0, 1, 4])));
}

#[test]
fn dims_gl7() {
    let mu = "1,1,1,1,0,0,0";
    let a = json(&[
        "dims",
        "--group",
        "gl:7",
        "--mu",
        mu,
        "--nu",
        "1,3/5,3/5,3/5,3/5,3/5,0",
    ]);
    assert_eq!(
        (a["newton"].as_str(), a["hn_bound"].as_str(), &a["equal"]),
        (Some("6"), Some("6"), &Value::Bool(true))
    );
    let b = json(&[
        "dims",
        "--group",
        "gl:7",
        "--mu",
        mu,
        "--nu",
        "2/3,2/3,2/3,1/2,1/2,1/2,1/2",
    ]);
    assert_eq!(
        (b["newton"].as_str(), b["hn_bound"].as_str(), &b["equal"]),
        (Some("10"), Some("8"), &Value::Bool(false))
    );
    assert!(b.get("hn_bound_two_rho").is_none());
    let strict = json(&[
        "dims",
        "--group",
        "gl:7",
        "--mu",
        mu,
        "--nu",
        "2/3,2/3,2/3,1/2,1/2,1/2,1/2",
        "--strict-paper",
    ]);
    assert_eq!(strict["hn_bound_two_rho"], "16");
    assert!(strict["note"].is_string());
}

#[test]
fn hnd_and_fully_hnd() {
    let v = json(&[
        "hnd",
        "--group",
        "gl:3",
        "--mu",
        "1,0,0",
        "--nu",
        "1/2,1/2,0",
        "--levi",
        "2,1",
    ]);
    assert_eq!(v["smallest_levi"], serde_json::json!([2, 1]));
    assert_eq!(v["decomposable_for_levi"], true);
    let f = json(&[
        "fully-hnd",
        "--group",
        "gl:5",
        "--mu",
        "1,1,0,0,0",
        "--oracle",
    ]);
    assert_eq!(f["holds"], false);
    assert_eq!(strs(&f["witness"]), ["1/2", "1/2", "1/3", "1/3", "1/3"]);
    assert_eq!(
        json(&["fully-hnd", "--group", "gl:3", "--mu", "1,0,0"])["holds"],
        true
    );
}

#[test]
fn dor_gap_example() {
    let v = json(&[
        "dor",
        "--group",
        "gl:3",
        "--mu",
        "2,0,0",
        "--nu",
        "1,1/2,1/2",
        "--oracle",
    ]);
    assert_eq!(v["dor_nonempty"], false);
    assert_eq!(v["in_b_hn"], true);
}

#[test]
fn wa_verdicts() {
    let c = json(&["wa", "--b", "5/7,5/7", "--mu", GL14_MU, "--nu", GL14_NU1]);
    assert_eq!(c["verdict"], "contained");
    assert!(c["survivors"].as_array().unwrap().is_empty());
    let i = json(&["wa", "--b", "5/7,5/7", "--mu", GL14_MU, "--nu", GL14_NU2]);
    assert_eq!(i["verdict"], "inconclusive");
    assert_eq!(i["survivors"].as_array().unwrap().len(), 1);
    let s = json(&[
        "wa",
        "--b",
        "2/5",
        "--mu",
        "0,0,0,-1,-1",
        "--nu",
        "1/3,1/3,1/3,-1/2,-1/2",
    ]);
    assert_eq!(s["verdict"], "contained");
    assert!(s["ledger"].as_array().unwrap().is_empty());
}

#[test]
fn hn_polygon_of_instance() {
    let v = json(&["hn-polygon", "--instance", "0/1:1,0/1:0", "--oracle"]);
    assert_eq!(v["polygon"]["degree"], "1");
    assert_eq!(strs(&v["polygon"]["slopes"]), ["1", "0"]);
    let csv = stdout(&["hn-polygon", "--instance", "5/7", "--format", "csv"]);
    assert_eq!(csv, "rank,degree\n0,0\n7,5\n");
}

#[test]
fn report_index_relations() {
    let v = json(&["report", "--group", "gl:2", "--mu", "1,0"]);
    let rows = v["classes"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["newton_to_hn"].as_array().unwrap().len(), 2);
    assert_eq!(rows[1]["newton_to_hn"].as_array().unwrap().len(), 1);
    let one = json(&[
        "report", "--group", "gl:2", "--mu", "1,0", "--nu", "1/2,1/2",
    ]);
    assert_eq!(one["count"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["enumerate", "--group", "gl:2", "--mu", "1,0"]), 0);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["enumerate", "--group", "gl:2", "--mu", "1,x"]), 2);
    assert_eq!(code(&["enumerate", "--group", "sp:2", "--mu", "1,0"]), 2);
    assert_eq!(code(&["theta", "--group", "gl:3", "--mu", "1,0,0"]), 2);
    assert_eq!(
        code(&["theta", "--group", "gl:3", "--mu", "1,0,0", "--nu", "1/0,0,0"]),
        2
    );
    assert_eq!(
        code(&["theta", "--group", "gl:3", "--mu", "1,0,0", "--nu", "1,1,-1"]),
        3
    );
    assert_eq!(
        code(&["theta", "--group", "gl:3", "--mu", "1,0", "--nu", "1,0,0"]),
        3
    );
    assert_eq!(
        code(&[
            "dims",
            "--group",
            "gl:3",
            "--mu",
            "2,0,0",
            "--nu",
            "2/3,2/3,2/3"
        ]),
        3
    );
    assert_eq!(
        code(&["wa", "--b", "1/2,0", "--mu", "1,0,0", "--nu", "1/3,1/3,1/3"]),
        3
    );
    let err = run(&[
        "theta", "--group", "gl:3", "--mu", "1,0,0", "--nu", "1,1,-1",
    ]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("not in B(G, mu)"));
    assert!(err.stdout.is_empty());
}

#[test]
fn output_is_identical_across_jobs() {
    for format in ["json", "csv", "markdown"] {
        let base = [
            "report",
            "--group",
            "gl:6",
            "--mu",
            "2,1,1,0,0,0",
            "--strict-paper",
            "--format",
            format,
        ];
        let one = stdout(&[&base[..], &["--jobs", "1"]].concat());
        let four = stdout(&[&base[..], &["--jobs", "4"]].concat());
        let again = stdout(&[&base[..], &["--jobs", "4"]].concat());
        assert_eq!(one, four);
        assert_eq!(four, again);
    }
}

fn check_rationals(v: &Value, seen: &mut usize) {
    match v {
        Value::String(s)
            if s.chars()
                .all(|c| c.is_ascii_digit() || c == '-' || c == '/')
                && !s.is_empty() =>
        {
            let r = parse_rational(s).expect("rational parses");
            assert_eq!(&format_rational(&r), s);
            *seen += 1;
        }
        Value::Array(a) => a.iter().for_each(|x| check_rationals(x, seen)),
        Value::Object(m) => m.values().for_each(|x| check_rationals(x, seen)),
        _ => {}
    }
}

#[test]
fn printed_rationals_round_trip() {
    let mut seen = 0;
    for args in [
        vec![
            "report",
            "--group",
            "gl:5",
            "--mu",
            "2,1,0,0,-1",
            "--strict-paper",
        ],
        vec!["wa", "--b", "5/7,5/7", "--mu", GL14_MU, "--nu", GL14_NU2],
        vec!["hn-polygon", "--instance", "1/3:2,-2/3:1,3/2:-1"],
    ] {
        check_rationals(&json(&args), &mut seen);
    }
    assert!(seen > 100);
    let csv = stdout(&[
        "enumerate",
        "--group",
        "gl:4",
        "--mu",
        "1,1,0,-1",
        "--format",
        "csv",
    ]);
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    for record in reader.records() {
        let nu = record.unwrap()[0].to_string();
        let again = json(&["theta", "--group", "gl:4", "--mu", "1,1,0,-1", "--nu", &nu]);
        assert_eq!(strs(&again["nu"]).join(","), nu);
    }
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "group = \"gl:2\"\nmu = \"1,0\"\nformat = \"csv\"\n").unwrap();
    let p = path.to_str().unwrap();
    let csv = stdout(&["enumerate", "--config", p]);
    assert_eq!(csv.lines().count(), 3);
    let overridden = stdout(&[
        "enumerate",
        "--config",
        p,
        "--mu",
        "2,0",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&overridden).unwrap();
    assert_eq!(v["mu"], serde_json::json!([2, 0]));
    std::fs::write(&path, "mu = [1, 0]\n").unwrap();
    assert_eq!(code(&["enumerate", "--config", p, "--group", "gl:2"]), 2);
    assert_eq!(code(&["enumerate", "--config", "/nonexistent/run.toml"]), 2);
}

#[test]
fn markdown_and_csv_tables() {
    let md = stdout(&[
        "enumerate",
        "--group",
        "gl:2",
        "--mu",
        "1,0",
        "--format",
        "markdown",
    ]);
    assert!(md.starts_with("| nu | in_b_hn |"));
    assert_eq!(md.lines().count(), 4);
    let csv = stdout(&[
        "theta",
        "--group",
        "gl:5",
        "--mu",
        "4,3,2,1,0",
        "--nu",
        "5/2,5/2,5/3,5/3,5/3",
        "--format",
        "csv",
    ]);
    assert!(csv.starts_with("levi,neg_lambda,lambda,cell_dimension\n"));
}

#[test]
fn oracle_cross_checks_pass() {
    for args in [
        vec![
            "enumerate",
            "--group",
            "gl:5",
            "--mu",
            "2,1,0,0,-1",
            "--oracle",
        ],
        vec![
            "report", "--group", "gl:4", "--twist", "2", "--mu", "1,1,0,0", "--oracle",
        ],
        vec![
            "dims",
            "--group",
            "gl:7",
            "--mu",
            "1,1,1,1,0,0,0",
            "--nu",
            "2/3,2/3,2/3,1/2,1/2,1/2,1/2",
            "--oracle",
        ],
    ] {
        json(&args);
    }
    assert_eq!(
        code(&[
            "enumerate",
            "--group",
            "gl:9",
            "--mu",
            "1,0,0,0,0,0,0,0,0",
            "--oracle"
        ]),
        2
    );
}
