use std::io::Write;
use std::process::{Command, Stdio};

use dynzeta::dynmap::RationalMap;
use dynzeta::exact::{PolyQ, Rat};
use dynzeta_cli::parse::{parse_map, render_map};
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dynzeta"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args, "");
    (code, serde_json::from_str(&text).unwrap())
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn zeta_power_map() {
    let (code, v) = json(&["zeta", "--map", "z^2", "--m", "1", "--order", "6"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(strings(&r["closed"]["numerator"]), ["1", "-2"]);
    assert_eq!(strings(&r["closed"]["denominator"]), ["1", "-4"]);
    assert_eq!(r["crosscheck"]["passed"], Value::Bool(true));
    assert_eq!(strings(&r["series"]), ["1", "2", "8", "32", "128", "512", "2048"]);
}

#[test]
fn zeta_methods_and_default_order() {
    let (_, v) = json(&["zeta", "--map", "z^3", "--m", "0", "--method", "closed"]);
    assert_eq!(v["parameters"]["order"], 5);
    assert_eq!(v["result"]["closed"]["text"], "1 / (1 - 4t + 3t^2)");
    assert!(v["result"].get("series").is_none());
    let (_, v) = json(&[
        "zeta", "--map", "z^2 - 2", "--m", "2", "--method", "series", "--order", "3",
    ]);
    assert!(v["result"].get("closed").is_none());
    assert_eq!(strings(&v["result"]["series"]).len(), 4);
}

#[test]
fn family_closed_form() {
    let (code, v) = json(&["zeta", "--map", "(z^2 + (1/2)*z) / ((1/3)*z + 1)", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["closed"]["text"], "(1 - 2t) / (1 - (127/30)t)");
    assert_eq!(v["result"]["crosscheck"]["passed"], Value::Bool(true));
}

#[test]
fn matrix_command() {
    let (code, v) = json(&["matrix", "--map", "z^2", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["det_one_minus_t"]["text"], "1 - 4t");
    let rows: Vec<Vec<&str>> = v["result"]["entries"].as_array().unwrap().iter().map(strings).collect();
    assert_eq!(rows, [["0", "0", "0"], ["0", "4", "0"], ["0", "0", "0"]]);
    let (code, v) = json(&["matrix", "--map", "z^2", "--m", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "InvalidMap");
}

#[test]
fn transversality_command() {
    let (code, v) = json(&["transversality", "--map", "z^2 + 1/4", "--nmax", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["first_failure"], 1);
    assert_eq!(v["result"]["levels"][0]["verdict"], "parabolic-found");
    assert_eq!(
        strings(&v["result"]["levels"][0]["witness_original"]["finite"]),
        ["-1/2", "1"]
    );
    let (_, v) = json(&["transversality", "--map", "(z^2 + (1/2)*z) / ((1/3)*z + 1)"]);
    assert_eq!(v["result"]["all_transversal"], Value::Bool(true));
    assert_eq!(v["result"]["levels"].as_array().unwrap().len(), 6);
}

#[test]
fn certify_command() {
    let (code, v) = json(&["certify", "--map", "(z^2 + (1/2)*z) / ((1/3)*z + 1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"], "granted");
    let (_, v) = json(&["certify", "--map", "z^2 - 2"]);
    assert_eq!(v["result"]["certificate"], "not-granted");
    let (code, v) = json(&["certify", "--map", "z^2", "--tolerance", "-1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "UsageError");
}

#[test]
fn spectrum_command() {
    let (code, v) = json(&["spectrum", "--map", "z^2", "--nmax", "2", "--mmax", "1"]);
    assert_eq!(code, 0);
    let s: Vec<Vec<&str>> = v["result"]["S"].as_array().unwrap().iter().map(strings).collect();
    assert_eq!(s, [["3", "2"], ["5", "12"]]);
    let t: Vec<Vec<&str>> = v["result"]["T"].as_array().unwrap().iter().map(strings).collect();
    assert_eq!(t[0], ["1", "-2", "-4"]);
    assert_eq!(v["result"]["minimal_period_counts"], serde_json::json!([3, 2]));
}

#[test]
fn errors_are_json() {
    let (code, v) = json(&["zeta", "--map", "z^2 + 1/4", "--m", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NotTransversal");
    assert_eq!(v["error"]["details"]["level"], 1);
    let (code, v) = json(&["zeta", "--map", "1/2z", "--m", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SyntaxError");
    assert_eq!(v["error"]["details"]["position"], 3);
    let (code, v) = json(&["zeta", "--map", "z", "--m", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "DegreeTooSmall");
    let (code, v) = json(&["zeta", "--map", "(z+1)/(z+1)", "--m", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NotARationalMap");
    let (code, v) = json(&["frobnicate"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "UsageError");
}

#[test]
fn output_is_byte_stable_and_copied() {
    let dir = std::env::temp_dir().join(format!("dynzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = ["certify", "--map", "z^2 - 2", "--output", path.to_str().unwrap()];
    let (_, first) = run(&args, "");
    let (_, second) = run(&args, "");
    assert_eq!(first, second);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn map_from_stdin() {
    let (code, text) = run(&["matrix", "--map", "-", "--m", "1"], "z^3\n");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["det_one_minus_t"]["text"], "1 - 3t");
}

#[test]
fn timing_only_on_request() {
    let (_, v) = json(&["matrix", "--map", "z^2", "--m", "1"]);
    assert!(v.get("timing").is_none());
    let (_, v) = json(&["matrix", "--map", "z^2", "--m", "1", "--timing"]);
    assert!(v["timing"]["elapsed_ms"].is_string());
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rat::new(n, d))
}

fn random_map() -> impl Strategy<Value = RationalMap> {
    let poly = || prop::collection::vec(small_rat(), 1..=4).prop_map(PolyQ::new);
    (poly(), poly()).prop_filter_map("constant or undefined", |(f, g)| RationalMap::new(f, g).ok())
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(phi in random_map()) {
        prop_assert_eq!(parse_map(&render_map(&phi)).unwrap(), phi);
    }
}
