use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use rdpk3::height::SurfaceModel;
use rdpk3::lattice::GlueSpec;
use rdpk3::reproduce::{a20_glue_spec, height3_surface};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdpk3")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    assert_eq!(v["schema_version"], 1);
    (out.status.code().expect("exit code"), v)
}

#[test]
fn data_files_match_library_objects() {
    let m: SurfaceModel = serde_json::from_str(&std::fs::read_to_string(data("ex71.json")).unwrap()).unwrap();
    assert_eq!(m, height3_surface());
    let g: GlueSpec = serde_json::from_str(&std::fs::read_to_string(data("glue_a20.json")).unwrap()).unwrap();
    assert_eq!(serde_json::to_value(&g).unwrap(), serde_json::to_value(a20_glue_spec()).unwrap());
}

#[test]
fn witt_eval_sum_of_teichmuller_lifts() {
    let (code, v) = run_json(&["witt", "eval", "--p", "2", "--op", "add", "--lhs", "(a, 0)", "--rhs", "(b, 0)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["components"], serde_json::json!(["a + b", "a*b"]));
}

#[test]
fn witt_table_lists_sum_polynomials() {
    let (_, v) = run_json(&["witt", "table", "--p", "3", "--n", "2", "--op", "sum"]);
    let polys = v["result"]["sum"]["polys"].as_array().unwrap();
    assert_eq!(polys.len(), 2);
    assert_eq!(polys[0], "a0 + b0");
}

#[test]
fn chart_show_rdp_and_quotient() {
    let (_, v) = run_json(&["chart", "show", "2:D12:3"]);
    assert_eq!(v["result"]["key"], "2:D12:3");
    assert_eq!(v["result"]["epsilon"], "x^-1*y^-1*z");
    let (_, v) = run_json(&["chart", "show", "quot:2:alpha:E8"]);
    assert_eq!(v["result"]["n"], 4);
}

#[test]
fn localcoh_checks() {
    let (code, v) = run_json(&["localcoh", "verify", "--check", "quotient", "--case", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"][0]["pass"], true);
    let (code, v) = run_json(&["localcoh", "frob", "--chart", "2:D12:0", "--n", "2", "--j", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"][0]["computed"], "[(0, 0)]");
    let (code, v) = run_json(&["localcoh", "verify", "--check", "frob-e8-i2", "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"][0]["computed"], "[(x^-1*y^-1*z)]");
}

#[test]
fn height_count_on_the_elliptic_model() {
    let model = data("ex71.json");
    let (code, v) = run_json(&["height", "count", "--model", model.to_str().unwrap(), "--q", "2,4,8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counts"], serde_json::json!([9, 25, 45]));
    assert_eq!(v["result"]["height_test"]["height"], 3);
}

#[test]
fn height_from_rdp_and_quotient() {
    // height 1 and N + 2h = 22
    let (_, v) = run_json(&["height", "from-rdp", "2:D20:9"]);
    assert_eq!(v["result"]["height"]["value"], 1);
    assert_eq!(v["result"]["realizability"]["realizable"], false);
    let (_, v) = run_json(&["height", "from-rdp", "5:A4"]);
    assert_eq!(v["result"]["realizability"]["realizable"], true);
    let (_, v) = run_json(&["height", "quotient", "-G", "alpha", "--p", "2", "--sing", "D8:0"]);
    assert_eq!(v["result"]["height"]["kind"], "finite");
}

#[test]
fn lattice_commands() {
    let spec = data("glue_a20.json");
    let (code, v) = run_json(&["lattice", "glue", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["index"], 7);
    assert_eq!(v["result"]["signature"], serde_json::json!([1, 21]));
    assert_eq!(v["result"]["disc_orders"], serde_json::json!([3, 3]));

    let (_, v) = run_json(&["lattice", "disc", "--gram", "[[-4]]"]);
    assert_eq!(v["result"]["q"], serde_json::json!(["7/4"]));

    let (_, v) = run_json(&["lattice", "overlattice", "--dynkin", "D8"]);
    assert_eq!(v["result"]["exists"], true);
    let (_, v) = run_json(&["lattice", "overlattice", "--gram", "[[-4,0,0,0],[0,7,0,0],[0,0,2,1],[0,0,1,4]]"]);
    assert_eq!(v["result"]["exists"], false);
}

#[test]
fn reproduce_subset_passes() {
    let (code, v) = run_json(&["reproduce", "--only", "glue", "--only", "height-table"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["failed"], 0);
    assert!(v["result"]["passed"].as_u64().unwrap() > 0);
}

#[test]
fn bad_input_exits_with_two() {
    let out = run(&["chart", "show", "2:Q9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
