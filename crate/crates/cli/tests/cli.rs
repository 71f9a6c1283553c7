use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgraph")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const L5_JSON: &str = r#"{"name":"l5_662","n":5,"d":2,"graph":{"edges":[[1,2],[1,5],[2,3],[3,4],[4,5]]},"clique":[[],[1,2,4],[1,3,4],[1,3,5],[2,3,5],[2,4,5]]}"#;

#[test]
fn search_clique_on_pentagon() {
    let out = qgraph(&["search-clique", "--graph", "family:loop:5", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["log"]["complete"], true);
    assert_eq!(v["log"]["super_graph_vertices"], 17);
    assert_eq!(v["codes"][0]["clique"].as_array().unwrap().len(), 6);
}

#[test]
fn search_group_finds_five_qubit_code() {
    let out = qgraph(&["search-group", "--graph", "family:loop:5", "--d", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(v["codes"].as_array().unwrap().iter().all(|c| c["clique"].as_array().unwrap().len() == 2));

    // a result cap leaves the enumeration incomplete
    let capped = qgraph(&["search-group", "--graph", "family:loop:5", "--d", "3", "--k", "1", "--max-results", "1"]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(json(&capped)["codes"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_pipeline_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l5.json");
    std::fs::write(&path, L5_JSON).unwrap();
    let p = path.to_str().unwrap();

    let ok = qgraph(&["verify", p]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!(v["verified"], true);
    assert_eq!(v["distance"], 2);

    let too_far = qgraph(&["verify", p, "--d", "3"]);
    assert_eq!(too_far.status.code(), Some(1));
    assert_eq!(json(&too_far)["knill_laflamme"]["accepted"], false);

    let missing = qgraph(&["verify", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));

    let garbled = dir.path().join("bad.json");
    std::fs::write(&garbled, "{not json").unwrap();
    assert_eq!(qgraph(&["verify", garbled.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(L5_JSON.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["K"], 6);
}

#[test]
fn incomplete_search_exits_three() {
    let out = qgraph(&["search-clique", "--graph", "family:loop:10", "--d", "3", "--time-budget", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["log"]["complete"], false);
}

#[test]
fn weights_of_nine_qubit_code_are_fractional() {
    let out = qgraph(&["weights", "catalog:l9_1233"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sum"], "128/3");
    assert_eq!(v["signature"], "(2/3)_4 (32/3)_6 (64/3)_7 9_8");
}

#[test]
fn lc_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = qgraph(&["lc", "catalog:l5_662", "--vertex", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("moved.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let check = qgraph(&["verify", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["verified"], true);
    assert_eq!(qgraph(&["lc", "catalog:l5_662", "--vertex", "9"]).status.code(), Some(2));
}

#[test]
fn stabilizer_conversions() {
    let sf = qgraph(&["standard-form", "XZZXI,IXZZX,XIXZZ,ZXIXZ"]);
    assert_eq!(sf.status.code(), Some(0));
    let v = json(&sf);
    assert_eq!((v["n"].as_u64(), v["r"].as_u64(), v["k"].as_u64()), (Some(5), Some(4), Some(1)));

    let g = qgraph(&["to-graph", "XZZXI,IXZZX,XIXZZ,ZXIXZ"]);
    assert_eq!(g.status.code(), Some(0));
    let v = json(&g);
    assert_eq!(v["code"]["d"], 3);
    assert_eq!(v["code"]["clique"].as_array().unwrap().len(), 2);

    assert_eq!(qgraph(&["standard-form", "XZ,ZZZ"]).status.code(), Some(2));
    assert_eq!(qgraph(&["standard-form", "XX,ZI"]).status.code(), Some(2));
}

#[test]
fn catalog_listing_and_entries() {
    let list = qgraph(&["catalog"]);
    let names: Vec<String> = serde_json::from_value(json(&list)["entries"].clone()).unwrap();
    assert!(names.iter().any(|n| n == "steane_713"));
    for name in ["l5_662", "pentagon_513", "star_family_plus(1)"] {
        let out = qgraph(&["catalog", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["verified"], true);
    }
    assert_eq!(qgraph(&["catalog", "no_such_code"]).status.code(), Some(2));
}

#[test]
fn classify_table_output() {
    let out = qgraph(&["--table", "classify", "--n", "5", "--k", "1", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("15_4"));
}
