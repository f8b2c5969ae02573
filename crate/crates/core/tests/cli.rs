use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mckay(args: &[&str], data_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mckay"));
    cmd.args(args).env_remove("MCKAY_DATA_DIR");
    if let Some(d) = data_dir {
        cmd.env("MCKAY_DATA_DIR", d);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn copy_data(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("mckay-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for f in ["rm41.txt", "z4_leech.txt"] {
        std::fs::copy(Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(f), dir.join(f)).unwrap();
    }
    dir
}

#[test]
fn markdown_diagram_column() {
    let out = mckay(&["verify-mckay", "--format", "markdown"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let col: Vec<String> = text
        .lines()
        .filter(|l| l.starts_with("| ") && l.chars().nth(2).is_some_and(|c| c.is_ascii_digit()))
        .map(|l| l.split(" | ").nth(7).unwrap().to_string())
        .collect();
    assert_eq!(col, ["1", "1/8", "13/2^8", "1/2^5", "3/2^7", "5/2^8", "1/2^6", "0", "1/2^6"]);
    let labels: Vec<&str> = text.lines().filter(|l| l.ends_with("| yes |")).map(|l| l.split(" | ").nth(1).unwrap()).collect();
    assert_eq!(labels, ["1A", "2A", "3A", "4A", "5A", "6A", "4B", "2B", "3C"]);
}

#[test]
fn single_node_json() {
    let out = mckay(&["verify-mckay", "--node", "7"], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["command"], "verify-mckay");
    assert_eq!(v["pass"], true);
    assert!(v["version"].is_string());
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["label"], "2B");
    assert_eq!(results[0]["inner_ef"], "0");
}

#[test]
fn output_is_deterministic() {
    let a = mckay(&["verify-codes"], None);
    let b = mckay(&["verify-codes"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["results"].as_array().unwrap().len(), 5);
}

#[test]
fn corrupted_code_fails_with_record() {
    let dir = copy_data("corrupt");
    let path = dir.join("z4_leech.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    let first = text.chars().next().unwrap();
    let flipped = if first == '2' { '3' } else { '2' };
    std::fs::write(&path, format!("{flipped}{}", &text[1..])).unwrap();
    let out = mckay(&["verify-codes"], Some(&dir));
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    let failed: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["claim"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"z4-type-ii"));
    let out = mckay(&["verify-mckay", "--node", "1"], Some(&dir));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"][0]["failure"]["claim"], "z4-type-ii");
}

#[test]
fn pristine_data_dir_is_accepted() {
    let dir = copy_data("pristine");
    let out = mckay(&["verify-codes", "--format", "markdown"], Some(&dir));
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("result: pass"));
}

#[test]
fn invalid_arguments() {
    assert_eq!(mckay(&["verify-mckay", "--node", "9"], None).status.code(), Some(2));
    assert_eq!(mckay(&["verify-leech", "--budget", "0"], None).status.code(), Some(2));
    assert_eq!(mckay(&["verify-nothing"], None).status.code(), Some(2));
    let missing = std::env::temp_dir().join("mckay-cli-missing-dir");
    assert_eq!(mckay(&["verify-codes"], Some(&missing)).status.code(), Some(2));
}

#[test]
fn verify_all_passes() {
    let out = mckay(&["verify-all"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let sections: Vec<&str> = v["results"].as_array().unwrap().iter().map(|s| s["command"].as_str().unwrap()).collect();
    assert_eq!(sections, ["verify-codes", "verify-griess", "verify-leech", "verify-mckay"]);
}
