use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use mckay_e8_ffi::*;

fn last_error() -> Option<String> {
    let p = mckay_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { mckay_string_free(p) };
    s
}

fn run_json(command: &str, nodes: Option<&[usize]>, data_dir: Option<&Path>) -> (MckayStatus, Option<serde_json::Value>) {
    let cmd = CString::new(command).unwrap();
    let dir = data_dir.map(|d| CString::new(d.to_str().unwrap()).unwrap());
    let (np, nl) = nodes.map_or((ptr::null(), 0), |n| (n.as_ptr(), n.len()));
    let mut out = ptr::null_mut();
    let st = unsafe { mckay_run_json(cmd.as_ptr(), np, nl, dir.as_ref().map_or(ptr::null(), |d| d.as_ptr()), &mut out) };
    let v = (!out.is_null()).then(|| serde_json::from_str(&take_string(out)).unwrap());
    (st, v)
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(mckay_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn null_pointers_are_rejected() {
    let st = unsafe { mckay_workspace_new(ptr::null_mut()) };
    assert_eq!(st, MckayStatus::NullPointer);
    assert!(last_error().unwrap().contains("null"));
    let mut num = 0;
    let st = unsafe { mckay_node_report_inner(ptr::null(), &mut num, &mut num) };
    assert_eq!(st, MckayStatus::NullPointer);
    assert_eq!(unsafe { mckay_node_report_pass(ptr::null()) }, MckayStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mckay_node_report(ptr::null(), 0, &mut out) }, MckayStatus::NullPointer);
    assert!(out.is_null());
    // freeing NULL is a no-op
    unsafe {
        mckay_workspace_free(ptr::null_mut());
        mckay_node_report_free(ptr::null_mut());
        mckay_string_free(ptr::null_mut());
    }
}

#[test]
fn counting_formula_values() {
    let (mut num, mut den) = (0i64, 0i64);
    // A3+D5: 1/2⁶ + (52 + 64i - 60 - 64i)/2¹⁰ = 1/2⁷
    let h = [64usize, 60, 64];
    let st = unsafe { mckay_counting_formula(4, 52, h.as_ptr(), 3, &mut num, &mut den) };
    assert_eq!(st, MckayStatus::Ok);
    assert_eq!((num, den), (1, 128));
    // E8: 1/2⁶ + 240/2¹⁰ = 1/4
    let st = unsafe { mckay_counting_formula(1, 240, ptr::null(), 0, &mut num, &mut den) };
    assert_eq!(st, MckayStatus::Ok);
    assert_eq!((num, den), (1, 4));
    let st = unsafe { mckay_counting_formula(4, 52, h.as_ptr(), 2, &mut num, &mut den) };
    assert_eq!(st, MckayStatus::InvalidArgument);
    assert!(last_error().is_some());
    // a successful call clears the error
    unsafe { mckay_counting_formula(1, 240, ptr::null(), 0, &mut num, &mut den) };
    assert_eq!(last_error(), None);
}

#[test]
fn workspace_and_node_report() {
    let mut ws = ptr::null_mut();
    assert_eq!(unsafe { mckay_workspace_new(&mut ws) }, MckayStatus::Ok);
    assert!(!ws.is_null());

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { mckay_node_report(ws, 9, &mut r) }, MckayStatus::InvalidArgument);
    assert!(r.is_null());

    // 2B node: D8, ê and f̂ orthogonal
    assert_eq!(unsafe { mckay_node_report(ws, 7, &mut r) }, MckayStatus::Ok);
    let (mut num, mut den) = (-1i64, -1i64);
    assert_eq!(unsafe { mckay_node_report_inner(r, &mut num, &mut den) }, MckayStatus::Ok);
    assert_eq!((num, den), (0, 1));
    let (mut n, mut dim) = (0usize, 0usize);
    assert_eq!(unsafe { mckay_node_report_dims(r, &mut n, &mut dim) }, MckayStatus::Ok);
    assert_eq!((n, dim), (2, 2));
    let (mut e8, mut dual, mut leech) = (0usize, 0usize, 0u64);
    assert_eq!(unsafe { mckay_node_report_tau_orders(r, &mut e8, &mut dual, &mut leech) }, MckayStatus::Ok);
    assert_eq!((e8, dual, leech), (1, 2, 2));
    assert_eq!(unsafe { mckay_node_report_pass(r) }, MckayStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mckay_node_report_json(r, &mut s) }, MckayStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["i"], 7);
    assert_eq!(v["label"], "2B");
    unsafe { mckay_node_report_free(r) };

    // 3A node: 13/2¹⁰
    assert_eq!(unsafe { mckay_node_report(ws, 2, &mut r) }, MckayStatus::Ok);
    assert_eq!(unsafe { mckay_node_report_inner(r, &mut num, &mut den) }, MckayStatus::Ok);
    assert_eq!((num, den), (13, 1024));
    unsafe { mckay_node_report_free(r) };
    unsafe { mckay_workspace_free(ws) };
}

#[test]
fn run_json_commands() {
    let (st, v) = run_json("verify-codes", None, None);
    assert_eq!(st, MckayStatus::Ok);
    let v = v.unwrap();
    assert_eq!(v["command"], "verify-codes");
    assert_eq!(v["pass"], true);

    let (st, v) = run_json("verify-mckay", Some(&[0]), None);
    assert_eq!(st, MckayStatus::Ok);
    assert_eq!(v.unwrap()["results"][0]["inner_ef"], "1/4");

    let (st, v) = run_json("verify-everything", None, None);
    assert_eq!(st, MckayStatus::InvalidArgument);
    assert!(v.is_none());
    let (st, _) = run_json("verify-mckay", Some(&[12]), None);
    assert_eq!(st, MckayStatus::InvalidArgument);
    assert!(last_error().unwrap().contains("12"));
}

fn copy_data(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mckay-ffi-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    for f in ["rm41.txt", "z4_leech.txt"] {
        std::fs::copy(src.join(f), dir.join(f)).unwrap();
    }
    dir
}

#[test]
fn data_errors_and_failed_checks() {
    let missing = std::env::temp_dir().join(format!("mckay-ffi-missing-{}", std::process::id()));
    let (st, _) = run_json("verify-codes", None, Some(&missing));
    assert_eq!(st, MckayStatus::DataError);

    let dir = copy_data("corrupt");
    let path = dir.join("z4_leech.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    let flipped = if text.starts_with('2') { '3' } else { '2' };
    std::fs::write(&path, format!("{flipped}{}", &text[1..])).unwrap();
    let (st, v) = run_json("verify-codes", None, Some(&dir));
    assert_eq!(st, MckayStatus::CheckFailed);
    let v = v.unwrap();
    assert_eq!(v["pass"], false);
    let failed: Vec<&str> =
        v["results"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["claim"].as_str().unwrap()).collect();
    assert!(failed.contains(&"z4-type-ii"));
}

fn exported_symbols() -> Vec<String> {
    let src = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    src.lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap().to_owned())
        .collect()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/mckay_e8.h")).unwrap();
    let syms = exported_symbols();
    assert!(syms.len() >= 12);
    for s in syms {
        assert!(header.contains(&format!(" {s}(")) || header.contains(&format!("*{s}(")), "{s} missing from header");
    }
    for code in ["MCKAY_STATUS_OK = 0", "MCKAY_STATUS_CHECK_FAILED = 1", "MCKAY_STATUS_PANIC = 8"] {
        assert!(header.contains(code), "{code}");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/mckay_e8.h");
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-std=c99", "-Wall", "-Werror", "-x", "c"]).arg(&header).output()
    else {
        eprintln!("no C compiler, skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
