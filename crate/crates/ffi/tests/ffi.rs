use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use sfi_ffi::*;

fn example(name: &str) -> CString {
    let path = format!("{}/../core/examples/{name}", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read(path).unwrap()).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    sfi_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sfi_last_error()).to_str().unwrap().to_owned() }
}

unsafe fn load(name: &str) -> *mut SfiGraph {
    let mut g = ptr::null_mut();
    assert_eq!(sfi_graph_from_json(example(name).as_ptr(), &mut g), SfiStatus::Ok);
    g
}

// Closed walks of length n on the directed triangle with both orientations.
fn triangle_walks(n: usize) -> usize {
    let mut counts = [1usize, 0, 0];
    for _ in 0..n {
        counts = [0, 1, 2].map(|v| counts[(v + 1) % 3] + counts[(v + 2) % 3]);
    }
    counts[0]
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(sfi_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn graph_round_trip() {
    unsafe {
        let g = load("cycle3.json");
        let mut valid: c_int = -1;
        assert_eq!(sfi_graph_is_valid(g, &mut valid), SfiStatus::Ok);
        assert_eq!(valid, 1);
        let v0 = CString::new("v0").unwrap();
        for n in 0..6 {
            let mut count = usize::MAX;
            assert_eq!(sfi_graph_loop_count(g, v0.as_ptr(), n, &mut count), SfiStatus::Ok);
            assert_eq!(count, triangle_walks(n), "n = {n}");
        }
        let mut json = ptr::null_mut();
        assert_eq!(sfi_graph_spectrum_json(g, v0.as_ptr(), &mut json), SfiStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["spectrum"]["kind"], "cyclic");
        assert_eq!(v["factor_type"]["type"], "III_lambda");

        let direct = {
            let graph = sfi_core::graph::read_graph(example("cycle3.json").as_bytes()).unwrap();
            let a = sfi_core::loops::LoopAlgebra::new(&graph, "v0").unwrap();
            sfi_core::modular::spectrum_exact(&a).unwrap()
        };
        assert_eq!(v["spectrum"], serde_json::to_value(&direct).unwrap());
        sfi_graph_free(g);
    }
}

#[test]
fn invalid_graph_reports_violations_and_refuses_spectrum() {
    unsafe {
        let g = load("unfair.json");
        let mut valid: c_int = -1;
        assert_eq!(sfi_graph_is_valid(g, &mut valid), SfiStatus::Ok);
        assert_eq!(valid, 0);
        let mut json = ptr::null_mut();
        assert_eq!(sfi_graph_violations_json(g, &mut json), SfiStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert!(!v.as_array().unwrap().is_empty());

        let base = CString::new("v").unwrap();
        let mut json = ptr::null_mut();
        assert_eq!(sfi_graph_spectrum_json(g, base.as_ptr(), &mut json), SfiStatus::Precondition);
        assert!(json.is_null());
        assert!(!last_error().is_empty());
        sfi_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(sfi_graph_from_json(ptr::null(), &mut g), SfiStatus::NullPointer);
        assert_eq!(sfi_graph_from_json(example("corrupted.json").as_ptr(), &mut g), SfiStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("parse"));

        let bad = [0xffu8, 0xfe, 0];
        let mut s = ptr::null_mut();
        assert_eq!(sfi_quantum_int(bad.as_ptr().cast(), 3, &mut s), SfiStatus::InvalidUtf8);
        let junk = CString::new("two").unwrap();
        assert_eq!(sfi_quantum_int(junk.as_ptr(), 3, &mut s), SfiStatus::Parse);

        let g = load("cycle3.json");
        let missing = CString::new("nowhere").unwrap();
        let mut count = 0usize;
        assert_eq!(sfi_graph_loop_count(g, missing.as_ptr(), 2, &mut count), SfiStatus::Graph);
        assert_eq!(sfi_graph_loop_count(g, missing.as_ptr(), 2, ptr::null_mut()), SfiStatus::NullPointer);
        assert_eq!(sfi_graph_is_valid(ptr::null(), &mut 0), SfiStatus::NullPointer);
        sfi_graph_free(g);
        sfi_graph_free(ptr::null_mut());
        sfi_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_last_error() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sfi_quantum_int(ptr::null(), 3, &mut s), SfiStatus::NullPointer);
        assert!(!last_error().is_empty());
        let d = CString::new("2").unwrap();
        assert_eq!(sfi_quantum_int(d.as_ptr(), 3, &mut s), SfiStatus::Ok);
        take(s);
        assert!(last_error().is_empty());
    }
}

#[test]
fn scalar_entry_points() {
    unsafe {
        // [n] = δ[n-1] - [n-2] with [0] = 0, [1] = 1; at δ = 5/2 this gives [4] = 85/8.
        let d = CString::new("5/2").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(sfi_quantum_int(d.as_ptr(), 4, &mut s), SfiStatus::Ok);
        assert_eq!(take(s), "85/8");
        // The Jones-Wenzl projector on 2 strands is 1 - e/δ with trace δ² - 1.
        assert_eq!(sfi_jones_wenzl_trace(d.as_ptr(), 2, &mut s), SfiStatus::Ok);
        assert_eq!(take(s), "21/4");

        let eigs = CString::new("1/4,1,4").unwrap();
        assert_eq!(sfi_qg_spectrum_json(eigs.as_ptr(), &mut s), SfiStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["kac"], false);
        assert_eq!(v["spectrum"]["kind"], "cyclic");
    }
}

#[test]
fn run_matches_cli() {
    let path = format!("{}/../core/examples/cycle3.json", env!("CARGO_MANIFEST_DIR"));
    let args: Vec<CString> = ["sfi", "--format", "json", "graph", "validate", &path]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut code, mut out, mut err) = (-1, ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(
            sfi_run(argv.len() as c_int, argv.as_ptr(), &mut code, &mut out, &mut err),
            SfiStatus::Ok
        );
        assert_eq!(code, 0);
        let stdout = take(out);
        take(err);
        let expected = sfi_core::cli::run(["sfi", "--format", "json", "graph", "validate", &path]);
        assert_eq!(stdout, expected.stdout);
        assert_eq!(sfi_run(-1, ptr::null(), &mut code, &mut out, &mut err), SfiStatus::NullPointer);
    }
}
