use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lexmatch_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let mut needed = 0usize;
    assert_eq!(
        unsafe { lm_last_error(buf.as_mut_ptr(), buf.len(), &mut needed) },
        LmStatus::Ok
    );
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_string_lossy()
        .into_owned()
}

fn decimal(mv: *const LmMatchingVector, k: usize) -> String {
    let mut needed = 0usize;
    let status = unsafe { lm_matching_vector_get_decimal(mv, k, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(status, LmStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    let status =
        unsafe { lm_matching_vector_get_decimal(mv, k, buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(status, LmStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn colex_table_values() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(lm_graph_colex(18, 87, &mut g), LmStatus::Ok);
        assert_eq!(lm_graph_vertex_count(g), 18);
        let mut deg = 0;
        assert_eq!(lm_graph_degree(g, 14, &mut deg), LmStatus::Ok);
        assert_eq!(deg, 9);
        let mut mv = ptr::null_mut();
        assert_eq!(lm_matching_vector(g, &mut mv), LmStatus::Ok);
        assert_eq!(decimal(mv, 2), "2739");
        assert_eq!(decimal(mv, 7), "93555");
        assert_eq!(lm_matching_vector_len(mv), 10);
        lm_matching_vector_free(mv);
        lm_graph_free(g);
    }
}

#[test]
fn from_edges_and_errors() {
    unsafe {
        let ends = [1usize, 2, 2, 3, 3, 4];
        let mut g = ptr::null_mut();
        assert_eq!(
            lm_graph_from_edges(4, ends.as_ptr(), 3, &mut g),
            LmStatus::Ok
        );
        let mut mv = ptr::null_mut();
        assert_eq!(lm_matching_vector(g, &mut mv), LmStatus::Ok);
        let mut m1 = 0u64;
        assert_eq!(lm_matching_vector_get_u64(mv, 1, &mut m1), LmStatus::Ok);
        assert_eq!(m1, 3);
        let mut buf = [0 as c_char; 8];
        assert_eq!(
            lm_matching_vector_total_decimal(mv, buf.as_mut_ptr(), 8, ptr::null_mut()),
            LmStatus::Ok
        );
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "5");
        assert_eq!(lm_graph_degree(g, 5, &mut 0), LmStatus::InvalidArgument);
        assert!(last_error().contains('5'));
        lm_matching_vector_free(mv);
        lm_graph_free(g);

        let loops = [1usize, 1];
        assert_eq!(
            lm_graph_from_edges(3, loops.as_ptr(), 1, &mut g),
            LmStatus::InvalidArgument
        );
        assert!(!last_error().is_empty());
        assert_eq!(lm_graph_lex(3, 0, ptr::null_mut()), LmStatus::NullPointer);
        assert_eq!(lm_graph_from_edges(3, ptr::null(), 0, &mut g), LmStatus::Ok);
        assert_eq!(lm_graph_edge_count(g), 0);
        lm_graph_free(g);
        lm_graph_free(ptr::null_mut());
        assert_eq!(lm_graph_edge_count(ptr::null()), 0);
    }
}

#[test]
fn diagrams() {
    unsafe {
        let text = CString::new("2 4 : 3,2").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(lm_diagram_parse(text.as_ptr(), &mut d), LmStatus::Ok);
        let mut rv = ptr::null_mut();
        assert_eq!(lm_rook_vector(d, &mut rv), LmStatus::Ok);
        assert_eq!(decimal(rv, 1), "5");
        assert_eq!(decimal(rv, 2), "4");
        let mut end = ptr::null_mut();
        assert_eq!(
            lm_diagram_minimize(d, &mut end, ptr::null_mut()),
            LmStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(lm_diagram_to_string(end, &mut s), LmStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "2 4 : 4,1");
        lm_string_free(s);
        lm_matching_vector_free(rv);
        lm_diagram_free(end);
        lm_diagram_free(d);

        let bad = CString::new("2 4 : 1,3").unwrap();
        assert_eq!(
            lm_diagram_parse(bad.as_ptr(), &mut d),
            LmStatus::InvalidArgument
        );
    }
}

#[test]
fn verify_sweep_and_budget() {
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(lm_verify_general(5, 5, 0, 2, &mut json), LmStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["instances"], 252);
        assert!(v["counterexamples"].as_array().unwrap().is_empty());
        lm_string_free(json);

        assert_eq!(
            lm_verify_general(7, 10, 1000, 0, &mut json),
            LmStatus::BudgetExceeded
        );
        assert!(last_error().contains("352716"));
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/lexmatch.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build script");
    for sym in [
        "lm_graph_lex",
        "lm_matching_vector_get_u64",
        "lm_diagram_minimize",
        "lm_verify_general",
    ] {
        assert!(text.contains(sym), "{sym} missing from header");
    }

    let lib = target_dir().join("liblexmatch_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping C link test: cc or {} unavailable", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("lexmatch_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke test failed to compile");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
