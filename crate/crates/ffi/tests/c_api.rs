use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use graphdesign_ffi::*;

fn last_error() -> String {
    let p = gd_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn path_graph() -> *mut GdGraph {
    let from = [0usize, 1];
    let to = [1usize, 2];
    let w = [1.0, 1.0];
    let mut g = ptr::null_mut();
    let st = unsafe { gd_graph_new(3, from.as_ptr(), to.as_ptr(), w.as_ptr(), 2, &mut g) };
    assert_eq!(st, GdStatus::Ok);
    g
}

#[test]
fn spectrum_and_designs_through_handles() {
    unsafe {
        let g = path_graph();
        assert_eq!(gd_graph_vertex_count(g), 3);
        assert_eq!(gd_graph_edge_count(g), 2);
        let mut s = ptr::null_mut();
        assert_eq!(gd_spectrum_new(g, 1e-8, &mut s), GdStatus::Ok);
        assert_eq!(gd_spectrum_space_count(s), 3);
        let (mut value, mut mult) = (0.0, 0usize);
        assert_eq!(gd_spectrum_eigenspace(s, 2, &mut value, &mut mult), GdStatus::Ok);
        assert!((value - 3.0).abs() < 1e-12);
        assert_eq!(mult, 1);
        assert_eq!(
            gd_spectrum_eigenspace(s, 3, &mut value, &mut mult),
            GdStatus::InvalidInput
        );

        let mut bound = 0usize;
        assert_eq!(gd_facet_bound(s, ptr::null(), 0, 2, &mut bound), GdStatus::Ok);
        assert_eq!(bound, 2);

        let mut residual = -1.0;
        let good = [1.0, 0.0, 1.0];
        assert_eq!(
            gd_design_verify(s, ptr::null(), 0, 2, good.as_ptr(), 3, 1e-8, &mut residual),
            GdStatus::Ok
        );
        assert!(residual.abs() < 1e-12);
        let bad = [1.0, 0.0, 0.0];
        assert_eq!(
            gd_design_verify(s, ptr::null(), 0, 2, bad.as_ptr(), 3, 1e-8, &mut residual),
            GdStatus::NotADesign
        );
        assert!(residual > 0.1);
        assert!(last_error().contains("not a design"));

        let mut found = [0.0; 3];
        assert_eq!(
            gd_design_find(s, ptr::null(), 0, 2, found.as_mut_ptr(), 3),
            GdStatus::Ok
        );
        assert!((found.iter().sum::<f64>() - 1.0).abs() < 1e-12);

        let mut json = ptr::null_mut();
        assert_eq!(
            gd_design_enumerate_json(s, ptr::null(), 0, 2, 0, &mut json),
            GdStatus::Ok
        );
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        gd_string_free(json);
        let report: serde_json::Value = serde_json::from_str(&text).unwrap();
        let supports: Vec<&serde_json::Value> = report["designs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| &d["support"])
            .collect();
        assert_eq!(supports, vec![&serde_json::json!([1, 3]), &serde_json::json!([2])]);

        gd_spectrum_free(s);
        gd_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        let from = [0usize];
        let to = [0usize];
        let w = [1.0];
        assert_eq!(
            gd_graph_new(2, from.as_ptr(), to.as_ptr(), w.as_ptr(), 1, &mut g),
            GdStatus::InvalidInput
        );
        assert!(g.is_null());
        assert_eq!(
            gd_graph_new(2, ptr::null(), to.as_ptr(), w.as_ptr(), 1, &mut g),
            GdStatus::NullPointer
        );
        assert!(last_error().contains("from"));

        let json = CString::new(r#"{"n": 4, "edges": [[1, 2, 1.0], [3, 4, 1.0]]}"#).unwrap();
        assert_eq!(gd_graph_from_json(json.as_ptr(), &mut g), GdStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(gd_spectrum_new(g, 1e-8, &mut s), GdStatus::Disconnected);
        gd_graph_free(g);

        assert_eq!(gd_barbell_new(2, 1.0, &mut g), GdStatus::InvalidInput);
        assert_eq!(gd_barbell_new(3, 1.0, &mut g), GdStatus::Ok);
        assert_eq!(gd_spectrum_new(g, 1e-8, &mut s), GdStatus::Ok);
        let bad_order = [0usize, 0, 1, 2];
        let mut bound = 0;
        assert_eq!(
            gd_facet_bound(s, bad_order.as_ptr(), 4, 2, &mut bound),
            GdStatus::InvalidInput
        );
        let swapped = [0usize, 2, 1, 3];
        assert_eq!(gd_facet_bound(s, swapped.as_ptr(), 4, 2, &mut bound), GdStatus::Ok);
        assert_eq!(bound, 4);
        assert_eq!(gd_facet_bound(s, ptr::null(), 0, 4, &mut bound), GdStatus::InvalidInput);
        gd_spectrum_free(s);
        gd_graph_free(g);

        gd_graph_free(ptr::null_mut());
        gd_spectrum_free(ptr::null_mut());
        gd_string_free(ptr::null_mut());
        assert_eq!(gd_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn json_round_trip() {
    unsafe {
        let g = path_graph();
        let mut out = ptr::null_mut();
        assert_eq!(gd_graph_to_json(g, &mut out), GdStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(gd_graph_from_json(out, &mut again), GdStatus::Ok);
        assert_eq!(gd_graph_edge_count(again), 2);
        gd_string_free(out);
        gd_graph_free(again);
        gd_graph_free(g);
        let v = CStr::from_ptr(gd_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/graphdesign.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct GdGraph GdGraph;",
        "typedef struct GdSpectrum GdSpectrum;",
        "GD_STATUS_NOT_A_DESIGN = 3",
        "gd_graph_new(",
        "gd_spectrum_new(",
        "gd_design_verify(",
        "gd_design_enumerate_json(",
        "gd_last_error(void)",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

// Compiles a C program against the generated header (C99 and C++).
#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = tempfile_dir();
    let src = dir.join("use_api.c");
    std::fs::write(
        &src,
        r#"#include "graphdesign.h"
int use_api(void) {
    GdGraph *g = NULL;
    size_t from[1] = {0}, to[1] = {1};
    double w[1] = {1.0};
    if (gd_graph_new(2, from, to, w, 1, &g) != GD_STATUS_OK) return 1;
    GdSpectrum *s = NULL;
    GdStatus st = gd_spectrum_new(g, 1e-8, &s);
    gd_spectrum_free(s);
    gd_graph_free(g);
    return st == GD_STATUS_OK ? 0 : (int)st;
}
"#,
    )
    .unwrap();
    let include = header().parent().unwrap().to_path_buf();
    for (compiler, extra) in [("cc", vec!["-std=c99"]), ("c++", vec!["-x", "c++", "-std=c++11"])] {
        let status = Command::new(compiler)
            .args(&extra)
            .args(["-Wall", "-Werror", "-c", "-o"])
            .arg(dir.join(format!("use_api_{compiler}.o")))
            .arg("-I")
            .arg(&include)
            .arg(&src)
            .status()
            .unwrap_or_else(|e| panic!("{compiler} not runnable: {e}"));
        assert!(status.success(), "{compiler} rejected the header");
    }
}

fn tempfile_dir() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("ffi_header_check");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

// Links a small C program against the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libgraphdesign_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "graphdesign.h"
int main(void) {
    GdGraph *g = NULL;
    if (gd_barbell_new(3, 1.0, &g) != GD_STATUS_OK) return 10;
    GdSpectrum *s = NULL;
    if (gd_spectrum_new(g, 1e-8, &s) != GD_STATUS_OK) return 11;
    if (gd_spectrum_space_count(s) != 4) return 12;
    size_t order[4] = {0, 2, 1, 3};
    char *json = NULL;
    if (gd_design_enumerate_json(s, order, 4, 2, 0, &json) != GD_STATUS_OK) return 13;
    int ok = strstr(json, "\"facet_bound\": 4") != NULL;
    gd_string_free(json);
    double a[6] = {1, 1, 1, 0, 0, 0};
    double residual = -1;
    if (gd_design_verify(s, order, 4, 2, a, 6, 1e-8, &residual) != GD_STATUS_OK) return 14;
    double b[6] = {1, 0, 0, 0, 0, 0};
    if (gd_design_verify(s, order, 4, 2, b, 6, 1e-8, &residual) != GD_STATUS_NOT_A_DESIGN) return 15;
    if (gd_last_error() == NULL) return 16;
    gd_spectrum_free(s);
    gd_graph_free(g);
    printf("ok\n");
    return ok ? 0 : 17;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main_static");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("cc not runnable");
    assert!(status.success(), "linking against the static library failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
