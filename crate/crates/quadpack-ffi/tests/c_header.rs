//! Compile a C program against the generated header and link it with the
//! static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Directory holding the libraries of the current build profile.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().expect("test executable path");
    exe.parent().and_then(Path::parent).expect("profile directory").to_path_buf()
}

#[test]
fn header_is_current_and_complete() {
    let h = std::fs::read_to_string(crate_dir().join("include/quadpack.h")).expect("generated header");
    for name in [
        "qp_polygon_new",
        "qp_polygon_from_json",
        "qp_polygon_free",
        "qp_run",
        "qp_result_vertices",
        "qp_result_quads",
        "qp_result_report_json",
        "qp_string_free",
        "qp_last_error",
        "QP_STATUS_GUARANTEE_VIOLATION = 3",
        "QP_METHOD_PACK_ONLY = 4",
        "typedef struct QpResult QpResult;",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    // Test builds leave the library in deps/; plain builds copy it up a level.
    let dir = profile_dir();
    let lib = [dir.join("deps/libquadpack_ffi.a"), dir.join("libquadpack_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .unwrap_or_else(|| panic!("static library not found under {}", dir.display()));
    let tmp = tempfile::tempdir().expect("temp dir");
    let exe = tmp.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let out = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("C compiler runs");
    assert!(out.status.success(), "compile failed:\n{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().expect("smoke binary runs");
    assert!(run.status.success(), "smoke failed:\n{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).ends_with("quads\n"));
}
