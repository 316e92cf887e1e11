use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use grover_exact_ffi::*;

fn last_error() -> String {
    let p = ge_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn construct_verify_identify() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ge_scheme_construct(7, &mut s), GeStatus::Ok);
        assert_eq!((ge_scheme_n(s), ge_scheme_copies(s)), (7, 5));
        let (mut valid, mut failing) = (false, 99);
        assert_eq!(ge_scheme_verify(s, &mut valid, &mut failing), GeStatus::Ok);
        assert!(valid);
        assert_eq!(failing, 0);
        for k in 1..=7 {
            let (mut id, mut q) = (0, 0);
            assert_eq!(ge_scheme_identify(s, k, &mut id, &mut q), GeStatus::Ok);
            assert_eq!((id, q), (k, 5));
        }
        let (mut id, mut q) = (0, 0);
        assert_eq!(
            ge_scheme_identify(s, 8, &mut id, &mut q),
            GeStatus::InvalidArgument
        );
        ge_scheme_free(s);
    }
}

#[test]
fn builtins_and_json_round_trip() {
    unsafe {
        let name = CString::new("n6-entangled").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(ge_scheme_builtin(name.as_ptr(), &mut s), GeStatus::Ok);
        assert_eq!(ge_scheme_copies(s), 2);

        let mut text = ptr::null_mut();
        assert_eq!(ge_scheme_to_json(s, &mut text), GeStatus::Ok);
        let json = CStr::from_ptr(text).to_owned();
        assert!(json.to_str().unwrap().contains("\"kind\":\"entangled\""));

        let mut back = ptr::null_mut();
        assert_eq!(ge_scheme_from_json(json.as_ptr(), &mut back), GeStatus::Ok);
        let mut valid = false;
        assert_eq!(
            ge_scheme_verify(back, &mut valid, ptr::null_mut()),
            GeStatus::Ok
        );
        assert!(valid);

        ge_string_free(text);
        ge_scheme_free(back);
        ge_scheme_free(s);

        let bad = CString::new("n7-nothing").unwrap();
        assert_eq!(
            ge_scheme_builtin(bad.as_ptr(), &mut s),
            GeStatus::InvalidArgument
        );
        assert!(last_error().contains("n7-nothing"));
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ge_scheme_construct(2, &mut s), GeStatus::Indistinguishable);
        assert!(last_error().contains("global phase"));
        assert_eq!(
            ge_scheme_construct(3, ptr::null_mut()),
            GeStatus::NullPointer
        );
        assert_eq!(
            ge_scheme_from_json(ptr::null(), &mut s),
            GeStatus::NullPointer
        );

        let garbage = CString::new("{ nope").unwrap();
        assert_eq!(
            ge_scheme_from_json(garbage.as_ptr(), &mut s),
            GeStatus::Parse
        );
        let unnormalized = CString::new(
            r#"{"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"1/3"}]}"#,
        )
        .unwrap();
        assert_eq!(
            ge_scheme_from_json(unnormalized.as_ptr(), &mut s),
            GeStatus::InvalidScheme
        );
        let bytes = [0xffu8, 0xfe, 0];
        assert_eq!(
            ge_scheme_from_json(bytes.as_ptr().cast(), &mut s),
            GeStatus::InvalidUtf8
        );

        let mut t = 0;
        assert_eq!(ge_min_product_cover(10, &mut t), GeStatus::ResourceCap);
        assert_eq!(ge_scheme_n(ptr::null()), 0);
        ge_scheme_free(ptr::null_mut());
        ge_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_scheme_reports_failures() {
    unsafe {
        let doc =
            CString::new(r#"{"kind":"product","n":3,"blocks":[{"type":"pair","i":1,"j":2}]}"#)
                .unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(ge_scheme_from_json(doc.as_ptr(), &mut s), GeStatus::Ok);
        let (mut valid, mut failing) = (true, 0);
        assert_eq!(ge_scheme_verify(s, &mut valid, &mut failing), GeStatus::Ok);
        assert!(!valid);
        assert_eq!(failing, 1);
        let (mut id, mut q) = (0, 0);
        assert_eq!(
            ge_scheme_identify(s, 1, &mut id, &mut q),
            GeStatus::Ambiguous
        );
        ge_scheme_free(s);
    }
}

#[test]
fn bounds_and_search() {
    unsafe {
        assert_eq!(ge_general_lower_bound(100), 45);
        let mut size = 0;
        assert_eq!(ge_construction_size(100, &mut size), GeStatus::Ok);
        assert_eq!(size, 67);
        let mut t = 0;
        assert_eq!(ge_min_product_cover(6, &mut t), GeStatus::Ok);
        assert_eq!(t, 3);

        let mut feasible = true;
        let mut w = ptr::null_mut();
        assert_eq!(
            ge_entangled_feasible(6, 1, &mut feasible, &mut w),
            GeStatus::Ok
        );
        assert!(!feasible && w.is_null());
        assert_eq!(
            ge_entangled_feasible(6, 2, &mut feasible, &mut w),
            GeStatus::Ok
        );
        assert!(feasible && !w.is_null());
        let mut valid = false;
        assert_eq!(
            ge_scheme_verify(w, &mut valid, ptr::null_mut()),
            GeStatus::Ok
        );
        assert!(valid);
        ge_scheme_free(w);
        assert_eq!(
            ge_entangled_feasible(5, 2, &mut feasible, ptr::null_mut()),
            GeStatus::Ok
        );
        assert!(feasible);
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "grover_exact.h"

int main(void) {
    GeScheme *s = NULL;
    if (ge_scheme_builtin("n5-product", &s) != GE_STATUS_OK) return 1;
    size_t id = 0, q = 0;
    if (ge_scheme_identify(s, 3, &id, &q) != GE_STATUS_OK) return 2;
    char *json = NULL;
    if (ge_scheme_to_json(s, &json) != GE_STATUS_OK) return 3;
    printf("%zu %zu %s\n", id, q, json);
    ge_string_free(json);
    ge_scheme_free(s);
    if (ge_scheme_construct(2, &s) != GE_STATUS_INDISTINGUISHABLE) return 4;
    return ge_last_error_message() == NULL ? 5 : 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    assert!(include.join("grover_exact.h").exists());
    // tests/ binaries live in target/<profile>/deps; the static library one level up
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libgrover_exact_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("3 2 {\"blocks\":"), "{stdout}");
}
