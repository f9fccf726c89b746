use std::ffi::{c_char, CStr, CString};
use std::ptr;

use koszulreg_ffi::*;
use serde_json::Value;

const CI: &str = r#"{"schema_version": 1, "ring": {"char": 32003, "vars": ["x", "y"]},
    "ideal": ["x^2", "y^3"], "theorem": "cor13"}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = kr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

/// Takes ownership of a returned string.
fn take(p: *mut c_char) -> Value {
    assert!(!p.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap();
    unsafe { kr_string_free(p) };
    v
}

struct Case(*mut KrCase);

impl Case {
    fn new(json: &str) -> Self {
        let h = unsafe { kr_case_from_json(cstr(json).as_ptr()) };
        assert!(!h.is_null(), "{}", last_error());
        Self(h)
    }
}

impl Drop for Case {
    fn drop(&mut self) {
        unsafe { kr_case_free(self.0) };
    }
}

#[test]
fn check_reports_tight_bound() {
    let c = Case::new(CI);
    let mut out = ptr::null_mut();
    let st = unsafe { kr_case_check(c.0, ptr::null(), -1, &mut out) };
    assert_eq!(st, KrStatus::Ok);
    let v = take(out);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["rows"][0]["slack"], 0);
}

#[test]
fn check_with_explicit_theorem_and_precondition() {
    let c = Case::new(CI);
    let mut out = ptr::null_mut();
    let st = unsafe { kr_case_check(c.0, cstr("cor43").as_ptr(), -1, &mut out) };
    assert_eq!(st, KrStatus::Ok);
    assert_eq!(take(out)["theorem"], "cor43");

    let line = Case::new(r#"{"schema_version": 1, "ring": {"char": 32003, "vars": ["x", "y"]}, "ideal": ["x"]}"#);
    let st = unsafe { kr_case_check(line.0, cstr("cor43").as_ptr(), -1, &mut out) };
    assert_eq!(st, KrStatus::Precondition);
    assert_eq!(take(out)["verdict"], "precondition_failed");
}

#[test]
fn compute_variants() {
    let c = Case::new(CI);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { kr_case_compute(c.0, cstr("reg").as_ptr(), -1, &mut out) },
        KrStatus::Ok
    );
    assert_eq!(take(out)["reg"], 3);
    assert_eq!(
        unsafe { kr_case_compute(c.0, cstr("hilbert").as_ptr(), 6, &mut out) },
        KrStatus::Ok
    );
    assert!(take(out).is_object());
    let st = unsafe { kr_case_compute(c.0, cstr("bogus").as_ptr(), -1, &mut out) };
    assert_eq!(st, KrStatus::Semantic);
    assert!(out.is_null());
    assert!(last_error().contains("bogus"));
}

#[test]
fn parse_failures_set_last_error() {
    assert!(unsafe { kr_case_from_json(cstr("{").as_ptr()) }.is_null());
    assert!(last_error().contains("case file"));
    let bad = r#"{"schema_version": 1, "ring": {"char": 32003, "vars": ["x"]}, "ideal": ["x^^2"]}"#;
    assert!(unsafe { kr_case_from_json(cstr(bad).as_ptr()) }.is_null());
    assert!(unsafe { kr_case_from_json(ptr::null()) }.is_null());
    assert!(last_error().contains("null"));
}

#[test]
fn null_arguments() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { kr_case_check(ptr::null(), ptr::null(), -1, &mut out) },
        KrStatus::NullPointer
    );
    let c = Case::new(CI);
    assert_eq!(
        unsafe { kr_case_compute(c.0, cstr("reg").as_ptr(), -1, ptr::null_mut()) },
        KrStatus::NullPointer
    );
    unsafe {
        kr_case_free(ptr::null_mut());
        kr_string_free(ptr::null_mut());
    }
}

#[test]
fn fuzz_summary_and_errors() {
    let mut out = ptr::null_mut();
    let st = unsafe { kr_fuzz(cstr("ci").as_ptr(), 3, 4, 2, 3, &mut out) };
    assert_eq!(st, KrStatus::Ok);
    let v = take(out);
    assert_eq!(v["summary"]["cases"], 4);
    assert_eq!(v["summary"]["violations"], 0);
    assert_eq!(
        unsafe { kr_fuzz(cstr("nope").as_ptr(), 0, 1, 2, 2, &mut out) },
        KrStatus::Semantic
    );
    assert_eq!(
        unsafe { kr_fuzz(cstr("ci").as_ptr(), 0, 1, 0, 2, &mut out) },
        KrStatus::Generation
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(kr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
