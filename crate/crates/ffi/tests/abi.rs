use std::ffi::{c_char, CStr, CString};
use std::ptr;

use semigold_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { sg_string_free(p) };
    s
}

fn last_error() -> String {
    let p = sg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(text: &str, ring: &str) -> *mut SgPoly {
    let mut p = ptr::null_mut();
    let st = unsafe { sg_poly_parse(c(text).as_ptr(), c(ring).as_ptr(), ptr::null(), &mut p) };
    assert_eq!(st, SgStatus::Ok, "{}", last_error());
    p
}

#[test]
fn decompose_round_trip() {
    let p = parse("2x + 3", "n0");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_poly_to_string(p, &mut out) }, SgStatus::Ok);
    assert_eq!(unsafe { take(out) }, "2x + 3");
    assert_eq!(
        unsafe { sg_decompose_json(p, ptr::null(), &mut out) },
        SgStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["kind"], "SumOfTwo");
    unsafe { sg_poly_free(p) };
}

#[test]
fn named_variables_and_config() {
    let mut p = ptr::null_mut();
    let st = unsafe {
        sg_poly_parse(
            c("s + t + 3st + 2").as_ptr(),
            ptr::null(),
            c("s,t").as_ptr(),
            &mut p,
        )
    };
    assert_eq!(st, SgStatus::Ok);
    let cfg = sg_config_new();
    assert_eq!(unsafe { sg_config_set_budget(cfg, 10_000) }, SgStatus::Ok);
    assert_eq!(unsafe { sg_config_set_check_order(cfg, 50) }, SgStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_certify_json(p, cfg, &mut out) }, SgStatus::Ok);
    assert!(unsafe { take(out) }.contains("Irreducible"));
    unsafe {
        sg_config_free(cfg);
        sg_poly_free(p);
    }
}

#[test]
fn errors_are_reported() {
    let mut p = ptr::null_mut();
    let st = unsafe { sg_poly_parse(c("x +").as_ptr(), ptr::null(), ptr::null(), &mut p) };
    assert_eq!(st, SgStatus::Parse);
    assert!(p.is_null());
    assert!(!last_error().is_empty());

    let st = unsafe { sg_poly_parse(ptr::null(), ptr::null(), ptr::null(), &mut p) };
    assert_eq!(st, SgStatus::NullArgument);
    assert!(last_error().contains("text"));

    let st = unsafe { sg_poly_parse(c("x").as_ptr(), c("z9").as_ptr(), ptr::null(), &mut p) };
    assert_ne!(st, SgStatus::Ok);

    let bad = [0xffu8, 0];
    let st = unsafe { sg_poly_parse(bad.as_ptr().cast(), ptr::null(), ptr::null(), &mut p) };
    assert_eq!(st, SgStatus::InvalidUtf8);

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { sg_decompose_json(ptr::null(), ptr::null(), &mut out) },
        SgStatus::NullArgument
    );
    assert_eq!(
        unsafe { sg_config_set_budget(ptr::null_mut(), 1) },
        SgStatus::NullArgument
    );

    let q = parse("x + 1", "n0");
    assert_eq!(
        unsafe { sg_decompose_json(q, ptr::null(), ptr::null_mut()) },
        SgStatus::NullArgument
    );
    unsafe {
        sg_poly_free(q);
        sg_poly_free(ptr::null_mut());
        sg_string_free(ptr::null_mut());
    }
}

#[test]
fn series_calls() {
    let mut s = ptr::null_mut();
    let text = c("tail: const(start=0, d=1, coeffs=[1])");
    assert_eq!(
        unsafe { sg_series_parse(text.as_ptr(), ptr::null(), &mut s) },
        SgStatus::Ok
    );

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { sg_series_truncate(s, 3, &mut p) }, SgStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_poly_to_string(p, &mut out) }, SgStatus::Ok);
    assert_eq!(unsafe { take(out) }, "x^3 + x^2 + x + 1");

    assert_eq!(
        unsafe { sg_series_decompose_json(s, ptr::null(), 20, &mut out) },
        SgStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["case"], "EqualGaps");

    assert_eq!(
        unsafe { sg_series_family_json(s, c("ap:2:2").as_ptr(), ptr::null(), 20, &mut out) },
        SgStatus::Ok
    );
    unsafe { take(out) };
    let st = unsafe { sg_series_family_json(s, c("ap:0:1").as_ptr(), ptr::null(), 20, &mut out) };
    assert_ne!(st, SgStatus::Ok);

    let mut t = ptr::null_mut();
    let st = unsafe { sg_series_parse(text.as_ptr(), c("multi:2").as_ptr(), &mut t) };
    assert_eq!(st, SgStatus::NotApplicable);
    assert!(t.is_null());
    unsafe {
        sg_poly_free(p);
        sg_series_free(s);
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(sg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
