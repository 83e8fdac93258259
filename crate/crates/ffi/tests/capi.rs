//! Exercises the C ABI through the exported symbols, the way a foreign
//! binding would.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use qdeform_ffi::*;

const FIXTURE: &str = "\
[scalars]
root_order = 2
[space]
n = 3
[group]
orders = 2,2
[action]
matrix = 1,-1,0 / 0,1,-1
[cocycle]
bicharacter = 0,-1 / 0,0
[deformation]
factor = g(1,0); pair=1,2; q=z; s=1
factor = g(0,1); pair=2,3; q=z; s=1
factor = g(1,1); pair=3,1; q=z; s=1
[sweep]
max_degree = 2
";

fn make_engine(text: &str) -> *mut QdfEngine {
    let c = CString::new(text).unwrap();
    let mut out: *mut QdfEngine = ptr::null_mut();
    let status = unsafe { qdf_engine_from_config_text(c.as_ptr(), &mut out) };
    assert_eq!(status, QdfStatus::Ok, "{}", last_error());
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let mut buf = vec![0u8; 4096];
    let n = unsafe { qdf_last_error(buf.as_mut_ptr().cast::<c_char>(), buf.len()) };
    let n = n.min(buf.len() - 1);
    String::from_utf8_lossy(&buf[..n]).into_owned()
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_string_lossy().into_owned();
    unsafe { qdf_string_free(ptr) };
    s
}

#[test]
fn engine_lifecycle_and_checks() {
    let engine = make_engine(FIXTURE);
    for check in [
        QdfCheck::Cocycle,
        QdfCheck::ModuleAlgebra,
        QdfCheck::SkewDerivations,
        QdfCheck::FactorCompatibility,
        QdfCheck::Associativity,
        QdfCheck::ClassInvariance,
        QdfCheck::ClassMatchesOperator,
    ] {
        let status = unsafe { qdf_engine_check(engine, check, 2) };
        assert_eq!(status, QdfStatus::Ok, "{check:?}: {}", last_error());
    }
    // the fixture cocycle is intentionally asymmetric: the symmetry probe
    // reports a counterexample rather than passing
    let status = unsafe { qdf_engine_check(engine, QdfCheck::CocycleSymmetric, 2) };
    assert_eq!(status, QdfStatus::CheckFailed);
    assert!(last_error().contains("symmetry"));
    unsafe { qdf_engine_free(engine) };
}

#[test]
fn star_and_hecke_strings() {
    let engine = make_engine(FIXTURE);
    let a = CString::new("x1").unwrap();
    let b = CString::new("x2").unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { qdf_engine_star(engine, a.as_ptr(), b.as_ptr(), 2, &mut out) };
    assert_eq!(status, QdfStatus::Ok, "{}", last_error());
    assert_eq!(take_string(out), "x1 x2 + t^1 * (g(1,0))");
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { qdf_engine_hecke(engine, 2, &mut out) };
    assert_eq!(status, QdfStatus::Ok);
    let hecke = take_string(out);
    assert_eq!(hecke.lines().count(), 3, "{hecke}");
    unsafe { qdf_engine_free(engine) };
}

#[test]
fn invalid_inputs_are_reported() {
    // config rejected with diagnostics
    let c = CString::new("[scalars]\nroot_order = banana\n").unwrap();
    let mut out: *mut QdfEngine = ptr::null_mut();
    let status = unsafe { qdf_engine_from_config_text(c.as_ptr(), &mut out) };
    assert_eq!(status, QdfStatus::InvalidInput);
    assert!(last_error().contains("root_order"), "{}", last_error());
    assert!(out.is_null());
    // null arguments
    let status = unsafe { qdf_engine_from_config_text(ptr::null(), &mut out) };
    assert_eq!(status, QdfStatus::NullPointer);
    // bad element literal
    let engine = make_engine(FIXTURE);
    let bad = CString::new("x9").unwrap();
    let ok = CString::new("x1").unwrap();
    let mut s: *mut c_char = ptr::null_mut();
    let status = unsafe { qdf_engine_star(engine, bad.as_ptr(), ok.as_ptr(), 2, &mut s) };
    assert_eq!(status, QdfStatus::InvalidInput);
    assert!(last_error().contains("out of range"), "{}", last_error());
    unsafe { qdf_engine_free(engine) };
}

#[test]
fn udf_and_taft_entry_points() {
    assert_eq!(qdf_udf_check(2, 0), QdfStatus::Ok);
    assert_eq!(qdf_udf_check(3, 0), QdfStatus::Ok);
    assert_eq!(qdf_udf_check(0, 4), QdfStatus::Ok); // generic through t^4
    let t0 = CString::new("1").unwrap();
    let mut radical = u32::MAX;
    let mut center = u32::MAX;
    let status = unsafe { qdf_taft_dimensions(t0.as_ptr(), &mut radical, &mut center) };
    assert_eq!(status, QdfStatus::Ok);
    assert_eq!((radical, center), (0, 1));
    let t0 = CString::new("0").unwrap();
    let status = unsafe { qdf_taft_dimensions(t0.as_ptr(), &mut radical, &mut center) };
    assert_eq!(status, QdfStatus::Ok);
    assert_eq!(radical, 2);
}

#[test]
fn version_string_is_static() {
    let v = unsafe { CStr::from_ptr(qdf_version()) };
    assert!(!v.to_str().unwrap().is_empty());
}

#[test]
fn generated_header_exists_with_expected_symbols() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qdeform.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build script");
    for symbol in [
        "qdf_engine_from_config_text",
        "qdf_engine_free",
        "qdf_engine_check",
        "qdf_engine_star",
        "qdf_engine_hecke",
        "qdf_udf_check",
        "qdf_taft_dimensions",
        "qdf_last_error",
        "qdf_string_free",
        "QdfStatus",
        "QdfCheck",
        "QdfEngine",
    ] {
        assert!(text.contains(symbol), "missing {symbol} in header");
    }
}
