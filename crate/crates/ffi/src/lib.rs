//! C ABI for the verification engine: opaque engine handles built from
//! configuration text, status codes, and string results the caller frees.
//!
//! Conventions: every function returns a `QdfStatus`; output parameters are
//! written only on `Ok`. String outputs are heap-allocated and must be
//! released with `qdf_string_free`. A thread-local message with the details
//! of the last failure is available through `qdf_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qdeform::cohomology::{check_class_equals_operator_cocycle, check_invariance, CohomologyClass};
use qdeform::config::{parse_config, Engine};
use qdeform::crossed::parse_element;
use qdeform::deform::{check_associativity, hecke_relations, StarProduct};
use qdeform::findim::{
    center_dimension, check_hminus1_module_algebra, findim_star, radical_dimension, taft_fixture,
};
use qdeform::group::{cocycle_check, is_symmetric};
use qdeform::hopf::{hopf_axiom_check, hopf_ideal_check, udf_check, HopfAlgebra};
use qdeform::qcalc::QContext;
use qdeform::scalar::ScalarField;

/// Opaque verification context: algebra, cocycle, and deformation factors.
pub struct QdfEngine {
    inner: Engine,
}

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdfStatus {
    Ok = 0,
    /// A verification sweep found a counterexample (see `qdf_last_error`).
    CheckFailed = 1,
    /// Configuration or input text failed to parse or validate.
    InvalidInput = 2,
    /// A required pointer argument was null.
    NullPointer = 3,
    /// Input text was not valid UTF-8.
    InvalidUtf8 = 4,
    /// An internal invariant failed.
    Internal = 5,
}

/// Identity families checkable on an engine handle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdfCheck {
    /// Two-cocycle identity and normalization.
    Cocycle = 0,
    /// Cocycle symmetry (coboundary test for abelian groups).
    CocycleSymmetric = 1,
    /// Generator relations plus the module-algebra law for every factor.
    ModuleAlgebra = 2,
    /// The two skew-derivation rules for every factor.
    SkewDerivations = 3,
    /// Pairwise factor compatibility (commuting or inverse-pair).
    FactorCompatibility = 4,
    /// Star-product associativity over all group parts.
    Associativity = 5,
    /// Invariance of each factor's degree-two class.
    ClassInvariance = 6,
    /// Each factor's class agrees with its operator cocycle.
    ClassMatchesOperator = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn clear_error() {
    LAST_ERROR.with(|e| e.borrow_mut().clear());
}

/// Copies the last error message into `buf` (NUL-terminated, truncated to
/// `cap` bytes) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must point to `cap` writable bytes, or be null (then only the
/// length is returned).
#[no_mangle]
pub unsafe extern "C" fn qdf_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

fn guard<F: FnOnce() -> QdfStatus>(f: F) -> QdfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic in engine".to_string());
            set_error(msg);
            QdfStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, QdfStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(QdfStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        QdfStatus::InvalidUtf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> QdfStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            QdfStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte");
            QdfStatus::Internal
        }
    }
}

/// Builds an engine from configuration text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdf_engine_from_config_text(
    text: *const c_char,
    out: *mut *mut QdfEngine,
) -> QdfStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QdfStatus::NullPointer;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let cfg = match parse_config(text) {
            Ok(c) => c,
            Err(e) => {
                set_error(e.to_string());
                return QdfStatus::InvalidInput;
            }
        };
        match cfg.build() {
            Ok(engine) => {
                clear_error();
                *out = Box::into_raw(Box::new(QdfEngine { inner: engine }));
                QdfStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                QdfStatus::InvalidInput
            }
        }
    })
}

/// Releases an engine handle. Null is ignored.
///
/// # Safety
/// `engine` must have come from `qdf_engine_from_config_text` and not be
/// freed twice.
#[no_mangle]
pub unsafe extern "C" fn qdf_engine_free(engine: *mut QdfEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

unsafe fn engine_ref<'a>(ptr: *const QdfEngine) -> Result<&'a Engine, QdfStatus> {
    if ptr.is_null() {
        set_error("null engine handle");
        return Err(QdfStatus::NullPointer);
    }
    Ok(&(*ptr).inner)
}

/// Runs one identity family at the given sweep degree. On `Ok` the check
/// passed; on `CheckFailed` the counterexample is in `qdf_last_error`.
///
/// # Safety
/// `engine` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdf_engine_check(
    engine: *const QdfEngine,
    check: QdfCheck,
    max_degree: u32,
) -> QdfStatus {
    guard(|| {
        let engine = match engine_ref(engine) {
            Ok(e) => e,
            Err(s) => return s,
        };
        let result = run_check(engine, check, max_degree);
        match result {
            Ok(()) => {
                clear_error();
                QdfStatus::Ok
            }
            Err(msg) => {
                set_error(msg);
                QdfStatus::CheckFailed
            }
        }
    })
}

fn run_check(engine: &Engine, check: QdfCheck, max_degree: u32) -> Result<(), String> {
    let group = engine.algebra.group();
    let alpha = engine.algebra.cocycle();
    match check {
        QdfCheck::Cocycle => cocycle_check(alpha, group).map_err(|c| c.to_string()),
        QdfCheck::CocycleSymmetric => is_symmetric(alpha, group).map_err(|c| c.to_string()),
        QdfCheck::ModuleAlgebra => {
            for f in &engine.factors {
                qdeform::action::check_module_algebra(f, max_degree)
                    .map_err(|c| c.to_string())?;
            }
            Ok(())
        }
        QdfCheck::SkewDerivations => {
            for f in &engine.factors {
                qdeform::action::check_skew_derivations(f, max_degree)
                    .map_err(|c| c.to_string())?;
            }
            Ok(())
        }
        QdfCheck::FactorCompatibility => {
            StarProduct::new(engine.factors.clone(), max_degree)
                .map(|_| ())
                .map_err(|e| e.to_string())
        }
        QdfCheck::Associativity => {
            let star = StarProduct::new(engine.factors.clone(), max_degree)
                .map_err(|e| e.to_string())?;
            check_associativity(&star, max_degree).map_err(|c| c.to_string())
        }
        QdfCheck::ClassInvariance => {
            for f in &engine.factors {
                let class = CohomologyClass::from_factor(f).map_err(|e| e.to_string())?;
                check_invariance(&class).map_err(|c| c.to_string())?;
            }
            Ok(())
        }
        QdfCheck::ClassMatchesOperator => {
            for f in &engine.factors {
                let class = CohomologyClass::from_factor(f).map_err(|e| e.to_string())?;
                check_class_equals_operator_cocycle(&class, f, max_degree)
                    .map_err(|c| c.to_string())?;
            }
            Ok(())
        }
    }
}

/// Star product of two elements in the literal grammar; writes the
/// t-polynomial rendered in the same grammar.
///
/// # Safety
/// `engine` must be live; `a`, `b` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qdf_engine_star(
    engine: *const QdfEngine,
    a: *const c_char,
    b: *const c_char,
    guard_degree: u32,
    out: *mut *mut c_char,
) -> QdfStatus {
    guard(|| {
        let engine = match engine_ref(engine) {
            Ok(e) => e,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return QdfStatus::NullPointer;
        }
        let (a, b) = match (read_str(a), read_str(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let pa = match parse_element(&engine.algebra, a) {
            Ok(e) => e,
            Err(e) => {
                set_error(format!("left factor: {e}"));
                return QdfStatus::InvalidInput;
            }
        };
        let pb = match parse_element(&engine.algebra, b) {
            Ok(e) => e,
            Err(e) => {
                set_error(format!("right factor: {e}"));
                return QdfStatus::InvalidInput;
            }
        };
        let star = match StarProduct::new(engine.factors.clone(), guard_degree) {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return QdfStatus::InvalidInput;
            }
        };
        clear_error();
        give_string(star.star(&pa, &pb).to_string(), out)
    })
}

/// Writes the Hecke-type relations, one per line.
///
/// # Safety
/// `engine` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qdf_engine_hecke(
    engine: *const QdfEngine,
    guard_degree: u32,
    out: *mut *mut c_char,
) -> QdfStatus {
    guard(|| {
        let engine = match engine_ref(engine) {
            Ok(e) => e,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return QdfStatus::NullPointer;
        }
        let star = match StarProduct::new(engine.factors.clone(), guard_degree) {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return QdfStatus::InvalidInput;
            }
        };
        let lines: Vec<String> = hecke_relations(&star)
            .into_iter()
            .map(|r| r.to_string())
            .collect();
        clear_error();
        give_string(lines.join("\n"), out)
    })
}

/// Universal-deformation-formula identities for the Hopf algebra at the
/// given root order; `ell = 0` means generic q truncated at `trunc`.
#[no_mangle]
pub extern "C" fn qdf_udf_check(ell: u64, trunc: u32) -> QdfStatus {
    guard(|| {
        let alg = if ell == 0 {
            HopfAlgebra::standard(QContext::new(ScalarField::generic().q_power(1).unwrap()))
        } else {
            let field = ScalarField::cyclotomic(ell);
            let q = if ell == 1 {
                field.one()
            } else {
                field.zeta().unwrap()
            };
            HopfAlgebra::standard(QContext::new(q))
        };
        if let Err(c) = hopf_axiom_check(&alg) {
            set_error(c.to_string());
            return QdfStatus::CheckFailed;
        }
        if alg.ctx().root_of_unity_order().is_some() {
            if let Err(c) = hopf_ideal_check(alg.ctx()) {
                set_error(c.to_string());
                return QdfStatus::CheckFailed;
            }
        }
        let trunc = if alg.ctx().root_of_unity_order().is_some() {
            None
        } else {
            Some(trunc)
        };
        match udf_check(&alg, trunc) {
            Ok(()) => {
                clear_error();
                QdfStatus::Ok
            }
            Err(c) => {
                set_error(c.to_string());
                QdfStatus::CheckFailed
            }
        }
    })
}

/// Radical and center dimensions of the quiver-algebra deformation at the
/// scalar `t0` (a rational literal such as "1", "-1", "1/2").
///
/// # Safety
/// `t0` must be NUL-terminated; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qdf_taft_dimensions(
    t0: *const c_char,
    radical_out: *mut u32,
    center_out: *mut u32,
) -> QdfStatus {
    guard(|| {
        if radical_out.is_null() || center_out.is_null() {
            set_error("null output pointer");
            return QdfStatus::NullPointer;
        }
        let t0 = match read_str(t0) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let field = ScalarField::cyclotomic(1);
        let value = match field.parse(t0) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return QdfStatus::InvalidInput;
            }
        };
        let (algebra, sigma, d1, d2) = taft_fixture(&field);
        if let Err(c) = check_hminus1_module_algebra(&algebra, &sigma, &d1, &d2) {
            set_error(c.to_string());
            return QdfStatus::CheckFailed;
        }
        match findim_star(&algebra, &d1, &d2, &value) {
            Ok(deformed) => {
                clear_error();
                *radical_out = radical_dimension(&deformed) as u32;
                *center_out = center_dimension(&deformed) as u32;
                QdfStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                QdfStatus::CheckFailed
            }
        }
    })
}

/// Runs the command-line interface against an argv-style argument vector;
/// returns the process exit status (0 pass, 1 verification failure, 2
/// usage/config error). The program name must be included as argv[0].
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn qdf_run_cli(argc: usize, argv: *const *const c_char) -> i32 {
    if argv.is_null() {
        return 2;
    }
    let mut args = Vec::with_capacity(argc);
    for i in 0..argc {
        let p = *argv.add(i);
        match read_str(p) {
            Ok(s) => args.push(s.to_string()),
            Err(_) => return 2,
        }
    }
    match catch_unwind(|| qdeform::cli::parse_args_and_run(args)) {
        Ok(code) => code,
        Err(_) => 2,
    }
}

/// Frees a string produced by this library. Null is ignored.
///
/// # Safety
/// `s` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qdf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static library version string; do not free.
#[no_mangle]
pub extern "C" fn qdf_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
