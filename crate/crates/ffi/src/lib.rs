//! C interface to `reslie`.
//!
//! Algebras are opaque handles created by [`reslie_parse`] and released by
//! [`reslie_free`]. Every fallible function returns a [`ReslieStatus`]; on
//! failure [`reslie_last_error`] describes the error for the calling thread.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`reslie_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use reslie::workbench::analysis::{self, AnalysisOptions};
use reslie::workbench::report::object;
use reslie::workbench::{parse, serialize, AlgebraFile};
use reslie::Error;
use serde_json::{json, Value};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReslieStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    SizeLimit = 5,
    FieldMismatch = 6,
    Unsupported = 7,
    Panic = 8,
}

/// A parsed, validated restricted Lie algebra.
pub struct ReslieAlgebra {
    file: AlgebraFile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ReslieStatus {
    match e {
        Error::Parse { .. } | Error::Malformed(_) | Error::InvalidField(_) => ReslieStatus::Parse,
        Error::Validation(_) => ReslieStatus::Validation,
        Error::SizeLimit { .. } => ReslieStatus::SizeLimit,
        Error::FieldMismatch => ReslieStatus::FieldMismatch,
        _ => ReslieStatus::Unsupported,
    }
}

struct Failure(ReslieStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ReslieStatus::NullPointer, format!("{what} is null"))
}

/// Run `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ReslieStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            ReslieStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".into());
            set_error(&msg);
            ReslieStatus::Panic
        }
    }
}

unsafe fn algebra<'a>(p: *const ReslieAlgebra) -> Result<&'a ReslieAlgebra, Failure> {
    p.as_ref().ok_or_else(|| null("algebra"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(ReslieStatus::Unsupported, "output contains NUL".into()))?;
    put(out, c.into_raw())
}

fn checks_json(checks: &[reslie::workbench::Check]) -> Value {
    json!(checks)
}

/// Parse and validate an algebra from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_parse(text: *const c_char, out: *mut *mut ReslieAlgebra) -> ReslieStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| Failure(ReslieStatus::InvalidUtf8, e.to_string()))?;
        let file = parse(s)?;
        put(out, Box::into_raw(Box::new(ReslieAlgebra { file })))
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `a` must come from [`reslie_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn reslie_free(a: *mut ReslieAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn reslie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn reslie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn reslie_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_dim(a: *const ReslieAlgebra, out: *mut usize) -> ReslieStatus {
    guard(|| put(out, algebra(a)?.file.algebra.dim()))
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_is_p_nilpotent(a: *const ReslieAlgebra, out: *mut bool) -> ReslieStatus {
    guard(|| put(out, algebra(a)?.file.algebra.is_p_nilpotent()))
}

/// Nilpotence class; fails with `Unsupported` for non-nilpotent algebras.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_nilpotence_class(a: *const ReslieAlgebra, out: *mut usize) -> ReslieStatus {
    guard(|| put(out, algebra(a)?.file.algebra.nilpotence_class()?))
}

/// Canonical text form of the algebra.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_serialize(a: *const ReslieAlgebra, out: *mut *mut c_char) -> ReslieStatus {
    guard(|| put_string(out, serialize(&algebra(a)?.file)))
}

/// Invariants as JSON. `max_omega_power` of 0 means no limit.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_invariants_json(
    a: *const ReslieAlgebra,
    max_omega_power: usize,
    out: *mut *mut c_char,
) -> ReslieStatus {
    guard(|| {
        let opts =
            AnalysisOptions { max_omega_power: (max_omega_power > 0).then_some(max_omega_power), ..Default::default() };
        let v = analysis::invariants(&algebra(a)?.file.algebra, &opts)?;
        put_string(out, v.to_string())
    })
}

/// Fingerprint of `u(L)` as JSON; requires a p-nilpotent algebra.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_fingerprint_json(a: *const ReslieAlgebra, out: *mut *mut c_char) -> ReslieStatus {
    guard(|| {
        let fp = reslie::env::fingerprint(&algebra(a)?.file.algebra)?;
        let text = serde_json::to_string(&fp).map_err(|e| Failure(ReslieStatus::Unsupported, e.to_string()))?;
        put_string(out, text)
    })
}

/// Cyclic decomposition and its checks as JSON; requires an abelian algebra.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_decompose_json(a: *const ReslieAlgebra, out: *mut *mut c_char) -> ReslieStatus {
    guard(|| {
        let (body, checks) = analysis::decompose(&algebra(a)?.file.algebra)?;
        put_string(out, object(vec![("decomposition", body), ("checks", checks_json(&checks))]).to_string())
    })
}

/// Comparison of two algebras over the same field as JSON. `iso_budget` of
/// 0 selects the default node budget.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reslie_compare_json(
    a: *const ReslieAlgebra,
    b: *const ReslieAlgebra,
    iso_budget: u64,
    out: *mut *mut c_char,
) -> ReslieStatus {
    guard(|| {
        let mut opts = AnalysisOptions::default();
        if iso_budget > 0 {
            opts.iso.budget = iso_budget;
        }
        let (body, checks, violations) =
            analysis::compare(&algebra(a)?.file.algebra, &algebra(b)?.file.algebra, &opts)?;
        let v = object(vec![
            ("comparison", body),
            ("checks", checks_json(&checks)),
            ("candidate_violations", json!(violations)),
        ]);
        put_string(out, v.to_string())
    })
}
