use std::ffi::{CStr, CString};
use std::ptr;

use reslie_ffi::*;
use serde_json::Value;

const HEIS: &str = "restricted-lie-algebra v1\nfield 2\ndim 3\nbasis x y z\nbracket x y : 0 0 1\n";
const AB: &str = "restricted-lie-algebra v1\nfield 2\ndim 3\nbasis a b c\npmap a : 0 1 0\n";

fn parsed(text: &str) -> *mut ReslieAlgebra {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { reslie_parse(c.as_ptr(), &mut out) }, ReslieStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(reslie_last_error()) }.to_str().unwrap().to_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { reslie_string_free(s) };
    text
}

fn json_of(f: impl FnOnce(*mut *mut std::ffi::c_char) -> ReslieStatus) -> Value {
    let mut out = ptr::null_mut();
    assert_eq!(f(&mut out), ReslieStatus::Ok, "{}", last_error());
    serde_json::from_str(&take(out)).unwrap()
}

#[test]
fn scalar_queries() {
    let a = parsed(HEIS);
    let (mut dim, mut nil, mut class) = (0usize, false, 0usize);
    unsafe {
        assert_eq!(reslie_dim(a, &mut dim), ReslieStatus::Ok);
        assert_eq!(reslie_is_p_nilpotent(a, &mut nil), ReslieStatus::Ok);
        assert_eq!(reslie_nilpotence_class(a, &mut class), ReslieStatus::Ok);
        reslie_free(a);
    }
    assert_eq!((dim, nil, class), (3, true, 2));
    assert_eq!(last_error(), "");
}

#[test]
fn serialize_round_trips() {
    let a = parsed(HEIS);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { reslie_serialize(a, &mut out) }, ReslieStatus::Ok);
    let text = take(out);
    let b = parsed(&text);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { reslie_serialize(b, &mut again) }, ReslieStatus::Ok);
    assert_eq!(take(again), text);
    unsafe {
        reslie_free(a);
        reslie_free(b);
    }
}

#[test]
fn json_outputs() {
    let h = parsed(HEIS);
    let ab = parsed(AB);
    let fp = json_of(|o| unsafe { reslie_fingerprint_json(h, o) });
    assert_eq!(fp["omega_dims"], serde_json::json!([7, 5, 3, 1, 0]));
    let inv = json_of(|o| unsafe { reslie_invariants_json(h, 0, o) });
    assert_eq!(inv["is_p_nilpotent"], Value::Bool(true));
    let dec = json_of(|o| unsafe { reslie_decompose_json(ab, o) });
    assert!(dec["checks"].as_array().unwrap().iter().all(|c| c["passed"] == Value::Bool(true)));
    let cmp = json_of(|o| unsafe { reslie_compare_json(h, h, 0, o) });
    assert_eq!(cmp["candidate_violations"], 0);
    unsafe {
        reslie_free(h);
        reslie_free(ab);
    }
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("restricted-lie-algebra v1\nfield 2\ndim 2\nbasis x\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { reslie_parse(bad.as_ptr(), &mut out) }, ReslieStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("line 4"), "{}", last_error());

    let invalid =
        CString::new("restricted-lie-algebra v1\nfield 2\ndim 3\nbasis x y z\nbracket x y : 0 0 1\npmap z : 1 0 0\n")
            .unwrap();
    assert_eq!(unsafe { reslie_parse(invalid.as_ptr(), &mut out) }, ReslieStatus::Validation);

    let big = CString::new("restricted-lie-algebra v1\nfield 2\ndim 65\n").unwrap();
    assert_eq!(unsafe { reslie_parse(big.as_ptr(), &mut out) }, ReslieStatus::SizeLimit);

    assert_eq!(unsafe { reslie_parse(ptr::null(), &mut out) }, ReslieStatus::NullPointer);
    let mut dim = 0;
    assert_eq!(unsafe { reslie_dim(ptr::null(), &mut dim) }, ReslieStatus::NullPointer);
    let h = parsed(HEIS);
    assert_eq!(unsafe { reslie_dim(h, ptr::null_mut()) }, ReslieStatus::NullPointer);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { reslie_decompose_json(h, &mut s) }, ReslieStatus::Unsupported);
    let f3 = parsed("restricted-lie-algebra v1\nfield 3\ndim 1\nbasis t\n");
    assert_eq!(unsafe { reslie_compare_json(h, f3, 0, &mut s) }, ReslieStatus::FieldMismatch);
    unsafe {
        reslie_free(h);
        reslie_free(f3);
        reslie_free(ptr::null_mut());
        reslie_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(reslie_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/reslie.h")).unwrap();
    for name in [
        "reslie_parse",
        "reslie_free",
        "reslie_string_free",
        "reslie_last_error",
        "reslie_dim",
        "reslie_is_p_nilpotent",
        "reslie_nilpotence_class",
        "reslie_serialize",
        "reslie_invariants_json",
        "reslie_fingerprint_json",
        "reslie_decompose_json",
        "reslie_compare_json",
        "typedef struct ReslieAlgebra ReslieAlgebra",
        "RESLIE_STATUS_SIZE_LIMIT = 5",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
