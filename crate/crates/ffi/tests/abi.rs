use std::ffi::{CStr, CString};
use std::ptr;

use harmonic_locus_ffi::*;

fn parse(s: &str) -> *mut HlPartition {
    let text = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hl_partition_parse(text.as_ptr(), &mut out) }, HlStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take(s: *mut std::ffi::c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { hl_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = hl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(hl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn partition_roundtrip() {
    let p = parse("4,3,1");
    assert_eq!(unsafe { hl_partition_size(p) }, 8);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hl_partition_to_string(p, &mut s) }, HlStatus::Ok);
    assert_eq!(take(s), "4,3,1");
    unsafe { hl_partition_free(p) };

    let parts = [3usize, 1];
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { hl_partition_from_parts(parts.as_ptr(), 2, &mut q) },
        HlStatus::Ok
    );
    assert_eq!(unsafe { hl_partition_size(q) }, 4);
    unsafe { hl_partition_free(q) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("1,3").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { hl_partition_parse(bad.as_ptr(), &mut out) },
        HlStatus::InputError
    );
    assert!(out.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(
        unsafe { hl_partition_parse(ptr::null(), &mut out) },
        HlStatus::NullPointer
    );
    assert_eq!(unsafe { hl_partition_size(ptr::null()) }, 0);
    assert_eq!(unsafe { hl_wilson_verify(ptr::null()) }, HlStatus::NullPointer);

    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { hl_partition_parse(invalid.as_ptr().cast(), &mut out) },
        HlStatus::InvalidUtf8
    );

    // success clears the message
    unsafe { hl_partition_free(parse("2")) };
    assert!(hl_last_error_message().is_null());

    // freeing null is a no-op
    unsafe {
        hl_partition_free(ptr::null_mut());
        hl_string_free(ptr::null_mut());
    }
}

#[test]
fn bad_config_is_rejected() {
    let p = parse("2,1");
    let mut cfg = hl_numerics_default();
    cfg.root_tol = -1.0;
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hl_roots_json(p, &cfg, &mut s) }, HlStatus::InputError);
    unsafe { hl_partition_free(p) };
}

#[test]
fn wronskian_json() {
    let p = parse("2");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hl_wronskian_json(p, true, &mut s) }, HlStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["coefficients"], serde_json::json!(["-1/2", "0/1", "1/1"]));
    unsafe { hl_partition_free(p) };
}

#[test]
fn roots_and_inversion() {
    let p = parse("3,1");
    let cfg = hl_numerics_default();
    let mut len = 0usize;
    assert_eq!(
        unsafe { hl_roots(p, &cfg, ptr::null_mut(), ptr::null_mut(), 0, &mut len) },
        HlStatus::InputError
    );
    assert_eq!(len, 4);
    let mut re = vec![0.0; len];
    let mut im = vec![0.0; len];
    assert_eq!(
        unsafe { hl_roots(p, &cfg, re.as_mut_ptr(), im.as_mut_ptr(), len, &mut len) },
        HlStatus::Ok
    );
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { hl_invert_roots(re.as_ptr(), im.as_ptr(), len, ptr::null(), &mut back) },
        HlStatus::Ok
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hl_partition_to_string(back, &mut s) }, HlStatus::Ok);
    assert_eq!(take(s), "3,1");

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hl_roots_json(p, ptr::null(), &mut s) }, HlStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["degree"], 4);
    unsafe {
        hl_partition_free(back);
        hl_partition_free(p);
    }
}

#[test]
fn multiple_roots_are_not_invertible() {
    // W_(2,1) = x^3, a triple pole at the origin
    let p = parse("2,1");
    let mut len = 0usize;
    let mut re = [0.0; 3];
    let mut im = [0.0; 3];
    assert_eq!(
        unsafe { hl_roots(p, ptr::null(), re.as_mut_ptr(), im.as_mut_ptr(), 3, &mut len) },
        HlStatus::Ok
    );
    assert_eq!(len, 3);
    let mut back = ptr::null_mut();
    let status = unsafe { hl_invert_roots(re.as_ptr(), im.as_ptr(), 3, ptr::null(), &mut back) };
    assert_ne!(status, HlStatus::Ok);
    assert!(back.is_null());
    unsafe { hl_partition_free(p) };
}

#[test]
fn character_and_spectrum() {
    let p = parse("2,2");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hl_character_json(p, &mut s) }, HlStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["character"], v["legs"]);
    assert_eq!(v["character"], v["hooks"]);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hl_spectrum_json(p, ptr::null(), &mut s) }, HlStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert!(v.get("moser").is_some() && v.get("hessian").is_some());

    assert_eq!(unsafe { hl_wilson_verify(p) }, HlStatus::Ok);
    unsafe { hl_partition_free(p) };
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/harmonic_locus.h")).unwrap();
    for name in [
        "hl_partition_parse",
        "hl_string_free",
        "hl_last_error_message",
        "HL_STATUS_NO_CONVERGENCE",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
    assert!(h.contains("typedef struct HlPartition HlPartition;"));
}
