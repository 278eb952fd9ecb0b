use std::ffi::{CStr, CString};
use std::ptr;

use fusionkit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(fk_last_error()) }.to_string_lossy().into_owned()
}

fn ring(name: &str) -> *mut FkRing {
    let text = CString::new(fusionkit::corpus::lookup(name).unwrap()).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fk_ring_parse(text.as_ptr(), &mut out) }, FkStatus::Ok);
    out
}

fn metric(name: &str) -> *mut FkMetricGroup {
    let text = CString::new(fusionkit::corpus::lookup(name).unwrap()).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fk_metric_parse(text.as_ptr(), &mut out) }, FkStatus::Ok);
    out
}

#[test]
fn ising_ring() {
    let r = ring("ising");
    unsafe {
        assert_eq!(fk_ring_rank(r), 3);
        let mut dims = [0.0; 3];
        let mut total = 0;
        assert_eq!(fk_ring_fp_dims(r, 1e-9, dims.as_mut_ptr(), 3, &mut total), FkStatus::Ok);
        assert_eq!(total, 4);
        assert!((dims[2] - 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(fk_ring_fp_dims(r, 1e-9, dims.as_mut_ptr(), 2, &mut total), FkStatus::BufferTooSmall);
        let mut v = FkVerdict::default();
        assert_eq!(fk_ring_verdict(r, 1e-9, &mut v), FkStatus::Ok);
        assert_eq!(v.kind, FkVerdictKind::SolvableSinglePrime as i32);
        assert_eq!(v.prime, 2);
        fk_ring_free(r);
    }
}

#[test]
fn parse_errors() {
    let mut r = ptr::null_mut();
    let text = CString::new("rank 0\n").unwrap();
    assert_eq!(unsafe { fk_ring_parse(text.as_ptr(), &mut r) }, FkStatus::Syntax);
    assert!(r.is_null());
    assert!(!last_error().is_empty());
    let mut m = ptr::null_mut();
    let text = CString::new("orders 2\nq 1/3\n").unwrap();
    assert_eq!(unsafe { fk_metric_parse(text.as_ptr(), &mut m) }, FkStatus::Invalid);
    assert!(m.is_null());
    assert_eq!(unsafe { fk_metric_parse(ptr::null(), &mut m) }, FkStatus::NullPointer);
}

#[test]
fn classify_and_scan() {
    let mut v = FkVerdict::default();
    unsafe {
        assert_eq!(fk_classify_dimension(11025, &mut v), FkStatus::Ok);
        assert_eq!(v.kind, FkVerdictKind::SolvableOddBelow33075 as i32);
        assert_eq!(fk_classify_dimension(0, &mut v), FkStatus::Invalid);
        let mut count = 0;
        assert_eq!(fk_scan_exceptions(1800, false, ptr::null_mut(), 0, &mut count), FkStatus::Ok);
        assert_eq!(count, 2);
        let mut buf = vec![0u64; count];
        assert_eq!(fk_scan_exceptions(1800, false, buf.as_mut_ptr(), count, &mut count), FkStatus::Ok);
        assert_eq!(buf, [900, 1764]);
        assert_eq!(fk_scan_exceptions(u64::MAX, false, ptr::null_mut(), 0, &mut count), FkStatus::CapExceeded);
    }
}

#[test]
fn metric_groups() {
    unsafe {
        let m = metric("z3_1");
        assert_eq!(fk_metric_order(m), 3);
        assert!(fk_metric_is_nondegenerate(m));
        let (mut mag, mut eighth) = (0, 0);
        assert_eq!(fk_metric_gauss(m, &mut mag, &mut eighth), FkStatus::Ok);
        assert_eq!(mag, 3);
        let mut order = 0;
        assert_eq!(fk_metric_witt_order(m, 32, &mut order), FkStatus::Ok);
        assert_eq!(order, 4);
        assert_eq!(fk_metric_witt_order(m, 2, &mut order), FkStatus::CapExceeded);
        let s = fk_metric_describe(m);
        assert!(!CStr::from_ptr(s).to_bytes().is_empty());
        fk_string_free(s);
        fk_metric_free(m);
    }
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/fusionkit.h")).unwrap();
    for name in [
        "fk_last_error",
        "fk_ring_parse",
        "fk_ring_free",
        "fk_ring_fp_dims",
        "fk_ring_verdict",
        "fk_classify_dimension",
        "fk_scan_exceptions",
        "fk_metric_parse",
        "fk_metric_gauss",
        "fk_metric_witt_order",
        "fk_string_free",
        "FK_STATUS_CAP_EXCEEDED",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
