//! C interface to `fusionkit`.
//!
//! Rings and metric groups are opaque handles created by the `*_parse`
//! functions and released with the matching `*_free`. Every fallible call
//! returns an [`FkStatus`]; on failure [`fk_last_error`] describes it.
//! Out-parameters are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fusionkit::classifier::{self, DimensionVerdict, VerdictKind};
use fusionkit::fusion_ring::{self, FusionRing};
use fusionkit::metric_group::{self, MetricGroup, DEFAULT_ELEMENT_CAP};
use fusionkit::witt::{self, WittError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Invalid = 4,
    Degenerate = 5,
    CapExceeded = 6,
    Numeric = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FkVerdictKind {
    SolvableSinglePrime = 0,
    WgtTwoPrimes = 1,
    WgtBelow1800 = 2,
    SolvableOddBelow33075 = 3,
    Unknown = 4,
}

/// A verdict with its witness `p^a q^b c`. Absent primes are 0.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FkVerdict {
    pub kind: i32,
    pub has_witness: bool,
    pub prime: u64,
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub b: u32,
    pub c: u64,
}

/// Opaque fusion ring.
pub struct FkRing(FusionRing);

/// Opaque metric group.
pub struct FkMetricGroup(MetricGroup);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: FkStatus, msg: impl Into<String>) -> FkStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into [`FkStatus::Panic`].
fn guard(f: impl FnOnce() -> FkStatus) -> FkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == FkStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(FkStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, FkStatus> {
    if text.is_null() {
        return Err(fail(FkStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(FkStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn verdict_out(v: &DimensionVerdict) -> FkVerdict {
    let kind = match v.kind {
        VerdictKind::SolvableSinglePrime => FkVerdictKind::SolvableSinglePrime,
        VerdictKind::WGTTwoPrimes => FkVerdictKind::WgtTwoPrimes,
        VerdictKind::WGTBelow1800 => FkVerdictKind::WgtBelow1800,
        VerdictKind::SolvableOddBelow33075 => FkVerdictKind::SolvableOddBelow33075,
        VerdictKind::Unknown => FkVerdictKind::Unknown,
    };
    let mut out = FkVerdict { kind: kind as i32, prime: v.prime.unwrap_or(0), ..FkVerdict::default() };
    if let Some(f) = v.witness {
        out.has_witness = true;
        out.p = f.p.unwrap_or(0);
        out.a = f.a;
        out.q = f.q.unwrap_or(0);
        out.b = f.b;
        out.c = f.c;
    }
    out
}

fn witt_status(e: &WittError) -> FkStatus {
    match e {
        WittError::OrderExceedsCap(_) | WittError::ClosureExceedsCap(_) => FkStatus::CapExceeded,
        WittError::Metric(metric_group::MetricError::TooLarge { .. }) => FkStatus::CapExceeded,
        WittError::Metric(metric_group::MetricError::Degenerate) => FkStatus::Degenerate,
        _ => FkStatus::Invalid,
    }
}

/// Message for the last failed call on this thread, or the empty string.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn fk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates a fusion ring.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fk_ring_parse(text: *const c_char, out: *mut *mut FkRing) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return fail(FkStatus::NullPointer, "null out pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let raw = match fusion_ring::parse_ring(text) {
            Ok(r) => r,
            Err(e) => return fail(FkStatus::Syntax, e.to_string()),
        };
        match FusionRing::new(raw) {
            Ok(ring) => {
                *out = Box::into_raw(Box::new(FkRing(ring)));
                FkStatus::Ok
            }
            Err(v) => {
                let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
                fail(FkStatus::Invalid, msgs.join("; "))
            }
        }
    })
}

/// # Safety
/// `ring` must come from [`fk_ring_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fk_ring_free(ring: *mut FkRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fk_ring_rank(ring: *const FkRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.rank())
}

/// Writes the FP dimension of each simple into `dims` (length `len`, at
/// least the rank) and the exact total into `total_exact`, or 0 when the
/// total is not an integer.
///
/// # Safety
/// Pointers must be valid; `dims` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fk_ring_fp_dims(
    ring: *const FkRing,
    tolerance: f64,
    dims: *mut f64,
    len: usize,
    total_exact: *mut u64,
) -> FkStatus {
    guard(|| {
        let (Some(ring), false, false) = (ring.as_ref(), dims.is_null(), total_exact.is_null()) else {
            return fail(FkStatus::NullPointer, "null argument");
        };
        if len < ring.0.rank() {
            return fail(FkStatus::BufferTooSmall, format!("need {} entries", ring.0.rank()));
        }
        match fusion_ring::fp_dim_data(&ring.0, tolerance) {
            Ok(d) => {
                ptr::copy_nonoverlapping(d.dims.as_ptr(), dims, d.dims.len());
                *total_exact = d.total_exact.unwrap_or(0);
                FkStatus::Ok
            }
            Err(e) => fail(FkStatus::Numeric, e.to_string()),
        }
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fk_ring_verdict(ring: *const FkRing, tolerance: f64, out: *mut FkVerdict) -> FkStatus {
    guard(|| {
        let (Some(ring), false) = (ring.as_ref(), out.is_null()) else {
            return fail(FkStatus::NullPointer, "null argument");
        };
        match classifier::verdict_ring(&ring.0, tolerance) {
            Ok(v) => {
                *out = verdict_out(&v);
                FkStatus::Ok
            }
            Err(e) => fail(FkStatus::Numeric, e.to_string()),
        }
    })
}

/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fk_classify_dimension(n: u64, out: *mut FkVerdict) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return fail(FkStatus::NullPointer, "null out pointer");
        }
        if n == 0 {
            return fail(FkStatus::Invalid, "dimension must be positive");
        }
        *out = verdict_out(&classifier::verdict_dimension(n));
        FkStatus::Ok
    })
}

/// Writes up to `len` exceptions below `limit` into `buf` and their total
/// number into `count`. Call with `len = 0` to size the buffer.
///
/// # Safety
/// `buf` must hold `len` values (may be null when `len` is 0); `count`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn fk_scan_exceptions(
    limit: u64,
    odd_only: bool,
    buf: *mut u64,
    len: usize,
    count: *mut usize,
) -> FkStatus {
    guard(|| {
        if count.is_null() || (buf.is_null() && len > 0) {
            return fail(FkStatus::NullPointer, "null argument");
        }
        match classifier::scan_exceptions(limit, odd_only, classifier::DEFAULT_SCAN_CAP) {
            Ok(r) => {
                let n = r.exceptions.len().min(len);
                if n > 0 {
                    ptr::copy_nonoverlapping(r.exceptions.as_ptr(), buf, n);
                }
                *count = r.exceptions.len();
                FkStatus::Ok
            }
            Err(e) => fail(FkStatus::CapExceeded, e.to_string()),
        }
    })
}

/// Parses and validates a metric group.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fk_metric_parse(text: *const c_char, out: *mut *mut FkMetricGroup) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return fail(FkStatus::NullPointer, "null out pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let raw = match metric_group::parse_metric(text) {
            Ok(r) => r,
            Err(e) => return fail(FkStatus::Syntax, e.to_string()),
        };
        match MetricGroup::new(&raw) {
            Ok(mg) => {
                *out = Box::into_raw(Box::new(FkMetricGroup(mg)));
                FkStatus::Ok
            }
            Err(report) => {
                let msgs: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
                fail(FkStatus::Invalid, msgs.join("; "))
            }
        }
    })
}

/// # Safety
/// `mg` must come from [`fk_metric_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fk_metric_free(mg: *mut FkMetricGroup) {
    if !mg.is_null() {
        drop(Box::from_raw(mg));
    }
}

/// # Safety
/// `mg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fk_metric_order(mg: *const FkMetricGroup) -> u64 {
    mg.as_ref().map_or(0, |m| m.0.order())
}

/// # Safety
/// `mg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fk_metric_is_nondegenerate(mg: *const FkMetricGroup) -> bool {
    mg.as_ref().is_some_and(|m| m.0.is_nondegenerate())
}

/// `|G|²` and `k` with `arg G = 2πk/8`. Requires a nondegenerate form.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fk_metric_gauss(
    mg: *const FkMetricGroup,
    magnitude_sq: *mut u64,
    eighth: *mut u8,
) -> FkStatus {
    guard(|| {
        let (Some(mg), false, false) = (mg.as_ref(), magnitude_sq.is_null(), eighth.is_null()) else {
            return fail(FkStatus::NullPointer, "null argument");
        };
        if !mg.0.is_nondegenerate() {
            return fail(FkStatus::Degenerate, "form is degenerate");
        }
        match metric_group::gauss_sum(&mg.0, DEFAULT_ELEMENT_CAP) {
            Ok(g) => {
                *magnitude_sq = g.magnitude_sq.unwrap_or(0);
                *eighth = g.eighth.unwrap_or(0);
                FkStatus::Ok
            }
            Err(metric_group::MetricError::TooLarge { order, cap }) => {
                fail(FkStatus::CapExceeded, format!("order {order} exceeds cap {cap}"))
            }
            Err(e) => fail(FkStatus::Invalid, e.to_string()),
        }
    })
}

/// Order of the pointed Witt class, searched up to `order_cap`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fk_metric_witt_order(mg: *const FkMetricGroup, order_cap: u32, out: *mut u32) -> FkStatus {
    guard(|| {
        let (Some(mg), false) = (mg.as_ref(), out.is_null()) else {
            return fail(FkStatus::NullPointer, "null argument");
        };
        let result = witt::pointed_witt_class(&mg.0, DEFAULT_ELEMENT_CAP)
            .and_then(|r| witt::class_order(&r.class, order_cap, DEFAULT_ELEMENT_CAP));
        match result {
            Ok(n) => {
                *out = n;
                FkStatus::Ok
            }
            Err(e) => fail(witt_status(&e), e.to_string()),
        }
    })
}

/// Human-readable description; release with [`fk_string_free`].
///
/// # Safety
/// `mg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fk_metric_describe(mg: *const FkMetricGroup) -> *mut c_char {
    match mg.as_ref() {
        Some(m) => CString::new(m.0.describe()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
