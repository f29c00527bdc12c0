//! C ABI over the `milnor` engine.
//!
//! Curves are opaque `MilnorCurve` handles. Every fallible call returns a
//! `MilnorStatus` and writes its result through an out-pointer; on failure a
//! message is available from `milnor_last_error_message` on the same thread.
//! Strings returned by the library must be released with `milnor_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use milnor::alexander::alexander;
use milnor::catalog::{CatalogError, CurveSpec};
use milnor::cli::parse::parse_poly;
use milnor::cli::{analyze, Sections};
use milnor::jacobian::{validate, CurveInput};
use milnor::spectral::epsilon;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilnorStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// Not reduced, not homogeneous, or degree too low.
    InvalidCurve = 4,
    UnknownCatalog = 5,
    /// The Alexander polynomial is only bounded for this curve.
    NotCertified = 6,
    InvalidArgument = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// Opaque curve handle.
pub struct MilnorCurve {
    curve: CurveInput,
    catalog: Option<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn fail(status: MilnorStatus, msg: impl Into<String>) -> MilnorStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting panics into `Internal`.
fn guard(f: impl FnOnce() -> MilnorStatus) -> MilnorStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(MilnorStatus::Internal, msg)
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MilnorStatus> {
    if p.is_null() {
        return Err(fail(MilnorStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(MilnorStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn give_string(s: String, out: *mut *mut c_char) -> MilnorStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            MilnorStatus::Ok
        }
        Err(_) => fail(MilnorStatus::Internal, "result contains a NUL byte"),
    }
}

fn give_curve(curve: MilnorCurve, out: *mut *mut MilnorCurve) -> MilnorStatus {
    unsafe { *out = Box::into_raw(Box::new(curve)) };
    MilnorStatus::Ok
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(MilnorStatus::NullPointer, concat!("null pointer: ", stringify!($p)));
        })+
    };
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn milnor_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn milnor_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates a curve equation such as `"x^3+y^3+z^3"`.
/// `components` is the number of irreducible components, or 0 if unknown.
///
/// # Safety
/// `expr` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_from_expression(expr: *const c_char, components: u32, out: *mut *mut MilnorCurve) -> MilnorStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(expr) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let f = match parse_poly(text) {
            Ok(f) => f,
            Err(e) => return fail(MilnorStatus::ParseError, e.to_string()),
        };
        match validate(f, (components > 0).then_some(components)) {
            Ok(curve) => give_curve(MilnorCurve { curve, catalog: None }, out),
            Err(e) => fail(MilnorStatus::InvalidCurve, e.to_string()),
        }
    })
}

/// Builds a catalog curve. `param` is m or d for parametrized families and
/// must be 0 otherwise.
///
/// # Safety
/// `id` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_from_catalog(id: *const c_char, param: u32, out: *mut *mut MilnorCurve) -> MilnorStatus {
    guard(|| {
        non_null!(out);
        let name = match read_str(id) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let built = milnor::catalog::CurveId::parse(name)
            .and_then(|id| CurveSpec::new(id, (param > 0).then_some(param)))
            .and_then(|spec| spec.build().map(|c| (c, spec.label())));
        match built {
            Ok((curve, label)) => give_curve(MilnorCurve { curve, catalog: Some(label) }, out),
            Err(e @ CatalogError::UnknownIdentifier(_)) => fail(MilnorStatus::UnknownCatalog, e.to_string()),
            Err(e @ CatalogError::BadParams { .. }) => fail(MilnorStatus::InvalidArgument, e.to_string()),
            Err(e) => fail(MilnorStatus::InvalidCurve, e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `curve` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_free(curve: *mut MilnorCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn milnor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_degree(curve: *const MilnorCurve, out: *mut u32) -> MilnorStatus {
    guard(|| {
        non_null!(curve, out);
        *out = (*curve).curve.degree();
        MilnorStatus::Ok
    })
}

/// Total Tjurina number.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_tjurina(curve: *const MilnorCurve, out: *mut usize) -> MilnorStatus {
    guard(|| {
        non_null!(curve, out);
        *out = (*curve).curve.tjurina();
        MilnorStatus::Ok
    })
}

/// `ε_q`, the excess of closed-up syzygies over Koszul relations in degree `q >= 1`.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_epsilon(curve: *const MilnorCurve, q: u32, out: *mut usize) -> MilnorStatus {
    guard(|| {
        non_null!(curve, out);
        if q == 0 {
            return fail(MilnorStatus::InvalidArgument, "q must be at least 1");
        }
        *out = epsilon(&(*curve).curve, q);
        MilnorStatus::Ok
    })
}

/// First Alexander polynomial, e.g. `"(t^2-t+1)^3"`. Returns `NotCertified`
/// when only bounds are available; the message then holds the interval form.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_delta1(curve: *const MilnorCurve, out: *mut *mut c_char) -> MilnorStatus {
    guard(|| {
        non_null!(curve, out);
        let result = alexander(&(*curve).curve);
        match result.delta1_string() {
            Ok(s) => give_string(s, out),
            Err(e) => fail(MilnorStatus::NotCertified, format!("{e}: {}", result.interval_string())),
        }
    })
}

/// Full analysis as JSON, in the same schema as `milnor analyze --format json`.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_curve_analyze_json(curve: *const MilnorCurve, with_witnesses: bool, out: *mut *mut c_char) -> MilnorStatus {
    guard(|| {
        non_null!(curve, out);
        let handle = &*curve;
        let sections = Sections { witnesses: with_witnesses, ..Sections::full() };
        match analyze(&handle.curve, handle.catalog.clone(), &sections) {
            Ok(a) => give_string(serde_json::to_string_pretty(&a.report).expect("report serializes"), out),
            Err(e) => fail(MilnorStatus::InvalidArgument, e.to_string()),
        }
    })
}
