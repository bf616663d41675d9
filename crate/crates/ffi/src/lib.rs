//! C ABI over the `hypermod` engine.
//!
//! Structures are opaque handles created by [`hm_structure_parse`] and
//! released with [`hm_structure_free`]. Every fallible call returns an
//! [`HmStatus`]; on failure [`hm_last_error`] describes the cause. Strings
//! handed out by the library are released with [`hm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypermod::format::{self, Structure};
use hypermod::harness::{self, TheoremId};
use hypermod::{multiplication, Error, Limits};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidStructure = 4,
    NoModule = 5,
    UnknownTheorem = 6,
    Capacity = 7,
    Internal = 8,
    Panic = 9,
}

/// A parsed ring, optionally with a module over it.
pub struct HmStructure {
    inner: Structure,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("NULs removed"));
}

fn status_of(e: &Error) -> HmStatus {
    match e {
        Error::Capacity { .. } => HmStatus::Capacity,
        Error::Parse(_) => HmStatus::ParseError,
        Error::Precondition(_) => HmStatus::UnknownTheorem,
        Error::InternalAssert(_) => HmStatus::Internal,
        _ => HmStatus::InvalidStructure,
    }
}

fn fail(status: HmStatus, message: impl Into<String>) -> HmStatus {
    set_error(message);
    status
}

fn guard(body: impl FnOnce() -> HmStatus) -> HmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => {
            if s == HmStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(HmStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HmStatus> {
    if p.is_null() {
        return Err(fail(HmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HmStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn structure<'a>(p: *const HmStructure) -> Result<&'a Structure, HmStatus> {
    p.as_ref()
        .map(|s| &s.inner)
        .ok_or_else(|| fail(HmStatus::NullPointer, "null structure handle"))
}

fn hand_out(text: String, out: *mut *mut c_char) -> HmStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HmStatus::Ok
        }
        Err(_) => fail(HmStatus::Internal, "output contains NUL"),
    }
}

fn valid(s: &Structure) -> Result<(), HmStatus> {
    let ring_ok = s.ring.validate().is_valid();
    let module_ok = s.module.as_ref().map_or(true, |m| m.validate().is_valid());
    if ring_ok && module_ok {
        Ok(())
    } else {
        Err(fail(HmStatus::InvalidStructure, "structure fails its axioms"))
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse structure text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_parse(text: *const c_char, out: *mut *mut HmStructure) -> HmStatus {
    guard(|| {
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = try_status!(read_str(text));
        match format::parse(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(HmStructure { inner }));
                HmStatus::Ok
            }
            Err(e) => fail(HmStatus::ParseError, e.to_string()),
        }
    })
}

/// Release a handle; null is ignored.
///
/// # Safety
/// `s` must come from [`hm_structure_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_free(s: *mut HmStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Release a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Carrier sizes of the ring and module; `*module_size` is 0 without a module.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_sizes(
    s: *const HmStructure,
    ring_size: *mut usize,
    module_size: *mut usize,
) -> HmStatus {
    guard(|| {
        let s = try_status!(structure(s));
        if ring_size.is_null() || module_size.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        *ring_size = s.ring.size();
        *module_size = s.module.as_ref().map_or(0, |m| m.size());
        HmStatus::Ok
    })
}

/// Whether every ring and module axiom holds.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_is_valid(s: *const HmStructure, out: *mut bool) -> HmStatus {
    guard(|| {
        let s = try_status!(structure(s));
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        *out = valid(s).is_ok();
        HmStatus::Ok
    })
}

/// Canonical text of the structure, released with [`hm_string_free`].
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_emit(s: *const HmStructure, out: *mut *mut c_char) -> HmStatus {
    guard(|| {
        let s = try_status!(structure(s));
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        hand_out(format::emit(s), out)
    })
}

/// Decide the multiplication property of the module.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hm_is_multiplication(s: *const HmStructure, out: *mut bool) -> HmStatus {
    guard(|| {
        let s = try_status!(structure(s));
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        try_status!(valid(s));
        let Some(module) = &s.module else {
            return fail(HmStatus::NoModule, "structure has no module");
        };
        match multiplication::is_multiplication(module, &Limits::default()) {
            Ok(cert) => {
                *out = cert.verdict;
                HmStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Run the theorems named by `selector` (an id, `T3.8` or `all`) and hand
/// out the verdicts as a JSON report with `"schema": 1`.
///
/// # Safety
/// All pointers must be valid and `selector` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hm_verify_json(
    s: *const HmStructure,
    selector: *const c_char,
    out: *mut *mut c_char,
) -> HmStatus {
    guard(|| {
        let s = try_status!(structure(s));
        let selector = try_status!(read_str(selector));
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        let Some(ids) = TheoremId::select(selector) else {
            return fail(HmStatus::UnknownTheorem, format!("unknown theorem id `{selector}`"));
        };
        try_status!(valid(s));
        let Some(module) = &s.module else {
            return fail(HmStatus::NoModule, "structure has no module");
        };
        match harness::verify(module, &ids, &Limits::default()) {
            Ok(verdicts) => {
                let report = serde_json::json!({"schema": 1, "command": "verify", "verdicts": verdicts});
                hand_out(report.to_string(), out)
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}
