//! C interface. Configurations live behind an opaque handle; structured
//! results cross the boundary as JSON strings owned by the library and
//! released with [`chasles_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chasles::chasles::{extra_point, extra_point_via_eliminant, is_chasles_configuration};
use chasles::io::{parse_configuration, ExtraPointRequest, ExtraPointResponse};
use chasles::lattice::{mixed_volume, normalized_volume, LatticeConfiguration};
use chasles::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChaslesStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or invalid arguments.
    InputError = 3,
    /// Degenerate or non-generic mathematical data.
    Degenerate = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// A lattice configuration. Create with [`chasles_config_from_json`],
/// release with [`chasles_config_free`].
pub struct ChaslesConfig(LatticeConfiguration);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: ChaslesStatus, msg: &str) -> ChaslesStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> ChaslesStatus {
    let status = if e.is_degeneracy() { ChaslesStatus::Degenerate } else { ChaslesStatus::InputError };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> ChaslesStatus) -> ChaslesStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ChaslesStatus::Internal, "panic inside the library"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ChaslesStatus> {
    if s.is_null() {
        return Err(fail(ChaslesStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(ChaslesStatus::InvalidUtf8, "argument is not UTF-8"))
}

/// Message for the last failing call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn chasles_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `{"d": 2, "points": [[0,0], ...]}` into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chasles_config_from_json(json: *const c_char, out: *mut *mut ChaslesConfig) -> ChaslesStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChaslesStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_configuration(text) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(ChaslesConfig(a)));
                ChaslesStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `config` must come from [`chasles_config_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn chasles_config_free(config: *mut ChaslesConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn chasles_config_len(config: *const ChaslesConfig) -> usize {
    config.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn chasles_config_dim(config: *const ChaslesConfig) -> usize {
    config.as_ref().map_or(0, |c| c.0.dim_ambient())
}

/// Normalized volume of the convex hull (0 when not full-dimensional).
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chasles_config_volume(config: *const ChaslesConfig, out: *mut u64) -> ChaslesStatus {
    guard(|| match (config.as_ref(), out.as_mut()) {
        (Some(c), Some(o)) => {
            *o = normalized_volume(&c.0).value;
            ChaslesStatus::Ok
        }
        _ => fail(ChaslesStatus::NullPointer, "null argument"),
    })
}

/// Writes whether `|A| + 1 = vol(A) + d`, and `N = vol(A) - 1`.
///
/// # Safety
/// `config` must be a live handle; `is_chasles` and `n` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn chasles_config_is_chasles(
    config: *const ChaslesConfig,
    is_chasles: *mut bool,
    n: *mut i64,
) -> ChaslesStatus {
    guard(|| {
        let (Some(c), Some(flag), Some(n)) = (config.as_ref(), is_chasles.as_mut(), n.as_mut()) else {
            return fail(ChaslesStatus::NullPointer, "null argument");
        };
        match is_chasles_configuration(&c.0) {
            Ok(r) => {
                *flag = r.is_chasles;
                *n = r.n;
                ChaslesStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Mixed volume of `count` configurations, the i-th taken `multiplicities[i]` times.
///
/// # Safety
/// `configs` and `multiplicities` must point to `count` valid entries.
#[no_mangle]
pub unsafe extern "C" fn chasles_mixed_volume(
    configs: *const *const ChaslesConfig,
    multiplicities: *const usize,
    count: usize,
    out: *mut u64,
) -> ChaslesStatus {
    guard(|| {
        if configs.is_null() || multiplicities.is_null() || out.is_null() {
            return fail(ChaslesStatus::NullPointer, "null argument");
        }
        let handles = std::slice::from_raw_parts(configs, count);
        let mult = std::slice::from_raw_parts(multiplicities, count);
        let mut entries = Vec::with_capacity(count);
        for (&h, &m) in handles.iter().zip(mult) {
            match h.as_ref() {
                Some(c) => entries.push((&c.0, m)),
                None => return fail(ChaslesStatus::NullPointer, "null configuration handle"),
            }
        }
        match mixed_volume(&entries) {
            Ok(v) => {
                *out = v;
                ChaslesStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

unsafe fn extra_point_impl(request: *const c_char, out_json: *mut *mut c_char, eliminant: bool) -> ChaslesStatus {
    guard(|| {
        if out_json.is_null() {
            return fail(ChaslesStatus::NullPointer, "null output pointer");
        }
        *out_json = ptr::null_mut();
        let text = match read_str(request) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let result = ExtraPointRequest::parse(text).and_then(|(s, pts)| {
            if eliminant {
                extra_point_via_eliminant(&s, &pts)
            } else {
                extra_point(&s, &pts)
            }
        });
        match result {
            Ok(r) => {
                let json = serde_json::to_string(&ExtraPointResponse::from(&r)).expect("serializable");
                *out_json = CString::new(json).expect("no NUL in JSON").into_raw();
                ChaslesStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Extra point from `{"structure": ..., "points": [["p/q", ...], ...]}`
/// by the product-of-roots formula. On success `*out_json` holds the
/// response, to be released with [`chasles_string_free`].
///
/// # Safety
/// `request` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chasles_extra_point_json(request: *const c_char, out_json: *mut *mut c_char) -> ChaslesStatus {
    extra_point_impl(request, out_json, false)
}

/// As [`chasles_extra_point_json`], reading the point off eliminants.
///
/// # Safety
/// Same as [`chasles_extra_point_json`].
#[no_mangle]
pub unsafe extern "C" fn chasles_eliminant_point_json(
    request: *const c_char,
    out_json: *mut *mut c_char,
) -> ChaslesStatus {
    extra_point_impl(request, out_json, true)
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn chasles_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
