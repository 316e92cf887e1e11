//! C interface to `grover-exact`.
//!
//! Schemes live behind an opaque [`GeScheme`] handle. Every fallible call
//! returns a [`GeStatus`]; on failure [`ge_last_error_message`] describes the
//! error for the calling thread. Strings handed out by the library must be
//! released with [`ge_string_free`], schemes with [`ge_scheme_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grover_exact::identifier::Identifier;
use grover_exact::json::{render, scheme_from_json, scheme_to_json};
use grover_exact::optimizer::{entangled_feasible, min_product_cover};
use grover_exact::oracle::GroverOracle;
use grover_exact::schemes::{
    builtin, construct_product_scheme, construction_size, general_lower_bound, verify, Scheme,
};
use grover_exact::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Indistinguishable = 3,
    ResourceCap = 4,
    Parse = 5,
    InvalidScheme = 6,
    Ambiguous = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

/// An owned scheme.
pub struct GeScheme {
    inner: Scheme,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> GeStatus {
    match e {
        Error::Indistinguishable(_) => GeStatus::Indistinguishable,
        Error::ResourceCap { .. } => GeStatus::ResourceCap,
        Error::Parse(_) => GeStatus::Parse,
        Error::InvalidProfile(_) | Error::InvalidBlock(_) | Error::NotNormalized(_) => {
            GeStatus::InvalidScheme
        }
        Error::AmbiguousClassification { .. } => GeStatus::Ambiguous,
        _ => GeStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (GeStatus, String)>) -> GeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GeStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GeStatus::Panic
        }
    }
}

fn lib<T>(r: grover_exact::Result<T>) -> Result<T, (GeStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), (GeStatus, String)> {
    if p.is_null() {
        Err((GeStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (GeStatus, String)> {
    non_null(p, what)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GeStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn emit_scheme(out: *mut *mut GeScheme, s: Scheme) -> Result<(), (GeStatus, String)> {
    *out = Box::into_raw(Box::new(GeScheme { inner: s }));
    Ok(())
}

/// Message for the last failed call on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ge_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a scheme. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_free(s: *mut GeScheme) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The grouping construction for `n` elements.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_construct(n: usize, out: *mut *mut GeScheme) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = lib(construct_product_scheme(n))?;
        emit_scheme(out, s.into())
    })
}

/// One of the named schemes `n4-single`, `n5-product`, `n6-entangled`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_builtin(
    name: *const c_char,
    out: *mut *mut GeScheme,
) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let name = read_str(name, "name")?;
        let s = lib(builtin(name, None))?;
        emit_scheme(out, s)
    })
}

/// Parses a scheme document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_from_json(
    json: *const c_char,
    out: *mut *mut GeScheme,
) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = read_str(json, "json")?;
        let s = lib(scheme_from_json(text))?;
        emit_scheme(out, s)
    })
}

/// Serializes a scheme; release the result with [`ge_string_free`].
///
/// # Safety
/// `s` must be a live scheme; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_to_json(s: *const GeScheme, out: *mut *mut c_char) -> GeStatus {
    guard(|| {
        non_null(s, "scheme")?;
        non_null(out, "out")?;
        let v = lib(scheme_to_json(&(*s).inner))?;
        let text = render(&v);
        *out = CString::new(text.trim_end())
            .expect("JSON has no interior NUL")
            .into_raw();
        Ok(())
    })
}

/// Dimension of the scheme, or 0 for null.
///
/// # Safety
/// `s` must be null or a live scheme.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_n(s: *const GeScheme) -> usize {
    s.as_ref().map_or(0, |s| s.inner.n())
}

/// Number of copies (oracle queries) the scheme uses, or 0 for null.
///
/// # Safety
/// `s` must be null or a live scheme.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_copies(s: *const GeScheme) -> usize {
    s.as_ref().map_or(0, |s| s.inner.copies())
}

/// Writes whether the scheme separates every pair and how many pairs fail.
///
/// # Safety
/// `s` must be a live scheme; `valid` must be writable; `failing` may be null.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_verify(
    s: *const GeScheme,
    valid: *mut bool,
    failing: *mut usize,
) -> GeStatus {
    guard(|| {
        non_null(s, "scheme")?;
        non_null(valid, "valid")?;
        let report = verify(&(*s).inner);
        *valid = report.valid;
        if !failing.is_null() {
            *failing = report.failing_pairs.len();
        }
        Ok(())
    })
}

/// Runs the scheme against the oracle hiding `hidden` (1-based).
///
/// # Safety
/// `s` must be a live scheme; `identified` and `queries` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ge_scheme_identify(
    s: *const GeScheme,
    hidden: usize,
    identified: *mut usize,
    queries: *mut usize,
) -> GeStatus {
    guard(|| {
        non_null(s, "scheme")?;
        non_null(identified, "identified")?;
        non_null(queries, "queries")?;
        let scheme = &(*s).inner;
        let oracle = lib(GroverOracle::new(scheme.n(), hidden))?;
        let run = lib(lib(Identifier::new(scheme))?.run(&oracle))?;
        *identified = run.identified;
        *queries = run.hidden_queries_used;
        Ok(())
    })
}

/// Smallest `t` allowed by the general lower bound.
#[no_mangle]
pub extern "C" fn ge_general_lower_bound(n: u64) -> u64 {
    general_lower_bound(n)
}

/// Copies used by the grouping construction.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ge_construction_size(n: usize, out: *mut usize) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = lib(construction_size(n))?;
        Ok(())
    })
}

/// Exact minimum number of canonical blocks for `n` (default cap applies).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ge_min_product_cover(n: usize, out: *mut usize) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = lib(min_product_cover(n))?.t;
        Ok(())
    })
}

/// Whether some `t`-copy input separates all `n` oracles. On success with
/// `feasible` and a non-null `witness`, a verified weight profile is
/// written there.
///
/// # Safety
/// `feasible` must be writable; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn ge_entangled_feasible(
    n: usize,
    t: usize,
    feasible: *mut bool,
    witness: *mut *mut GeScheme,
) -> GeStatus {
    guard(|| {
        non_null(feasible, "feasible")?;
        let r = lib(entangled_feasible(n, t))?;
        *feasible = r.feasible;
        if !witness.is_null() {
            *witness = ptr::null_mut();
            if let Some(w) = r.witness {
                emit_scheme(witness, w.into())?;
            }
        }
        Ok(())
    })
}
