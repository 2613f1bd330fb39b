//! C interface to `cychom`.
//!
//! Objects are opaque handles created by `*_new`/`*_from_json` and released
//! with the matching `*_free`. Every fallible call returns a status code;
//! on failure a message is available from [`cychom_last_error`] until the
//! next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cychom::algebra::Algebra;
use cychom::homology::{HomologyEngine, HomologyError};
use cychom::io::{parse_algebra_str, InputError, LoadOptions};
use cychom::mixed::{ComplexError, DEFAULT_MAX_CHAIN_DIM};

/// Success.
pub const CYCHOM_OK: i32 = 0;
/// Malformed or invalid input (parse or validation failure).
pub const CYCHOM_INVALID: i32 = 1;
/// A size cap refused the computation.
pub const CYCHOM_SIZE_CAP: i32 = 2;
/// Periodic homology could not be established from the truncation.
pub const CYCHOM_NOT_ESTABLISHED: i32 = 3;
/// A required pointer argument was null.
pub const CYCHOM_NULL_POINTER: i32 = 4;
/// The output buffer is shorter than required.
pub const CYCHOM_BUFFER_TOO_SMALL: i32 = 5;
/// Internal failure (a bug); see the error message.
pub const CYCHOM_INTERNAL: i32 = 6;

/// A validated finite-dimensional algebra.
pub struct CychomAlgebra {
    algebra: Algebra,
}

/// Homology of one algebra up to a fixed degree; results are cached.
pub struct CychomEngine {
    engine: HomologyEngine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn input_status(e: &InputError) -> i32 {
    match e {
        InputError::SizeCap { .. } => CYCHOM_SIZE_CAP,
        _ => CYCHOM_INVALID,
    }
}

fn complex_status(e: &ComplexError) -> i32 {
    match e {
        ComplexError::SizeCapExceeded { .. } => CYCHOM_SIZE_CAP,
        _ => CYCHOM_INVALID,
    }
}

/// Runs `f`, converting panics into `CYCHOM_INTERNAL`.
fn guard(f: impl FnOnce() -> Result<(), (i32, String)>) -> i32 {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CYCHOM_OK,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            CYCHOM_INTERNAL
        }
    }
}

fn null(what: &str) -> (i32, String) {
    (CYCHOM_NULL_POINTER, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (i32, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CYCHOM_INVALID, format!("{what} is not UTF-8")))
}

/// Version string of the library; static, never freed.
#[no_mangle]
pub extern "C" fn cychom_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn cychom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an algebra from its JSON description. With `validate` nonzero,
/// associativity and the unit are checked. The algebra dimension cap is
/// `dim_cap` (0 for the library default).
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cychom_algebra_from_json(
    json: *const c_char,
    validate: i32,
    dim_cap: usize,
    out: *mut *mut CychomAlgebra,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = c_str(json, "json")?;
        let mut opts = LoadOptions { validate: validate != 0, ..LoadOptions::default() };
        if dim_cap > 0 {
            opts.dim_cap = dim_cap;
        }
        let algebra = parse_algebra_str(text, opts).map_err(|e| (input_status(&e), e.to_string()))?;
        *out = Box::into_raw(Box::new(CychomAlgebra { algebra }));
        Ok(())
    })
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cychom_algebra_dim(a: *const CychomAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.algebra.dim())
}

/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cychom_algebra_free(a: *mut CychomAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Prepares homology computations for `a` up to `max_degree`. Chain spaces
/// larger than `max_chain_dim` (0 for the library default) are refused with
/// `CYCHOM_SIZE_CAP`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cychom_engine_new(
    a: *const CychomAlgebra,
    max_degree: usize,
    max_chain_dim: usize,
    out: *mut *mut CychomEngine,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        let cap = if max_chain_dim == 0 { DEFAULT_MAX_CHAIN_DIM } else { max_chain_dim };
        let engine =
            HomologyEngine::with_cap(&a.algebra, max_degree, cap).map_err(|e| (complex_status(&e), e.to_string()))?;
        *out = Box::into_raw(Box::new(CychomEngine { engine }));
        Ok(())
    })
}

/// Highest degree the engine reports.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cychom_engine_max_degree(e: *const CychomEngine) -> usize {
    e.as_ref().map_or(0, |e| e.engine.n_max())
}

/// # Safety
/// `e` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cychom_engine_free(e: *mut CychomEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

unsafe fn write_dims(out: *mut usize, len: usize, dims: &[usize]) -> Result<(), (i32, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    if len < dims.len() {
        return Err((CYCHOM_BUFFER_TOO_SMALL, format!("buffer holds {len} values, {} needed", dims.len())));
    }
    ptr::copy_nonoverlapping(dims.as_ptr(), out, dims.len());
    Ok(())
}

/// Writes `dim HH_0 … dim HH_max_degree` to `out[0..=max_degree]`.
///
/// # Safety
/// `e` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cychom_hochschild_dims(e: *const CychomEngine, out: *mut usize, len: usize) -> i32 {
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("engine"))?;
        write_dims(out, len, &e.engine.hochschild_dims())
    })
}

/// Writes `dim HC_0 … dim HC_max_degree` to `out[0..=max_degree]`.
///
/// # Safety
/// `e` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cychom_cyclic_dims(e: *const CychomEngine, out: *mut usize, len: usize) -> i32 {
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("engine"))?;
        write_dims(out, len, &e.engine.cyclic_dims())
    })
}

/// Even and odd periodic cyclic homology, read off the stabilized cyclic
/// groups. Returns `CYCHOM_NOT_ESTABLISHED` (outputs untouched) when the
/// truncation carries no stabilization certificate. `certificate` may be
/// null; otherwise it receives the certified degree `N`.
///
/// # Safety
/// `e` must be a live handle; `even` and `odd` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cychom_periodic_dims(
    e: *const CychomEngine,
    even: *mut usize,
    odd: *mut usize,
    certificate: *mut usize,
) -> i32 {
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("engine"))?;
        if even.is_null() || odd.is_null() {
            return Err(null("even/odd"));
        }
        match e.engine.periodic() {
            Ok(r) => {
                *even = r.dims[0];
                *odd = r.dims[1];
                if let (Some(c), false) = (&r.certificate, certificate.is_null()) {
                    *certificate = c.certificate.n;
                }
                Ok(())
            }
            Err(err @ (HomologyError::NoCertificate { .. } | HomologyError::StabilizationMismatch { .. })) => {
                Err((CYCHOM_NOT_ESTABLISHED, err.to_string()))
            }
            Err(err) => Err((CYCHOM_INVALID, err.to_string())),
        }
    })
}

/// Runs the command-line tool in-process. `argv` excludes the program
/// name. The report (standard output) is returned in `*report`, to be
/// released with [`cychom_string_free`]. Returns the tool's exit code
/// (0 ok, 1 invalid input, 2 size cap, 3 not established) or
/// `CYCHOM_NULL_POINTER`/`CYCHOM_INTERNAL` (as negatives) on misuse.
///
/// # Safety
/// `argv` must point to `argc` valid NUL-terminated strings; `report` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cychom_run(argv: *const *const c_char, argc: usize, report: *mut *mut c_char) -> i32 {
    let mut code = 0;
    let status = guard(|| {
        if report.is_null() || (argv.is_null() && argc > 0) {
            return Err(null("argv/report"));
        }
        *report = ptr::null_mut();
        let mut args = vec!["cychom".to_string()];
        for i in 0..argc {
            args.push(c_str(*argv.add(i), "argument")?.to_string());
        }
        let outcome = cychom::cli::run(args);
        if !outcome.stderr.is_empty() {
            set_error(outcome.stderr.trim_end());
        }
        let text = CString::new(outcome.stdout.replace('\0', " ")).expect("NUL removed");
        *report = text.into_raw();
        code = outcome.code;
        Ok(())
    });
    if status == CYCHOM_OK {
        if code != 0 {
            // keep the tool's stderr as the error message
            return code;
        }
        clear_error();
        0
    } else {
        -status
    }
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cychom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
