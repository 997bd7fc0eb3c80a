//! C interface to `semigold`.
//!
//! Inputs are parsed into opaque handles; results come back as JSON strings
//! that the caller releases with [`sg_string_free`]. Every fallible call
//! returns an [`SgStatus`] and records a message retrievable with
//! [`sg_last_error`] on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semigold::goldbach_poly::goldbach_auto;
use semigold::irreducibility::certify_irreducible;
use semigold::laurent_poly::{default_vars, parse_poly_with};
use semigold::laurent_series::{
    decompose_series, decomposition_family, parse_series, StructuredSeries, SubsetSpec,
};
use semigold::{Error, LaurentPoly, Ring, SearchConfig};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotApplicable = 4,
    ConditionNotMet = 5,
    Inconclusive = 6,
    InvalidSeries = 7,
    Defect = 8,
    Panic = 9,
    Other = 10,
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::Parse { .. } | Error::NegativeCoefficient(_) | Error::UnknownVariable { .. } => {
            SgStatus::Parse
        }
        Error::NotApplicable { .. }
        | Error::UnsupportedInstance(_)
        | Error::InstanceMismatch { .. } => SgStatus::NotApplicable,
        Error::ConditionNotMet(_)
        | Error::FewerThanTwoTerms(_)
        | Error::ZeroPolynomial
        | Error::ZeroInput => SgStatus::ConditionNotMet,
        Error::InvalidSeries(_) => SgStatus::InvalidSeries,
        Error::Defect(_) | Error::UnrepresentableSplit(_) => SgStatus::Defect,
        e if e.is_inconclusive() => SgStatus::Inconclusive,
        Error::DegreeBoundExceeded { .. } | Error::MassBoundExceeded { .. } => {
            SgStatus::Inconclusive
        }
        _ => SgStatus::Other,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parsed polynomial together with its variable names.
pub struct SgPoly {
    poly: LaurentPoly,
    vars: Vec<String>,
}

pub struct SgSeries {
    series: StructuredSeries,
}

/// Search budgets; see `SearchConfig` in the core crate.
pub struct SgConfig {
    cfg: SearchConfig,
}

enum Failure {
    Status(SgStatus, String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Failure::Engine(e))) => {
            set_error(format!("{}: {e}", e.code()));
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            SgStatus::Panic
        }
    }
}

unsafe fn cstr<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(
            SgStatus::NullArgument,
            format!("{what} is NULL"),
        ));
    }
    // SAFETY: non-null and NUL-terminated by the caller's contract.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure::Status(SgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller passes a live handle or NULL.
    unsafe { p.as_ref() }
        .ok_or_else(|| Failure::Status(SgStatus::NullArgument, format!("{what} is NULL")))
}

unsafe fn out_ptr<'a, T>(p: *mut *mut T) -> Result<&'a mut *mut T, Failure> {
    // SAFETY: the caller passes writable storage or NULL.
    unsafe { p.as_mut() }
        .ok_or_else(|| Failure::Status(SgStatus::NullArgument, "output pointer is NULL".into()))
}

fn json_out(out: &mut *mut c_char, v: serde_json::Value) {
    *out = CString::new(v.to_string())
        .expect("json has no nul")
        .into_raw();
}

fn config_or_default(cfg: *const SgConfig) -> SearchConfig {
    // SAFETY: NULL or a handle from `sg_config_new`.
    unsafe { cfg.as_ref() }.map_or_else(SearchConfig::from_env, |c| c.cfg.clone())
}

/// New configuration with the default budgets (`SEMIGOLD_BUDGET` applies).
#[no_mangle]
pub extern "C" fn sg_config_new() -> *mut SgConfig {
    Box::into_raw(Box::new(SgConfig {
        cfg: SearchConfig::from_env(),
    }))
}

/// # Safety
/// `cfg` is NULL or a live handle from [`sg_config_new`].
#[no_mangle]
pub unsafe extern "C" fn sg_config_set_budget(cfg: *mut SgConfig, budget: u64) -> SgStatus {
    // SAFETY: per the function contract.
    guard(|| {
        let c = unsafe { cfg.as_mut() }.ok_or(Failure::Status(
            SgStatus::NullArgument,
            "config is NULL".into(),
        ))?;
        c.cfg.candidate_budget = budget;
        Ok(())
    })
}

/// # Safety
/// `cfg` is NULL or a live handle from [`sg_config_new`].
#[no_mangle]
pub unsafe extern "C" fn sg_config_set_check_order(cfg: *mut SgConfig, order: i64) -> SgStatus {
    guard(|| {
        // SAFETY: per the function contract.
        let c = unsafe { cfg.as_mut() }.ok_or(Failure::Status(
            SgStatus::NullArgument,
            "config is NULL".into(),
        ))?;
        c.cfg.check_order = order;
        Ok(())
    })
}

/// # Safety
/// `cfg` is NULL or a handle from [`sg_config_new`] not freed before.
#[no_mangle]
pub unsafe extern "C" fn sg_config_free(cfg: *mut SgConfig) {
    if !cfg.is_null() {
        // SAFETY: allocated by `sg_config_new`.
        drop(unsafe { Box::from_raw(cfg) });
    }
}

/// Parses `text` over the instance named `ring` (`n0`, `q+`, `n0sqrt2`,
/// `two-thirds`, `multi:<k>`). `vars` is a comma-separated list, or NULL
/// for `x, y, ...`.
///
/// # Safety
/// String arguments are NULL or NUL-terminated; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sg_poly_parse(
    text: *const c_char,
    ring: *const c_char,
    vars: *const c_char,
    out: *mut *mut SgPoly,
) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        *out = ptr::null_mut();
        let (r, n) = Ring::from_name(unsafe { text_or(ring, "n0") }?)?;
        let vars: Vec<String> = if vars.is_null() {
            default_vars(n)
        } else {
            unsafe { cstr(vars, "vars") }?
                .split(',')
                .map(|v| v.trim().to_string())
                .collect()
        };
        let poly = parse_poly_with(unsafe { cstr(text, "text") }?, r.base(), &vars)?;
        *out = Box::into_raw(Box::new(SgPoly { poly, vars }));
        Ok(())
    })
}

unsafe fn text_or(p: *const c_char, default: &str) -> Result<&str, Failure> {
    if p.is_null() {
        Ok(default)
    } else {
        // SAFETY: forwarded contract.
        unsafe { cstr(p, "ring") }
    }
}

/// # Safety
/// `p` is NULL or a handle from [`sg_poly_parse`] not freed before.
#[no_mangle]
pub unsafe extern "C" fn sg_poly_free(p: *mut SgPoly) {
    if !p.is_null() {
        // SAFETY: allocated by `sg_poly_parse` or `sg_series_truncate`.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Text form of `p`, to be released with [`sg_string_free`].
///
/// # Safety
/// `p` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sg_poly_to_string(p: *const SgPoly, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        let p = unsafe { handle(p, "poly") }?;
        *out = CString::new(p.poly.display_with(&p.vars))
            .expect("no nul")
            .into_raw();
        Ok(())
    })
}

/// Two-summand decomposition of `p` as a JSON verdict. `cfg` may be NULL.
///
/// # Safety
/// `p` is a live handle, `cfg` NULL or live; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sg_decompose_json(
    p: *const SgPoly,
    cfg: *const SgConfig,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        let p = unsafe { handle(p, "poly") }?;
        let v = goldbach_auto(&p.poly, &config_or_default(cfg))?;
        json_out(out, v.to_json_named(&p.vars));
        Ok(())
    })
}

/// Irreducibility verdict for `p` as JSON. `cfg` may be NULL.
///
/// # Safety
/// As for [`sg_decompose_json`].
#[no_mangle]
pub unsafe extern "C" fn sg_certify_json(
    p: *const SgPoly,
    cfg: *const SgConfig,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        let p = unsafe { handle(p, "poly") }?;
        json_out(
            out,
            certify_irreducible(&p.poly, &config_or_default(cfg))?.to_json(),
        );
        Ok(())
    })
}

/// Parses `head: ...; tail: ...` in the variable `x`.
///
/// # Safety
/// String arguments are NULL or NUL-terminated; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sg_series_parse(
    text: *const c_char,
    ring: *const c_char,
    out: *mut *mut SgSeries,
) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        *out = ptr::null_mut();
        let (r, n) = Ring::from_name(unsafe { text_or(ring, "n0") }?)?;
        if n != 1 {
            return Err(Failure::Status(
                SgStatus::NotApplicable,
                "series take a single variable".into(),
            ));
        }
        let series = parse_series(unsafe { cstr(text, "text") }?, &r)?;
        *out = Box::into_raw(Box::new(SgSeries { series }));
        Ok(())
    })
}

/// # Safety
/// `s` is NULL or a handle from [`sg_series_parse`] not freed before.
#[no_mangle]
pub unsafe extern "C" fn sg_series_free(s: *mut SgSeries) {
    if !s.is_null() {
        // SAFETY: allocated by `sg_series_parse`.
        drop(unsafe { Box::from_raw(s) });
    }
}

/// The terms of `s` with exponent at most `order`, as a new polynomial handle.
///
/// # Safety
/// `s` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sg_series_truncate(
    s: *const SgSeries,
    order: i64,
    out: *mut *mut SgPoly,
) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        let s = unsafe { handle(s, "series") }?;
        let poly = s.series.truncate(order);
        *out = Box::into_raw(Box::new(SgPoly {
            poly,
            vars: default_vars(1),
        }));
        Ok(())
    })
}

/// Decomposition of `s` into at most three irreducibles, as JSON with
/// truncations at `order`.
///
/// # Safety
/// `s` is a live handle, `cfg` NULL or live; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sg_series_decompose_json(
    s: *const SgSeries,
    cfg: *const SgConfig,
    order: i64,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        let s = unsafe { handle(s, "series") }?;
        json_out(
            out,
            decompose_series(&s.series, &config_or_default(cfg))?.to_json(order),
        );
        Ok(())
    })
}

/// The family member of `s` indexed by `subset` (`ap:<first>:<step>` or
/// `bits:<seed>`), as JSON.
///
/// # Safety
/// As for [`sg_series_decompose_json`]; `subset` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn sg_series_family_json(
    s: *const SgSeries,
    subset: *const c_char,
    cfg: *const SgConfig,
    order: i64,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let out = unsafe { out_ptr(out) }?;
        let s = unsafe { handle(s, "series") }?;
        let k = SubsetSpec::parse(unsafe { cstr(subset, "subset") }?)?;
        json_out(
            out,
            decomposition_family(&s.series, &k, &config_or_default(cfg))?.to_json(order),
        );
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is NULL or a string from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}
