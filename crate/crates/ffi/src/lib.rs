//! C ABI over `trigspline`.
//!
//! Splines cross the boundary as opaque `TsSpline` handles. Every fallible call
//! returns a `TsStatus`; on failure a message is kept per thread and can be read
//! with `ts_last_error_message`. Output pointers are written only on success.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trigspline::io::{read_descriptor, write_descriptor};
use trigspline::{Error, FactorKind, GridSpec, Indicator, SmoothnessOrder, TrigSpline, Truncation};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Dimension = 3,
    Domain = 4,
    DegenerateNormalizer = 5,
    DerivativeOrder = 6,
    Numeric = 7,
    Parse = 8,
    Schema = 9,
    Invariant = 10,
    Io = 11,
    Panic = 12,
}

/// Opaque spline handle. Release with `ts_spline_free`.
pub struct TsSpline {
    inner: TrigSpline,
}

/// Factor family codes accepted by `ts_spline_build`.
pub const TS_KIND_V1: u32 = 1;
pub const TS_KIND_V2: u32 = 2;
pub const TS_KIND_V3: u32 = 3;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> TsStatus {
    match err {
        Error::Dimension { .. } => TsStatus::Dimension,
        Error::Input(_) => TsStatus::InvalidArgument,
        Error::Domain(_) => TsStatus::Domain,
        Error::DegenerateNormalizer { .. } => TsStatus::DegenerateNormalizer,
        Error::DerivativeOrder { .. } => TsStatus::DerivativeOrder,
        Error::Numeric(_) => TsStatus::Numeric,
        Error::Parse { .. } => TsStatus::Parse,
        Error::Schema(_) => TsStatus::Schema,
        Error::Invariant(_) => TsStatus::Invariant,
        Error::Io(_) => TsStatus::Io,
    }
}

enum Failure {
    Null(&'static str),
    Invalid(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, mapping errors and panics to a status and recording the message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            TsStatus::NullPointer
        }
        Ok(Err(Failure::Invalid(msg))) => {
            set_error(msg);
            TsStatus::InvalidArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            TsStatus::Panic
        }
    }
}

unsafe fn slice<'a>(
    data: *const f64,
    len: usize,
    what: &'static str,
) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn handle<'a>(spline: *const TsSpline) -> Result<&'a TrigSpline, Failure> {
    spline
        .as_ref()
        .map(|s| &s.inner)
        .ok_or(Failure::Null("spline"))
}

fn kind_of(code: u32) -> Result<FactorKind, Failure> {
    match code {
        TS_KIND_V1 => Ok(FactorKind::V1),
        TS_KIND_V2 => Ok(FactorKind::V2),
        TS_KIND_V3 => Ok(FactorKind::V3),
        other => Err(Failure::Invalid(format!("unknown factor kind {other}"))),
    }
}

/// Message of the most recent failure on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a spline from `len` samples on the grid with `len` nodes and indicator 0 or 1.
///
/// `kind` is one of `TS_KIND_V*`. `blocks == 0` picks the truncation
/// automatically; otherwise it is the number of alias blocks M.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_build(
    values: *const f64,
    len: usize,
    indicator: u8,
    kind: u32,
    order: u32,
    blocks: u64,
    out: *mut *mut TsSpline,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let values = slice(values, len, "values")?;
        let grid = GridSpec::new(len, Indicator::try_from(indicator)?)?;
        let truncation = if blocks == 0 {
            Truncation::Auto
        } else {
            Truncation::Blocks(blocks)
        };
        let inner = TrigSpline::build(
            values,
            grid,
            kind_of(kind)?,
            SmoothnessOrder::new(order)?,
            truncation,
        )?;
        *out = Box::into_raw(Box::new(TsSpline { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_free(spline: *mut TsSpline) {
    if !spline.is_null() {
        drop(Box::from_raw(spline));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ts_spline_eval(
    spline: *const TsSpline,
    t: f64,
    out: *mut f64,
) -> TsStatus {
    ts_spline_eval_derivative(spline, t, 0, out)
}

/// Derivative of order `deriv`, which must be below the smoothness order.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_eval_derivative(
    spline: *const TsSpline,
    t: f64,
    deriv: u32,
    out: *mut f64,
) -> TsStatus {
    guard(|| {
        let s = handle(spline)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = s.eval_derivative(t, deriv)?;
        Ok(())
    })
}

/// Evaluates at `len` points, writing `len` values to `out`.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_eval_many(
    spline: *const TsSpline,
    ts: *const f64,
    len: usize,
    deriv: u32,
    out: *mut f64,
) -> TsStatus {
    guard(|| {
        let s = handle(spline)?;
        let ts = slice(ts, len, "ts")?;
        if len > 0 && out.is_null() {
            return Err(Failure::Null("out"));
        }
        let values = s.eval_derivative_many(ts, deriv)?;
        if len > 0 {
            std::slice::from_raw_parts_mut(out, len).copy_from_slice(&values);
        }
        Ok(())
    })
}

/// Number of alias blocks M in use; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_blocks(spline: *const TsSpline) -> u64 {
    spline.as_ref().map_or(0, |s| s.inner.policy().blocks)
}

/// Bound on the discarded part of the series; NaN for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_tail_bound(spline: *const TsSpline) -> f64 {
    spline
        .as_ref()
        .map_or(f64::NAN, |s| s.inner.policy().tail_bound)
}

/// Number of grid nodes; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_nodes(spline: *const TsSpline) -> usize {
    spline.as_ref().map_or(0, |s| s.inner.grid().len())
}

/// Writes the `nodes` grid points for the given indicator to `out`.
#[no_mangle]
pub unsafe extern "C" fn ts_grid_nodes(nodes: usize, indicator: u8, out: *mut f64) -> TsStatus {
    guard(|| {
        let grid = GridSpec::new(nodes, Indicator::try_from(indicator)?)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        std::slice::from_raw_parts_mut(out, nodes).copy_from_slice(&grid.nodes());
        Ok(())
    })
}

/// Serializes to a JSON descriptor. Free the string with `ts_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_to_json(
    spline: *const TsSpline,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let s = handle(spline)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let text =
            CString::new(write_descriptor(s)).map_err(|e| Failure::Invalid(e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// Loads a descriptor written by `ts_spline_to_json`, re-deriving and checking it.
#[no_mangle]
pub unsafe extern "C" fn ts_spline_from_json(
    json: *const c_char,
    out: *mut *mut TsSpline,
) -> TsStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Failure::Invalid("descriptor is not valid UTF-8".into()))?;
        let inner = read_descriptor(text)?;
        *out = Box::into_raw(Box::new(TsSpline { inner }));
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
