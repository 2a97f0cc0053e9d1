//! C interface to `d0q`.
//!
//! All state lives behind an opaque [`D0qContext`] created with
//! [`d0q_context_new`]. Functions return a [`D0qStatus`]; on failure the
//! message is available from [`d0q_last_error`] until the next call on the
//! same context. Strings handed out through `char **out` parameters are
//! owned by the caller and must be released with [`d0q_string_free`].
//!
//! A context is not thread-safe; use one per thread.
//!
//! # Safety
//!
//! Every pointer argument must be null or valid for the access described
//! by its function: contexts come from [`d0q_context_new`], input strings
//! are nul-terminated, and `out` points to writable storage for one
//! pointer.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use d0q::arith::{parse_rational, parse_real, reported_digits, to_decimal_string, Integer, DEFAULT_PREC, MIN_PREC};
use d0q::curve::CurveModel;
use d0q::eisenstein::{HeckeIndex, QExpansion, Twist};
use d0q::periods::period_lattice;
use d0q::recognize::recognize_rational;
use d0q::verify::{run_all, table_row, verify_instance, ReportStatus, VerificationReport};
use d0q::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D0qStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    Domain = 3,
    SingularCurve = 4,
    InadmissibleParameter = 5,
    NumericalFailure = 6,
    /// Recognition found no rational, or a verification did not match.
    NotFound = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D0qSeries {
    Gk = 0,
    Hk = 1,
    Alpha = 2,
    Cusp0Plain = 3,
    Cusp0Half = 4,
}

/// Opaque handle.
pub struct D0qContext {
    prec_bits: u32,
    last_error: CString,
}

impl D0qContext {
    fn fail(&mut self, status: D0qStatus, msg: impl Into<String>) -> D0qStatus {
        let msg = msg.into().replace('\0', " ");
        self.last_error = CString::new(msg).expect("nul bytes were removed");
        status
    }

    fn fail_with(&mut self, e: Error) -> D0qStatus {
        let status = match &e {
            Error::InvalidArgument(_) | Error::AmbiguousRecognition(_) => D0qStatus::InvalidArgument,
            Error::Domain(_) | Error::Pole(_) | Error::NotInvertible => D0qStatus::Domain,
            Error::SingularCurve => D0qStatus::SingularCurve,
            Error::InadmissibleParameter { .. } => D0qStatus::InadmissibleParameter,
            Error::NoTorsionMatch { .. }
            | Error::InsufficientTruncation { .. }
            | Error::QuadratureDiverged { .. }
            | Error::PathDisagreement { .. } => D0qStatus::NumericalFailure,
        };
        self.fail(status, e.to_string())
    }
}

fn guard(ctx: *mut D0qContext, body: impl FnOnce(&mut D0qContext) -> D0qStatus) -> D0qStatus {
    // SAFETY: the caller passes a pointer from d0q_context_new or null.
    let Some(ctx) = (unsafe { ctx.as_mut() }) else {
        return D0qStatus::NullPointer;
    };
    ctx.last_error = CString::default();
    match catch_unwind(AssertUnwindSafe(|| body(&mut *ctx))) {
        Ok(status) => status,
        Err(_) => ctx.fail(D0qStatus::Panic, "internal panic"),
    }
}

fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error::InvalidArgument(format!("{what} is null")));
    }
    // SAFETY: non-null, and the caller promises a nul-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Error::InvalidArgument(format!("{what} is not UTF-8")))
}

fn write_out(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    if out.is_null() {
        return Err(Error::InvalidArgument("output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Error::InvalidArgument("output contains a nul byte".into()))?;
    // SAFETY: out is non-null and points to writable storage for one pointer.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn finish(ctx: &mut D0qContext, r: Result<D0qStatus, Error>) -> D0qStatus {
    r.unwrap_or_else(|e| ctx.fail_with(e))
}

/// New context working at `prec_bits` (0 selects the default of 384).
/// Returns null if `prec_bits` is below the minimum.
#[no_mangle]
pub extern "C" fn d0q_context_new(prec_bits: u32) -> *mut D0qContext {
    let prec_bits = if prec_bits == 0 { DEFAULT_PREC } else { prec_bits };
    if prec_bits < MIN_PREC {
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(D0qContext {
        prec_bits,
        last_error: CString::default(),
    }))
}

/// # Safety
/// `ctx` must come from `d0q_context_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d0q_context_free(ctx: *mut D0qContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// See the crate-level safety section.
#[no_mangle]
pub unsafe extern "C" fn d0q_context_precision(ctx: *const D0qContext) -> u32 {
    // SAFETY: pointer from d0q_context_new or null.
    unsafe { ctx.as_ref() }.map_or(0, |c| c.prec_bits)
}

/// Message for the last failed call, or "" if it succeeded. Owned by the
/// context.
/// # Safety
/// See the crate-level safety section.
#[no_mangle]
pub unsafe extern "C" fn d0q_last_error(ctx: *const D0qContext) -> *const c_char {
    static EMPTY: &[u8] = b"\0";
    // SAFETY: pointer from d0q_context_new or null.
    match unsafe { ctx.as_ref() } {
        Some(c) => c.last_error.as_ptr(),
        None => EMPTY.as_ptr().cast(),
    }
}

/// # Safety
/// `s` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d0q_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Real period `Ω⁺` of `y² + a1xy + a3y = x³ + a2x² + a4x + a6`.
/// `coeffs` holds five rational strings `a1, a2, a3, a4, a6`; the result is
/// a decimal string.
/// # Safety
/// See the crate-level safety section.
#[no_mangle]
pub unsafe extern "C" fn d0q_real_period(
    ctx: *mut D0qContext,
    coeffs: *const *const c_char,
    out: *mut *mut c_char,
) -> D0qStatus {
    guard(ctx, |ctx| {
        let r = (|| {
            if coeffs.is_null() {
                return Err(Error::InvalidArgument("coefficient array is null".into()));
            }
            let mut a = Vec::with_capacity(5);
            for i in 0..5 {
                // SAFETY: the caller provides five entries.
                let p = unsafe { *coeffs.add(i) };
                a.push(parse_rational(read_str(p, "coefficient")?)?);
            }
            let [a1, a2, a3, a4, a6]: [_; 5] = a.try_into().expect("five entries");
            let curve = CurveModel::new(a1, a2, a3, a4, a6)?;
            let pd = period_lattice(&curve, ctx.prec_bits)?;
            write_out(out, to_decimal_string(&pd.omega_plus, reported_digits(ctx.prec_bits)))?;
            Ok(D0qStatus::Ok)
        })();
        finish(ctx, r)
    })
}

/// Verifies table row `(n, k)` at parameter `t` (rational string) and
/// writes the report as a JSON object. Returns `NOT_FOUND` when the report
/// is not a match; the JSON is written either way.
/// # Safety
/// See the crate-level safety section.
#[no_mangle]
pub unsafe extern "C" fn d0q_verify_instance_json(
    ctx: *mut D0qContext,
    n: u32,
    k: u32,
    t: *const c_char,
    out: *mut *mut c_char,
) -> D0qStatus {
    guard(ctx, |ctx| {
        let r = (|| {
            let row = table_row(n, k)?;
            let t = parse_rational(read_str(t, "parameter")?)?;
            let report = verify_instance(row, &t, ctx.prec_bits);
            write_out(out, report.to_json().to_string())?;
            Ok(report_status(ctx, &report))
        })();
        finish(ctx, r)
    })
}

fn report_status(ctx: &mut D0qContext, report: &VerificationReport) -> D0qStatus {
    match report.status {
        ReportStatus::Match => D0qStatus::Ok,
        ReportStatus::Mismatch => ctx.fail(D0qStatus::NotFound, "value does not match the table"),
        ReportStatus::InsufficientPrecision => ctx.fail(D0qStatus::Domain, "precision too low for recognition"),
        ReportStatus::Error => ctx.fail(D0qStatus::NumericalFailure, report.error.clone().unwrap_or_default()),
    }
}

/// Runs every table row with `samples` parameters each and writes a JSON
/// array of reports. `OK` iff all match.
/// # Safety
/// See the crate-level safety section.
#[no_mangle]
pub unsafe extern "C" fn d0q_verify_all_json(ctx: *mut D0qContext, samples: u32, out: *mut *mut c_char) -> D0qStatus {
    guard(ctx, |ctx| {
        let r = (|| {
            let summary = run_all(ctx.prec_bits, samples as usize);
            let arr: Vec<_> = summary.reports.iter().map(VerificationReport::to_json).collect();
            write_out(out, json_array(arr))?;
            if summary.all_match() {
                Ok(D0qStatus::Ok)
            } else {
                Ok(ctx.fail(D0qStatus::NotFound, "some instances did not match"))
            }
        })();
        finish(ctx, r)
    })
}

fn json_array<T: ToString>(items: Vec<T>) -> String {
    let body: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", body.join(","))
}

/// Recognizes the decimal `value` as `p/q` with height at most
/// `max_height` within `tol`. `NOT_FOUND` if there is none.
/// # Safety
/// See the crate-level safety section.
#[no_mangle]
pub unsafe extern "C" fn d0q_recognize(
    ctx: *mut D0qContext,
    value: *const c_char,
    max_height: u64,
    tol: *const c_char,
    out: *mut *mut c_char,
) -> D0qStatus {
    guard(ctx, |ctx| {
        let r = (|| {
            let x = parse_real(read_str(value, "value")?, ctx.prec_bits)?;
            let tol = parse_real(read_str(tol, "tolerance")?, 64)?;
            match recognize_rational(&x, &Integer::from(max_height), &tol)? {
                Some(rec) => {
                    write_out(out, rec.value.to_string())?;
                    Ok(D0qStatus::Ok)
                }
                None => Ok(ctx.fail(D0qStatus::NotFound, "no rational within the tolerance")),
            }
        })();
        finish(ctx, r)
    })
}

/// Exact coefficients `n = 0..terms-1` as `n/d<TAB>polynomial in z` lines.
/// `k` is used by `GK`, `HK` and as `ℓ` by the cusp-0 series; `a`, `b` by
/// `ALPHA`.
/// # Safety
/// See the crate-level safety section.
#[no_mangle]
pub unsafe extern "C" fn d0q_expand(
    ctx: *mut D0qContext,
    series: D0qSeries,
    n: u32,
    k: i64,
    a: i64,
    b: i64,
    terms: u32,
    out: *mut *mut c_char,
) -> D0qStatus {
    guard(ctx, |ctx| {
        let r = (|| {
            if terms == 0 {
                return Err(Error::InvalidArgument("terms must be positive".into()));
            }
            let n_max = terms as usize - 1;
            let exp = match series {
                D0qSeries::Gk => QExpansion::gk(n, k, n_max)?,
                D0qSeries::Hk => QExpansion::hk(n, k, n_max)?,
                D0qSeries::Alpha => QExpansion::alpha(&HeckeIndex::new(n, a, b)?, n_max),
                D0qSeries::Cusp0Plain => QExpansion::cusp0(n, k, Twist::Plain, n_max)?,
                D0qSeries::Cusp0Half => QExpansion::cusp0(n, k, Twist::Half, n_max)?,
            };
            write_out(out, exp.dump())?;
            Ok(D0qStatus::Ok)
        })();
        finish(ctx, r)
    })
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn d0q_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
