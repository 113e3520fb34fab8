//! C ABI for `cubic-genus`.
//!
//! Every function returns a [`CgStatus`]. Results come back through out
//! pointers; objects behind opaque handles are released with the matching
//! `*_free` function. After a non-`OK` status the message is available from
//! [`cg_last_error`] on the same thread.
//!
//! # Safety
//!
//! Pointer arguments must be null or valid for the access the function
//! makes: out pointers writable, handles obtained from this library and not
//! yet freed. Null is reported as `CG_STATUS_NULL_POINTER`; the `*_free`
//! functions accept null.

// the contract above applies to every function taking a pointer
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubic_genus::census::{classify, collect_census, CensusSummary, CubicFieldRecord};
use cubic_genus::constants::{BoundedReal, ConstantEvaluator};
use cubic_genus::forms::{BinaryCubicForm, EnumerationConfig};
use cubic_genus::heilbronn::compute_bf;
use cubic_genus::padic::{discriminant_condition_series, normalized_factor};
use cubic_genus::{Error, Sign};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    Inconsistency = 1,
    InvalidArgument = 2,
    ResourceExceeded = 3,
    NullPointer = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgSign {
    Positive = 1,
    Negative = -1,
}

/// A real number `value ± abs_error`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgBounded {
    pub value: f64,
    pub abs_error: f64,
}

/// One cubic field: `delta = d·f²·9^t` with `t = three_type`, and the reduced
/// form `a x³ + b x²y + c xy² + d_coeff y³`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CgFieldRecord {
    pub delta: i64,
    pub d: i64,
    pub f: u64,
    pub three_type: u8,
    pub is_cyclic: bool,
    pub genus_exponent: u32,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d_coeff: i64,
}

/// Records and summary of a finished census.
pub struct CgCensus {
    records: Vec<CubicFieldRecord>,
    summary: CensusSummary,
}

/// Constant evaluator holding its Euler-product prime tables.
pub struct CgConstants {
    inner: ConstantEvaluator,
}

/// An exact rational number.
pub struct CgRational {
    text: CString,
    value: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CgStatus {
    if let Error::Shape(_) = e {
        return CgStatus::InvalidArgument;
    }
    match e.exit_code() {
        1 => CgStatus::Inconsistency,
        3 => CgStatus::ResourceExceeded,
        _ => CgStatus::InvalidArgument,
    }
}

fn guard<F: FnOnce() -> Result<(), CgStatus>>(f: F) -> CgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside cubic-genus".into());
            CgStatus::Panic
        }
    }
}

fn lib<T>(r: cubic_genus::Result<T>) -> Result<T, CgStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn out<'a, T>(p: *mut T) -> Result<&'a mut T, CgStatus> {
    // SAFETY: callers pass either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or_else(|| {
        set_error("null pointer argument".into());
        CgStatus::NullPointer
    })
}

fn handle<'a, T>(p: *const T) -> Result<&'a T, CgStatus> {
    // SAFETY: non-null handles were produced by this library and not freed.
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error("null handle".into());
        CgStatus::NullPointer
    })
}

fn sign_of(s: i32) -> Result<Sign, CgStatus> {
    Sign::of(s as i64).ok_or_else(|| {
        set_error("sign must be CG_SIGN_POSITIVE or CG_SIGN_NEGATIVE".into());
        CgStatus::InvalidArgument
    })
}

fn bounded(b: BoundedReal) -> CgBounded {
    CgBounded { value: b.value, abs_error: b.abs_error }
}

fn record(r: &CubicFieldRecord) -> CgFieldRecord {
    let dec = &r.decomposition;
    CgFieldRecord {
        delta: r.delta,
        d: dec.d,
        f: dec.f,
        three_type: dec.three_type,
        is_cyclic: r.is_cyclic,
        genus_exponent: r.genus_exponent,
        a: r.form.a,
        b: r.form.b,
        c: r.form.c,
        d_coeff: r.form.d,
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn cg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Classify the field of an irreducible binary cubic form whose discriminant
/// is fundamental.
#[no_mangle]
pub unsafe extern "C" fn cg_classify_form(a: i64, b: i64, c: i64, d: i64, out_record: *mut CgFieldRecord) -> CgStatus {
    guard(|| {
        let slot = out(out_record)?;
        *slot = record(&lib(classify(&BinaryCubicForm::new(a, b, c, d)))?);
        Ok(())
    })
}

/// Enumerate all cubic fields of the given sign with `|Δ| ≤ max_disc`.
/// `sign` is a [`CgSign`] value; `workers = 0` uses the available parallelism.
#[no_mangle]
pub unsafe extern "C" fn cg_census_run(max_disc: u64, sign: i32, workers: u32, out_census: *mut *mut CgCensus) -> CgStatus {
    guard(|| {
        let slot = out(out_census)?;
        let mut config = EnumerationConfig::default();
        if workers > 0 {
            config.workers = workers as usize;
        }
        let (records, summary) = lib(collect_census(max_disc, sign_of(sign)?, &config))?;
        *slot = Box::into_raw(Box::new(CgCensus { records, summary }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cg_census_len(census: *const CgCensus, out_len: *mut u64) -> CgStatus {
    guard(|| {
        *out(out_len)? = handle(census)?.records.len() as u64;
        Ok(())
    })
}

/// Record `index` in `(|Δ|, form)` order.
#[no_mangle]
pub unsafe extern "C" fn cg_census_record(census: *const CgCensus, index: u64, out_record: *mut CgFieldRecord) -> CgStatus {
    guard(|| {
        let census = handle(census)?;
        let slot = out(out_record)?;
        let r = census.records.get(index as usize).ok_or_else(|| {
            set_error(format!("index {index} out of range for {} records", census.records.len()));
            CgStatus::InvalidArgument
        })?;
        *slot = record(r);
        Ok(())
    })
}

/// Number of fields with genus exponent `k`.
#[no_mangle]
pub unsafe extern "C" fn cg_census_count_by_genus_exponent(census: *const CgCensus, k: u32, out_count: *mut u64) -> CgStatus {
    guard(|| {
        *out(out_count)? = handle(census)?.summary.counts_by_genus_exponent.get(&k).copied().unwrap_or(0);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cg_census_average_genus(census: *const CgCensus, out_value: *mut f64) -> CgStatus {
    guard(|| {
        *out(out_value)? = handle(census)?.summary.average_genus;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cg_census_free(census: *mut CgCensus) {
    if !census.is_null() {
        // SAFETY: produced by Box::into_raw in cg_census_run.
        drop(unsafe { Box::from_raw(census) });
    }
}

/// Build an evaluator with Euler products truncated at `cutoff`.
#[no_mangle]
pub unsafe extern "C" fn cg_constants_new(cutoff: u64, out_constants: *mut *mut CgConstants) -> CgStatus {
    guard(|| {
        let slot = out(out_constants)?;
        let inner = lib(ConstantEvaluator::new(cutoff))?;
        *slot = Box::into_raw(Box::new(CgConstants { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cg_constants_genus_one_density(c: *const CgConstants, out_value: *mut CgBounded) -> CgStatus {
    guard(|| {
        *out(out_value)? = bounded(handle(c)?.inner.genus_one_density());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cg_constants_average_genus(c: *const CgConstants, out_value: *mut CgBounded) -> CgStatus {
    guard(|| {
        *out(out_value)? = bounded(handle(c)?.inner.average_genus());
        Ok(())
    })
}

/// Limiting proportion of fields with genus number `3^k`.
#[no_mangle]
pub unsafe extern "C" fn cg_constants_genus_distribution(c: *const CgConstants, k: u32, out_value: *mut CgBounded) -> CgStatus {
    guard(|| {
        *out(out_value)? = bounded(handle(c)?.inner.genus_distribution(k));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cg_constants_free(c: *mut CgConstants) {
    if !c.is_null() {
        // SAFETY: produced by Box::into_raw in cg_constants_new.
        drop(unsafe { Box::from_raw(c) });
    }
}

fn rational_handle(r: &cubic_genus::arith::BigRational) -> *mut CgRational {
    let text = CString::new(r.to_string()).expect("digits only");
    Box::into_raw(Box::new(CgRational { text, value: r.to_f64().unwrap_or(f64::NAN) }))
}

/// Exact Heilbronn weight `b_F`.
#[no_mangle]
pub unsafe extern "C" fn cg_bf(f: u64, out_rational: *mut *mut CgRational) -> CgStatus {
    guard(|| {
        let slot = out(out_rational)?;
        *slot = rational_handle(&lib(compute_bf(f))?.b_f);
        Ok(())
    })
}

/// The 3-adic density `μ₃(S)` audited up to modulus `3^max_exponent`, and
/// its normalized local factor.
#[no_mangle]
pub unsafe extern "C" fn cg_padic_density(
    max_exponent: u32,
    out_mu3: *mut *mut CgRational,
    out_factor: *mut *mut CgRational,
) -> CgStatus {
    guard(|| {
        let mu_slot = out(out_mu3)?;
        let factor_slot = out(out_factor)?;
        let series = lib(discriminant_condition_series(max_exponent))?;
        let mu3 = &series[0].density;
        *mu_slot = rational_handle(mu3);
        *factor_slot = rational_handle(&normalized_factor(mu3));
        Ok(())
    })
}

/// `"num/den"` (or an integer), owned by the handle.
#[no_mangle]
pub unsafe extern "C" fn cg_rational_text(r: *const CgRational) -> *const c_char {
    // SAFETY: see `handle`.
    unsafe { r.as_ref() }.map_or(ptr::null(), |r| r.text.as_ptr())
}

/// Nearest double.
#[no_mangle]
pub unsafe extern "C" fn cg_rational_value(r: *const CgRational, out_value: *mut f64) -> CgStatus {
    guard(|| {
        *out(out_value)? = handle(r)?.value;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cg_rational_free(r: *mut CgRational) {
    if !r.is_null() {
        // SAFETY: produced by Box::into_raw in rational_handle.
        drop(unsafe { Box::from_raw(r) });
    }
}
