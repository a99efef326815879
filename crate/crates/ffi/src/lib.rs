//! C bindings for period-lab.
//!
//! Every fallible call returns a [`PlStatus`] and writes its result through an
//! out-pointer. On failure the message is kept per thread and can be read with
//! [`pl_last_error`]. Handles are opaque and must be released with the
//! matching `*_free` function; passing NULL to a `*_free` is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use period_lab::order::{ord, ord_bruteforce};
use period_lab::period_set::{closed_form, lower_bound, order_set_bruteforce, PeriodSet};
use period_lab::product::{period_set_over_ring, ProductRingCtx, RingMethod};
use period_lab::sequence::{period_bruteforce, Recurrence};
use period_lab::text::{format_poly, parse_element_list, parse_field, parse_poly};
use period_lab::{Error, FieldCtx, Poly};

/// A finite field `F_q`.
pub struct PlField(FieldCtx);

/// A polynomial over a [`PlField`]. It keeps its own copy of the field.
pub struct PlPoly(Poly);

/// A sorted set of periods.
pub struct PlPeriodSet(PeriodSet);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    InvalidArgument = 5,
    ZeroPolynomial = 6,
    BudgetExceeded = 7,
    Overflow = 8,
    OutOfRange = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

impl From<&Error> for PlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => PlStatus::Parse,
            Error::CompositeCharacteristic(_)
            | Error::CharacteristicTooLarge(_)
            | Error::ZeroExtensionDegree
            | Error::FieldTooLarge { .. }
            | Error::ReducibleModulus(_)
            | Error::NonMonicModulus
            | Error::NotPrimePower(_) => PlStatus::InvalidField,
            Error::ZeroPolynomial => PlStatus::ZeroPolynomial,
            Error::BudgetExceeded { .. } | Error::LimitExceeded(_) | Error::CapExceeded(_) => {
                PlStatus::BudgetExceeded
            }
            Error::Overflow(_) => PlStatus::Overflow,
            Error::OutOfRange(_) | Error::IndexOutOfRange { .. } | Error::DegreeOutOfRange(_) => {
                PlStatus::OutOfRange
            }
            _ => PlStatus::InvalidArgument,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(PlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(PlStatus::from(&e), e.to_string())
    }
}

/// Runs `f`, records any failure and converts panics into [`PlStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PlStatus::Panic
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(PlStatus::NullPointer, format!("{name} is NULL")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(PlStatus::NullPointer, format!("{name} is NULL")))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PlStatus::NullPointer, format!("{name} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(PlStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

fn boxed<T>(slot: &mut *mut T, value: T) {
    *slot = Box::into_raw(Box::new(value));
}

/// Message for the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a field from `p`, `q`, `p^e` or `p^e/<modulus>`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and the out-pointer valid.
#[no_mangle]
pub unsafe extern "C" fn pl_field_new(
    spec: *const c_char,
    out_field: *mut *mut PlField,
) -> PlStatus {
    guard(|| {
        let slot = out(out_field, "out")?;
        *slot = ptr::null_mut();
        boxed(slot, PlField(parse_field(text(spec, "spec")?)?));
        Ok(())
    })
}

/// # Safety
/// `field` must be NULL or a handle from [`pl_field_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_field_free(field: *mut PlField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order `q`, or 0 if `field` is NULL.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_field_q(field: *const PlField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.q())
}

/// Characteristic `p`, or 0 if `field` is NULL.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_field_p(field: *const PlField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.p())
}

/// Extension degree `e`, or 0 if `field` is NULL.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_field_e(field: *const PlField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.e() as u32)
}

/// Parses a polynomial such as `x^5+x^4+1` or `x^2+[0,1]*x+1`.
///
/// # Safety
/// `field` must be a live handle, `src` a NUL-terminated string and the out-pointer valid.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_parse(
    field: *const PlField,
    src: *const c_char,
    out_poly: *mut *mut PlPoly,
) -> PlStatus {
    guard(|| {
        let slot = out(out_poly, "out")?;
        *slot = ptr::null_mut();
        let f = arg(field, "field")?;
        boxed(slot, PlPoly(parse_poly(&f.0, text(src, "src")?)?));
        Ok(())
    })
}

/// # Safety
/// `poly` must be NULL or a handle from [`pl_poly_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_free(poly: *mut PlPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree of `poly`, or -1 for the zero polynomial and for NULL.
///
/// # Safety
/// `poly` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_degree(poly: *const PlPoly) -> i64 {
    poly.as_ref()
        .and_then(|p| p.0.deg())
        .map_or(-1, |d| d as i64)
}

/// Writes the canonical text form into `buf`, NUL-terminated.
///
/// `needed` receives the buffer size required including the terminator. If
/// `cap` is too small nothing is written and `BufferTooSmall` is returned, so
/// a first call with `buf = NULL, cap = 0` queries the size.
///
/// # Safety
/// `poly` must be a live handle, `buf` must hold `cap` bytes (or be NULL when
/// `cap` is 0) and `needed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_format(
    poly: *const PlPoly,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PlStatus {
    guard(|| {
        let p = arg(poly, "poly")?;
        let s = format_poly(&p.0, 'x');
        let need = s.len() + 1;
        *out(needed, "needed")? = need;
        if cap < need || buf.is_null() {
            return Err(Fail(
                PlStatus::BufferTooSmall,
                format!("buffer of {cap} bytes, need {need}"),
            ));
        }
        ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
        *buf.add(s.len()) = 0;
        Ok(())
    })
}

/// `ord(f)` by factorization.
///
/// # Safety
/// `poly` must be a live handle and `order` valid.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_order(poly: *const PlPoly, order: *mut u64) -> PlStatus {
    guard(|| {
        let p = arg(poly, "poly")?;
        *out(order, "order")? = ord(&p.0)?.order;
        Ok(())
    })
}

/// `ord(f)` by powering `x` modulo `f`, giving up after `limit` steps
/// (0 means the default bound `q^deg - 1`).
///
/// # Safety
/// `poly` must be a live handle and `order` valid.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_order_bruteforce(
    poly: *const PlPoly,
    limit: u64,
    order: *mut u64,
) -> PlStatus {
    guard(|| {
        let p = arg(poly, "poly")?;
        *out(order, "order")? = ord_bruteforce(&p.0, (limit > 0).then_some(limit))?;
        Ok(())
    })
}

/// Least period of the sequence `a_{n+k} = sum c_i a_{n+i}` from the given
/// initial terms. Both lists are comma separated field elements, `c_0` first.
///
/// # Safety
/// `field` must be a live handle, the strings NUL-terminated, `period` valid.
#[no_mangle]
pub unsafe extern "C" fn pl_sequence_period(
    field: *const PlField,
    coeffs: *const c_char,
    init: *const c_char,
    period: *mut u64,
) -> PlStatus {
    guard(|| {
        let f = &arg(field, "field")?.0;
        let rec = Recurrence::new(f, parse_element_list(f, text(coeffs, "coeffs")?)?)?;
        let s0 = parse_element_list(f, text(init, "init")?)?;
        *out(period, "period")? = period_bruteforce(&rec, &s0)?;
        Ok(())
    })
}

/// Closed-form period set `P(k, F_q)` for `k` in 1..=4.
///
/// # Safety
/// The out-pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_period_set_closed_form(
    k: u32,
    q: u64,
    out_set: *mut *mut PlPeriodSet,
) -> PlStatus {
    guard(|| {
        let slot = out(out_set, "out")?;
        *slot = ptr::null_mut();
        boxed(slot, PlPeriodSet(closed_form(k as usize, q)?));
        Ok(())
    })
}

/// Guaranteed subset of `P(k, F_q)` valid for every `k`.
///
/// # Safety
/// The out-pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_period_set_lower_bound(
    k: u32,
    q: u64,
    out_set: *mut *mut PlPeriodSet,
) -> PlStatus {
    guard(|| {
        let slot = out(out_set, "out")?;
        *slot = ptr::null_mut();
        boxed(slot, PlPeriodSet(lower_bound(k as usize, q)?));
        Ok(())
    })
}

/// `P(k, F_q)` by enumerating every degree `k` polynomial with nonzero
/// constant term. Fails with `BudgetExceeded` past `budget` polynomials.
///
/// # Safety
/// `field` must be a live handle and the out-pointer valid.
#[no_mangle]
pub unsafe extern "C" fn pl_period_set_bruteforce(
    field: *const PlField,
    k: u32,
    budget: u64,
    out_set: *mut *mut PlPeriodSet,
) -> PlStatus {
    guard(|| {
        let slot = out(out_set, "out")?;
        *slot = ptr::null_mut();
        let f = arg(field, "field")?;
        boxed(
            slot,
            PlPeriodSet(order_set_bruteforce(&f.0, k as usize, budget)?),
        );
        Ok(())
    })
}

/// `P(k, R)` for `R = F_{q_1} ⊕ ... ⊕ F_{q_r}` given as comma separated field
/// specs, e.g. `"2,3,5"`.
///
/// # Safety
/// `components` must be NUL-terminated and the out-pointer valid.
#[no_mangle]
pub unsafe extern "C" fn pl_ring_period_set(
    components: *const c_char,
    k: u32,
    budget: u64,
    out_set: *mut *mut PlPeriodSet,
) -> PlStatus {
    guard(|| {
        let slot = out(out_set, "out")?;
        *slot = ptr::null_mut();
        let specs: Vec<&str> = text(components, "components")?.split(',').collect();
        let ring = ProductRingCtx::from_specs(&specs)?;
        let sets = period_set_over_ring(k as usize, &ring, RingMethod::Auto, budget)?;
        boxed(slot, PlPeriodSet(sets.period_set));
        Ok(())
    })
}

/// Number of elements, or 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_period_set_len(set: *const PlPeriodSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// The `index`-th smallest element (0-based).
///
/// # Safety
/// `set` must be a live handle and `value` valid.
#[no_mangle]
pub unsafe extern "C" fn pl_period_set_get(
    set: *const PlPeriodSet,
    index: usize,
    value: *mut u64,
) -> PlStatus {
    guard(|| {
        let s = &arg(set, "set")?.0;
        let v = s.elems().get(index).copied().ok_or_else(|| {
            Fail(
                PlStatus::OutOfRange,
                format!("index {index} out of range for set of {}", s.len()),
            )
        })?;
        *out(value, "value")? = v;
        Ok(())
    })
}

/// # Safety
/// `set` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_period_set_free(set: *mut PlPeriodSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}
