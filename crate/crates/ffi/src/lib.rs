//! C ABI over `qforms`.
//!
//! Objects are opaque handles created by `qf_*_new`/`qf_*_from_*` and released
//! with the matching `qf_*_free`. Every fallible call returns a [`QfStatus`];
//! on failure `qf_last_error_message` describes the error for the calling
//! thread. Strings returned through out-parameters are owned by the caller
//! and must be released with [`qf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qforms::flat_model::OrbifoldQuotient;
use qforms::io;
use qforms::lefschetz::{rank_table_csv, Decomposition, Lefschetz};
use qforms::multivector::Form;
use qforms::Error;

/// Result codes. `QF_STATUS_OK` is zero; every other value is an error.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidDimension = 4,
    DimensionMismatch = 5,
    Degree = 6,
    OutOfTheoremRange = 7,
    LatticeViolation = 8,
    Group = 9,
    Numeric = 10,
    IndexOutOfRange = 11,
    Panic = 12,
}

impl From<&Error> for QfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidDimension(_) => QfStatus::InvalidDimension,
            Error::DimensionMismatch { .. } | Error::Shape(_) => QfStatus::DimensionMismatch,
            Error::DegreeMismatch { .. }
            | Error::DegreeOverflow { .. }
            | Error::DegreeUnderflow { .. }
            | Error::DegreeOutOfRange { .. } => QfStatus::Degree,
            Error::OutOfTheoremRange { .. } => QfStatus::OutOfTheoremRange,
            Error::LatticeViolation { .. } => QfStatus::LatticeViolation,
            Error::OrderExceeded { .. } | Error::InvalidGroupElement(_) => QfStatus::Group,
            Error::SingularNormalEquations | Error::SingularCayley | Error::SignInconsistent { .. } => {
                QfStatus::Numeric
            }
            Error::Parse(_) | Error::Io(_) => QfStatus::Parse,
        }
    }
}

/// Kraines data and Lefschetz operators for a fixed quaternionic dimension.
pub struct QfKraines(Lefschetz);

/// Homogeneous exterior form with exact rational coefficients.
pub struct QfForm(Form);

/// Effective decomposition of a form.
pub struct QfDecomposition(Decomposition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(QfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(QfStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> QfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QfStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| Failure(QfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure(QfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(QfStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(QfStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(QfStatus::Panic, "string contained NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_new(n: usize, out: *mut *mut QfKraines) -> QfStatus {
    guard(|| write_out(out, QfKraines(Lefschetz::new(n)?)))
}

/// # Safety
/// `k` must be null or a handle from `qf_kraines_new`, freed once.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_free(k: *mut QfKraines) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Quaternionic dimension, or 0 for a null handle.
///
/// # Safety
/// `k` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_n(k: *const QfKraines) -> usize {
    k.as_ref().map_or(0, |k| k.0.n())
}

/// Copy of the fundamental 4-form.
///
/// # Safety
/// `k` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_omega(k: *const QfKraines, out: *mut *mut QfForm) -> QfStatus {
    guard(|| {
        let k = deref(k, "kraines")?;
        write_out(out, QfForm(k.0.kraines().omega().clone()))
    })
}

/// `L a = Ω ∧ a`.
///
/// # Safety
/// `k`, `a` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_l(
    k: *const QfKraines,
    a: *const QfForm,
    out: *mut *mut QfForm,
) -> QfStatus {
    guard(|| {
        let (k, a) = (deref(k, "kraines")?, deref(a, "form")?);
        write_out(out, QfForm(k.0.kraines().L(&a.0)?))
    })
}

/// Adjoint `Λ` of `L`; the form must have degree at least 4.
///
/// # Safety
/// `k`, `a` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_lambda(
    k: *const QfKraines,
    a: *const QfForm,
    out: *mut *mut QfForm,
) -> QfStatus {
    guard(|| {
        let (k, a) = (deref(k, "kraines")?, deref(a, "form")?);
        write_out(out, QfForm(k.0.kraines().Lambda(&a.0)?))
    })
}

/// Writes `is_effective` as 0 or 1.
///
/// # Safety
/// `k`, `a` must be live handles and `is_effective` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_is_effective(
    k: *const QfKraines,
    a: *const QfForm,
    is_effective: *mut bool,
) -> QfStatus {
    guard(|| {
        let (k, a) = (deref(k, "kraines")?, deref(a, "form")?);
        let flag = is_effective
            .as_mut()
            .ok_or_else(|| Failure(QfStatus::NullPointer, "output pointer is null".into()))?;
        *flag = k.0.is_effective(&a.0)?;
        Ok(())
    })
}

/// Decomposes `a` into effective components. Degrees above `n + 1` need
/// `force`.
///
/// # Safety
/// `k`, `a` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_kraines_decompose(
    k: *const QfKraines,
    a: *const QfForm,
    force: bool,
    out: *mut *mut QfDecomposition,
) -> QfStatus {
    guard(|| {
        let (k, a) = (deref(k, "kraines")?, deref(a, "form")?);
        write_out(out, QfDecomposition(k.0.decompose(&a.0, force)?))
    })
}

/// Rank table of `L` for degrees `0..=max_degree` as CSV.
///
/// # Safety
/// `out` must be writable; free the result with `qf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn qf_rank_table_csv(n: usize, max_degree: usize, out: *mut *mut c_char) -> QfStatus {
    guard(|| {
        let rows = Lefschetz::new(n)?.rank_table(max_degree)?;
        write_string(out, rank_table_csv(&rows))
    })
}

/// Parses a form from its JSON file representation.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_form_from_json(json: *const c_char, out: *mut *mut QfForm) -> QfStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        write_out(out, QfForm(io::form_from_json(text)?))
    })
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_form_to_json(f: *const QfForm, out: *mut *mut c_char) -> QfStatus {
    guard(|| write_string(out, io::form_to_json(&deref(f, "form")?.0)))
}

/// Degree of the form, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_form_degree(f: *const QfForm) -> usize {
    f.as_ref().map_or(0, |f| f.0.degree())
}

/// True for the zero form and for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_form_is_zero(f: *const QfForm) -> bool {
    f.as_ref().is_none_or(|f| f.0.is_zero())
}

/// # Safety
/// `f` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn qf_form_free(f: *mut QfForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of components, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_decomposition_len(d: *const QfDecomposition) -> usize {
    d.as_ref().map_or(0, |d| d.0.components.len())
}

/// Copy of component `i` (the one multiplied by `L^i`).
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_decomposition_component(
    d: *const QfDecomposition,
    i: usize,
    out: *mut *mut QfForm,
) -> QfStatus {
    guard(|| {
        let d = deref(d, "decomposition")?;
        let c = d.0.components.get(i).ok_or_else(|| {
            Failure(
                QfStatus::IndexOutOfRange,
                format!("component {i} of {}", d.0.components.len()),
            )
        })?;
        write_out(out, QfForm(c.clone()))
    })
}

/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_decomposition_residual(
    d: *const QfDecomposition,
    out: *mut *mut QfForm,
) -> QfStatus {
    guard(|| write_out(out, QfForm(deref(d, "decomposition")?.0.residual.clone())))
}

/// True when no normal-equation step was singular.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_decomposition_is_unique(d: *const QfDecomposition) -> bool {
    d.as_ref().is_some_and(|d| d.0.is_unique())
}

/// # Safety
/// `d` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn qf_decomposition_free(d: *mut QfDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Cohomology report JSON for the torus quotient by the group described in
/// `group_json` (group file format).
///
/// # Safety
/// `group_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_orbifold_betti_json(
    group_json: *const c_char,
    out: *mut *mut c_char,
) -> QfStatus {
    guard(|| {
        let text = read_str(group_json, "group_json")?;
        let group = io::group_from_json(text)?.to_group()?;
        let report = OrbifoldQuotient::new(group)?.betti_report()?;
        write_string(out, report.to_json())
    })
}
