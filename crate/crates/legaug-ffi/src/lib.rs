//! C interface to the legaug library.
//!
//! The surface is deliberately small: parse a front into an opaque handle,
//! query invariants as JSON strings or plain counts, free what you were
//! given. Every function returns a status code; out-parameters are written
//! only on `LEGAUG_OK`. Strings handed out are NUL-terminated, UTF-8, and
//! owned by the caller until passed to `legaug_string_free`.
//!
//! The generated header lands in `include/legaug.h` at build time.

use legaug::aug::{brute_count, ruling_count, variety_dim};
use legaug::dga::Dga;
use legaug::error::Error;
use legaug::front::{parse_front, FrontDiagram};
use legaug::maslov::MaslovPotential;
use legaug::mcs::aform::count_a_forms;
use legaug::report;
use legaug::rulings::ruling_polynomial;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every interface function.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum LegaugStatus {
    LegaugOk = 0,
    /// A required pointer argument was null.
    LegaugNullArgument = 1,
    /// Input text was not valid UTF-8.
    LegaugUtf8Error = 2,
    /// The front file failed to parse or validate.
    LegaugParseError = 3,
    /// The grading modulus is incompatible with the diagram.
    LegaugGradingError = 4,
    /// An enumeration exceeded its cap, or a count overflowed 64 bits.
    LegaugScaleError = 5,
    /// Any other computation failure.
    LegaugComputeError = 6,
}

use LegaugStatus::*;

/// Opaque parsed diagram, created by `legaug_diagram_parse`.
pub struct LegaugDiagram(FrontDiagram);

fn status_of(e: &Error) -> LegaugStatus {
    match e {
        Error::Syntax { .. } | Error::Shape(_) | Error::Mark(_) => LegaugParseError,
        Error::Grading { .. } => LegaugGradingError,
        Error::Scale { .. } => LegaugScaleError,
        _ => LegaugComputeError,
    }
}

fn hand_out(s: String, out: *mut *mut c_char) -> LegaugStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            LegaugOk
        }
        Err(_) => LegaugComputeError,
    }
}

fn guarded(f: impl FnOnce() -> LegaugStatus) -> LegaugStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(LegaugComputeError)
}

/// Cap 0 selects the library default.
fn cap_or_default(cap: u64) -> u128 {
    if cap == 0 {
        legaug::aug::DEFAULT_CAP
    } else {
        cap as u128
    }
}

/// Parse front text into a diagram handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` to a valid
/// pointer slot. On `LEGAUG_OK` the handle must eventually be released
/// with `legaug_diagram_free`.
#[no_mangle]
pub unsafe extern "C" fn legaug_diagram_parse(
    text: *const c_char,
    out: *mut *mut LegaugDiagram,
) -> LegaugStatus {
    if text.is_null() || out.is_null() {
        return LegaugNullArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return LegaugUtf8Error;
    };
    guarded(|| match parse_front(text) {
        Ok(d) => {
            *out = Box::into_raw(Box::new(LegaugDiagram(d)));
            LegaugOk
        }
        Err(e) => status_of(&e),
    })
}

/// Release a diagram handle. A null handle is a no-op.
///
/// # Safety
/// `d` must be a handle from `legaug_diagram_parse` that has not already
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn legaug_diagram_free(d: *mut LegaugDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Release a string handed out by this library. A null pointer is a no-op.
///
/// # Safety
/// `s` must be a string returned by one of these functions that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn legaug_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Write the diagram back out in front-file syntax.
///
/// # Safety
/// `d` must be a live handle, `out` a valid pointer slot; the string must
/// be released with `legaug_string_free`.
#[no_mangle]
pub unsafe extern "C" fn legaug_diagram_serialize(
    d: *const LegaugDiagram,
    out: *mut *mut c_char,
) -> LegaugStatus {
    if d.is_null() || out.is_null() {
        return LegaugNullArgument;
    }
    let d = &(*d).0;
    guarded(|| hand_out(d.serialize(), out))
}

/// The m-graded ruling polynomial as JSON: {"terms": [[exponent, coeff], ...]}.
///
/// # Safety
/// `d` must be a live handle, `out` a valid pointer slot; the string must
/// be released with `legaug_string_free`.
#[no_mangle]
pub unsafe extern "C" fn legaug_ruling_polynomial_json(
    d: *const LegaugDiagram,
    m: i64,
    out: *mut *mut c_char,
) -> LegaugStatus {
    if d.is_null() || out.is_null() {
        return LegaugNullArgument;
    }
    let d = &(*d).0;
    guarded(|| {
        let mu = MaslovPotential::compute(d);
        match ruling_polynomial(d, &mu, m).map(|p| serde_json::to_string(&p)) {
            Ok(Ok(s)) => hand_out(s, out),
            Ok(Err(_)) => LegaugComputeError,
            Err(e) => status_of(&e),
        }
    })
}

/// Generators and differentials of the Chekanov-Eliashberg algebra as JSON.
///
/// # Safety
/// `d` must be a live handle, `out` a valid pointer slot; the string must
/// be released with `legaug_string_free`.
#[no_mangle]
pub unsafe extern "C" fn legaug_dga_json(
    d: *const LegaugDiagram,
    out: *mut *mut c_char,
) -> LegaugStatus {
    if d.is_null() || out.is_null() {
        return LegaugNullArgument;
    }
    let d = &(*d).0;
    guarded(|| {
        let rep = report::dga_report(&Dga::new(d));
        match serde_json::to_string(&rep) {
            Ok(s) => hand_out(s, out),
            Err(_) => LegaugComputeError,
        }
    })
}

/// Count m-graded augmentations to GF(q). `method` is "brute", "mcs" or
/// "ruling"; a null method means "ruling". Cap 0 selects the default
/// enumeration bound. Counts above 2^64 - 1 report `LEGAUG_SCALE_ERROR`.
///
/// # Safety
/// `d` must be a live handle, `out_count` a valid slot, and `method` null
/// or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn legaug_aug_count(
    d: *const LegaugDiagram,
    m: i64,
    q: u64,
    method: *const c_char,
    cap: u64,
    out_count: *mut u64,
) -> LegaugStatus {
    if d.is_null() || out_count.is_null() {
        return LegaugNullArgument;
    }
    let method = if method.is_null() {
        "ruling"
    } else {
        match CStr::from_ptr(method).to_str() {
            Ok(s) => s,
            Err(_) => return LegaugUtf8Error,
        }
    };
    let d = &(*d).0;
    guarded(|| {
        let mu = MaslovPotential::compute(d);
        let counted = match method {
            "brute" => brute_count(&Dga::new(d), m, q, cap_or_default(cap)),
            "mcs" => count_a_forms(d, &mu, m, q, cap_or_default(cap)),
            "ruling" => ruling_count(d, &mu, m, q),
            _ => return LegaugComputeError,
        };
        match counted {
            Ok(n) => match u64::try_from(n) {
                Ok(n) => {
                    *out_count = n;
                    LegaugOk
                }
                Err(_) => LegaugScaleError,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Run all three counts and the polynomial identity for one (m, q); the
/// JSON row matches the command line `verify` verb. Cap 0 selects the
/// default enumeration bound.
///
/// # Safety
/// `d` must be a live handle, `out` a valid pointer slot; the string must
/// be released with `legaug_string_free`.
#[no_mangle]
pub unsafe extern "C" fn legaug_verify_json(
    d: *const LegaugDiagram,
    m: i64,
    q: u64,
    cap: u64,
    out: *mut *mut c_char,
) -> LegaugStatus {
    if d.is_null() || out.is_null() {
        return LegaugNullArgument;
    }
    let d = &(*d).0;
    guarded(|| {
        let mu = MaslovPotential::compute(d);
        let dga = Dga::new(d);
        match report::verify_row(d, &dga, &mu, m, q, cap_or_default(cap)) {
            Ok(row) => match serde_json::to_value(&row).and_then(|v| serde_json::to_string(&v)) {
                Ok(s) => hand_out(s, out),
                Err(_) => LegaugComputeError,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Dimension of the m-graded augmentation variety; writes -1 when the
/// variety is empty.
///
/// # Safety
/// `d` must be a live handle and `out_dim` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn legaug_variety_dim(
    d: *const LegaugDiagram,
    m: i64,
    out_dim: *mut i64,
) -> LegaugStatus {
    if d.is_null() || out_dim.is_null() {
        return LegaugNullArgument;
    }
    let d = &(*d).0;
    guarded(|| {
        let mu = MaslovPotential::compute(d);
        match variety_dim(d, &mu, m) {
            Ok(dim) => {
                *out_dim = dim.unwrap_or(-1);
                LegaugOk
            }
            Err(e) => status_of(&e),
        }
    })
}
