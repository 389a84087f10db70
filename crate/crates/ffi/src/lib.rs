//! C ABI over the hilb3 engine.
//!
//! Results are returned through opaque handles. Every fallible call returns a
//! [`Hilb3Status`]; on failure [`hilb3_last_error`] describes the cause for the
//! calling thread. Strings handed out by this library are freed with
//! [`hilb3_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hilb3::geometry::Chart;
use hilb3::graphs::{enumerate, GraphFamily};
use hilb3::invariants::{pair_ab, verify_closed_forms, InvariantResult};
use hilb3::scalars::fmt_rational;
use hilb3::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hilb3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DegenerateSpecialization = 3,
    NonConstant = 4,
    Internal = 5,
    Panic = 6,
}

/// Result of an invariant computation.
pub struct Hilb3Invariant {
    inner: InvariantResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> Hilb3Status {
    match e {
        Error::ChartIndex(_) | Error::Degree(_) | Error::Family(_) | Error::Usage(_) => Hilb3Status::InvalidArgument,
        Error::DegenerateSpecialization { .. } | Error::SamplingExhausted(_) => Hilb3Status::DegenerateSpecialization,
        Error::NonConstant(_) => Hilb3Status::NonConstant,
        _ => Hilb3Status::Internal,
    }
}

fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> Hilb3Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Hilb3Status::Ok,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside hilb3".into());
            Hilb3Status::Panic
        }
    }
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or NULL. Free with
/// `hilb3_string_free`.
#[no_mangle]
pub extern "C" fn hilb3_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn hilb3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Compute `<A, B>_{0,d}` at `points` sampled specializations.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn hilb3_invariant_compute(
    d: u32,
    seed: u64,
    points: u32,
    out: *mut *mut Hilb3Invariant,
) -> Hilb3Status {
    if out.is_null() {
        set_error("out is NULL".into());
        return Hilb3Status::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    guard(|| {
        if points == 0 {
            return Err(Error::Usage("points must be positive".into()));
        }
        let inner = pair_ab(d, seed, points as usize)?;
        let h = Box::new(Hilb3Invariant { inner });
        unsafe { *out = Box::into_raw(h) };
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a handle from `hilb3_invariant_compute`, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn hilb3_invariant_free(h: *mut Hilb3Invariant) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// `<A, B>_{0,d}` as `"p/q"`, or NULL for a NULL handle.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hilb3_invariant_ab(h: *const Hilb3Invariant) -> *mut c_char {
    match unsafe { h.as_ref() } {
        Some(h) => into_c(fmt_rational(&h.inner.ab_value)),
        None => ptr::null_mut(),
    }
}

/// The invariant `<A, B>_{0,d} / 3` as `"p/q"`, or NULL for a NULL handle.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hilb3_invariant_value(h: *const Hilb3Invariant) -> *mut c_char {
    match unsafe { h.as_ref() } {
        Some(h) => into_c(fmt_rational(&h.inner.invariant)),
        None => ptr::null_mut(),
    }
}

/// Number of specializations evaluated, 0 for a NULL handle.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hilb3_invariant_num_points(h: *const Hilb3Invariant) -> usize {
    unsafe { h.as_ref() }.map_or(0, |h| h.inner.per_spec_values.len())
}

/// Writes `w`, `z` and the total at point `index` as new strings.
///
/// # Safety
/// `h` must be a live handle; each out pointer must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hilb3_invariant_point(
    h: *const Hilb3Invariant,
    index: usize,
    w: *mut *mut c_char,
    z: *mut *mut c_char,
    total: *mut *mut c_char,
) -> Hilb3Status {
    let Some(h) = (unsafe { h.as_ref() }) else {
        set_error("handle is NULL".into());
        return Hilb3Status::NullPointer;
    };
    if w.is_null() || z.is_null() || total.is_null() {
        set_error("out pointer is NULL".into());
        return Hilb3Status::NullPointer;
    }
    guard(|| {
        let (s, v) = h
            .inner
            .per_spec_values
            .get(index)
            .ok_or_else(|| Error::Usage(format!("point index {index} out of range")))?;
        unsafe {
            *w = into_c(fmt_rational(&s.w));
            *z = into_c(fmt_rational(&s.z));
            *total = into_c(fmt_rational(v));
        }
        Ok(())
    })
}

/// Number of stable graphs in family `S(i,j)` (`family = 'S'`) or
/// `T(i;j,k)` (`family = 'T'`) of degree `d`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hilb3_graph_count(
    family: c_char,
    i: u8,
    j: u8,
    k: u8,
    d: u32,
    out: *mut usize,
) -> Hilb3Status {
    if out.is_null() {
        set_error("out is NULL".into());
        return Hilb3Status::NullPointer;
    }
    guard(|| {
        let ci = Chart::new(i)?;
        let fam = match family as u8 {
            b'S' | b's' => GraphFamily::s(ci, Chart::new(j)?)?,
            b'T' | b't' => GraphFamily::t(ci, j, k)?,
            other => return Err(Error::Family(format!("unknown family '{}'", other as char))),
        };
        if d == 0 {
            return Err(Error::Degree(d));
        }
        unsafe { *out = enumerate(&fam, d).len() };
        Ok(())
    })
}

/// Checks the closed forms for degree `d` in 1..=4. `passed` receives 1 if
/// every non-diagnostic identity held, else 0.
///
/// # Safety
/// `passed` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hilb3_verify(d: u32, seed: u64, passed: *mut i32) -> Hilb3Status {
    if passed.is_null() {
        set_error("passed is NULL".into());
        return Hilb3Status::NullPointer;
    }
    guard(|| {
        let r = verify_closed_forms(d, seed)?;
        unsafe { *passed = i32::from(r.all_passed()) };
        Ok(())
    })
}
