//! C interface. Diagrams live behind an opaque handle; every call returns
//! an [`ExkhStatus`] and writes results through out-pointers. Strings handed
//! out are NUL-terminated UTF-8 and must be released with
//! [`exkh_string_free`]. The message of the most recent failure on the
//! calling thread is available from [`exkh_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use exkh::diagram::Diagram;
use exkh::extreme::{extreme_jmax, extreme_via_brute, extreme_via_lando};
use exkh::families;
use exkh::khovanov::{jones, khovanov_cohomology};
use exkh::lando::{independence_number, lando_graph};
use exkh::simplicial::Ring;
use exkh::{CapExceeded, Limits};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExkhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    CapExceeded = 4,
    InvalidArgument = 5,
    Internal = 6,
}

/// Opaque diagram handle.
pub struct ExkhDiagram {
    inner: Diagram,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl ToString) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Error(ExkhStatus, String);

impl<E: CapExceeded + std::fmt::Display> From<E> for Error {
    fn from(e: E) -> Self {
        let status = if e.is_cap_exceeded() {
            ExkhStatus::CapExceeded
        } else {
            ExkhStatus::InvalidArgument
        };
        Error(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Error>) -> ExkhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExkhStatus::Ok,
        Ok(Err(Error(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ExkhStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(Error(ExkhStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Error(ExkhStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a>(d: *const ExkhDiagram) -> Result<&'a Diagram, Error> {
    d.as_ref()
        .map(|d| &d.inner)
        .ok_or_else(|| Error(ExkhStatus::NullPointer, "null diagram".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(Error(ExkhStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    let c = CString::new(s).map_err(|e| Error(ExkhStatus::Internal, e.to_string()))?;
    if out.is_null() {
        return Err(Error(ExkhStatus::NullPointer, "null output pointer".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

/// A null ring string means the integers.
unsafe fn read_ring(ring: *const c_char) -> Result<Ring, Error> {
    if ring.is_null() {
        return Ok(Ring::Integers);
    }
    read_str(ring)?
        .parse()
        .map_err(|e: exkh::simplicial::ParseRingError| Error(ExkhStatus::InvalidArgument, e.to_string()))
}

fn json(value: impl serde::Serialize) -> String {
    serde_json::to_string(&value).expect("serializable")
}

/// Parses PD text (or a catalog name) into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_diagram_parse(text: *const c_char, out: *mut *mut ExkhDiagram) -> ExkhStatus {
    guard(|| {
        let text = read_str(text)?;
        let d = match families::catalog_entry(text.trim()) {
            Ok(entry) => entry.diagram,
            Err(_) => text
                .parse::<Diagram>()
                .map_err(|e| Error(ExkhStatus::ParseError, e.to_string()))?,
        };
        write_out(out, Box::into_raw(Box::new(ExkhDiagram { inner: d })))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn exkh_diagram_free(d: *mut ExkhDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_crossing_count(d: *const ExkhDiagram, out: *mut usize) -> ExkhStatus {
    guard(|| write_out(out, handle(d)?.crossing_count()))
}

/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_component_count(d: *const ExkhDiagram, out: *mut usize) -> ExkhStatus {
    guard(|| write_out(out, handle(d)?.component_count()))
}

/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_writhe(d: *const ExkhDiagram, out: *mut i64) -> ExkhStatus {
    guard(|| write_out(out, handle(d)?.writhe()))
}

/// Canonical PD text.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_diagram_pd(d: *const ExkhDiagram, out: *mut *mut c_char) -> ExkhStatus {
    guard(|| write_string(out, handle(d)?.to_string()))
}

/// `{"graph": {...}, "independence_number": "..."}`.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_lando_json(d: *const ExkhDiagram, out: *mut *mut c_char) -> ExkhStatus {
    guard(|| {
        let g = lando_graph(handle(d)?);
        let i = independence_number(g.graph(), Limits::default().max_lando_vertices)?;
        let text = format!(
            "{{\"graph\":{},\"independence_number\":\"{i}\"}}",
            json(g.graph().to_json())
        );
        write_string(out, text)
    })
}

/// The `j_min` row by the Lando route; `ring` is `"Z"`, `"Q"`, `"F<p>"` or null.
///
/// # Safety
/// `d` must be a live handle, `ring` null or a valid string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_extreme_json(
    d: *const ExkhDiagram,
    ring: *const c_char,
    out: *mut *mut c_char,
) -> ExkhStatus {
    guard(|| {
        let row = extreme_via_lando(handle(d)?, read_ring(ring)?, &Limits::default())?;
        write_string(out, json(row.to_json()))
    })
}

/// The `j_min` row by enumerating enhanced states.
///
/// # Safety
/// As [`exkh_extreme_json`].
#[no_mangle]
pub unsafe extern "C" fn exkh_extreme_brute_json(
    d: *const ExkhDiagram,
    ring: *const c_char,
    out: *mut *mut c_char,
) -> ExkhStatus {
    guard(|| {
        let row = extreme_via_brute(handle(d)?, read_ring(ring)?, &Limits::default())?;
        write_string(out, json(row.to_json()))
    })
}

/// The `j_max` row.
///
/// # Safety
/// As [`exkh_extreme_json`].
#[no_mangle]
pub unsafe extern "C" fn exkh_extreme_max_json(
    d: *const ExkhDiagram,
    ring: *const c_char,
    out: *mut *mut c_char,
) -> ExkhStatus {
    guard(|| {
        let row = extreme_jmax(handle(d)?, read_ring(ring)?, &Limits::default())?;
        write_string(out, json(row.to_json()))
    })
}

/// The full cohomology table.
///
/// # Safety
/// As [`exkh_extreme_json`].
#[no_mangle]
pub unsafe extern "C" fn exkh_khovanov_json(
    d: *const ExkhDiagram,
    ring: *const c_char,
    out: *mut *mut c_char,
) -> ExkhStatus {
    guard(|| {
        let table = khovanov_cohomology(handle(d)?, read_ring(ring)?, &Limits::default())?;
        write_string(out, json(table.to_json()))
    })
}

/// The Jones polynomial in `t`, e.g. `-t^-4 + t^-3 + t^-1`.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exkh_jones(d: *const ExkhDiagram, out: *mut *mut c_char) -> ExkhStatus {
    guard(|| write_string(out, jones(handle(d)?, &Limits::default())?.format("t", 2)))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn exkh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn exkh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
