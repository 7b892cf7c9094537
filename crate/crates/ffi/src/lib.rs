//! C ABI over the `overpart` library.
//!
//! Every function returns an [`OverpartStatus`]; results come back through
//! out-pointers. Objects are opaque handles released with their `_free`
//! function, and strings returned by the library are released with
//! [`overpart_string_free`]. After a non-OK status,
//! [`overpart_last_error`] describes the failure on the calling thread.
//! Panics never cross the boundary; they surface as
//! [`OverpartStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use overpart::hyper::{verify_section3_chain, HyperError};
use overpart::maps::{self, MapError};
use overpart::partitions::{self, Bipartition, Overpartition, PartitionError};
use overpart::qseries::{rhs_bounded_overpartitions, rhs_breuer_kronholm, rhs_theorem11};
use overpart::{QSeries, QSeriesError};

/// Result code of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverpartStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotInDomain = 4,
    Arithmetic = 5,
    Internal = 6,
}

/// How the overline variable `z` is treated.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverpartZMode {
    Tracked = 0,
    Zero = 1,
    One = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverpartMap {
    Phi = 0,
    Psi = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverpartFamily {
    Gt = 0,
    Pt = 1,
    Bt = 2,
}

/// Truncated series in `q` with Laurent polynomial coefficients in `z`.
pub struct OverpartSeries(QSeries);

pub struct OverpartPartition(Overpartition);

/// A block of `t`'s paired with an overpartition with parts at most `t`.
pub struct OverpartBipartition(Bipartition);

struct Failure(OverpartStatus, String);

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        Failure(OverpartStatus::ParseError, e.to_string())
    }
}

impl From<MapError> for Failure {
    fn from(e: MapError) -> Self {
        let status = match e {
            MapError::NotInDomain { .. } => OverpartStatus::NotInDomain,
            MapError::InvalidArgument(_) => OverpartStatus::InvalidArgument,
            MapError::Internal(_) => OverpartStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

impl From<QSeriesError> for Failure {
    fn from(e: QSeriesError) -> Self {
        let status = match e {
            QSeriesError::InvalidParameter(_) => OverpartStatus::InvalidArgument,
            QSeriesError::Json(_) => OverpartStatus::ParseError,
            _ => OverpartStatus::Arithmetic,
        };
        Failure(status, e.to_string())
    }
}

impl From<HyperError> for Failure {
    fn from(e: HyperError) -> Self {
        match e {
            HyperError::Series(inner) => inner.into(),
            other => Failure(OverpartStatus::Arithmetic, other.to_string()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(OverpartStatus::InvalidArgument, msg.into())
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, records any failure and converts panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OverpartStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OverpartStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal error: {msg}"));
            OverpartStatus::Internal
        }
    }
}

unsafe fn read<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: caller guarantees `p` is null or a live handle.
    unsafe { p.as_ref() }
        .ok_or_else(|| Failure(OverpartStatus::NullPointer, format!("{what} is null")))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            OverpartStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    // SAFETY: caller guarantees a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| {
        Failure(
            OverpartStatus::ParseError,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            OverpartStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    // SAFETY: checked non-null; caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s)
        .map_err(|_| Failure(OverpartStatus::Internal, "string contains NUL".into()))?;
    unsafe { write(out, c.into_raw()) }
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    unsafe { write(out, Box::into_raw(Box::new(value))) }
}

unsafe fn free_handle<T>(p: *mut T) {
    if !p.is_null() {
        // SAFETY: `p` came from `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Message describing the last failure on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn overpart_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn overpart_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses text such as `3,3,3,1~,1`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_partition_parse(
    text: *const c_char,
    out: *mut *mut OverpartPartition,
) -> OverpartStatus {
    guard(|| {
        let p: Overpartition = unsafe { read_str(text, "text") }?.parse()?;
        unsafe { write_handle(out, OverpartPartition(p)) }
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_partition_to_string(
    p: *const OverpartPartition,
    out: *mut *mut c_char,
) -> OverpartStatus {
    guard(|| {
        let p = unsafe { read(p, "partition") }?;
        unsafe { write_string(out, p.0.to_string()) }
    })
}

/// Sum of the parts.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_partition_weight(
    p: *const OverpartPartition,
    out: *mut u64,
) -> OverpartStatus {
    guard(|| {
        let p = unsafe { read(p, "partition") }?;
        unsafe { write(out, p.0.weight()) }
    })
}

/// Number of overlined parts.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_partition_num_overlined(
    p: *const OverpartPartition,
    out: *mut u64,
) -> OverpartStatus {
    guard(|| {
        let p = unsafe { read(p, "partition") }?;
        unsafe { write(out, p.0.num_overlined()) }
    })
}

/// # Safety
/// `p` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn overpart_partition_free(p: *mut OverpartPartition) {
    unsafe { free_handle(p) }
}

/// Parses text such as `[3^1 | 3,3,1~,1]`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_bipartition_parse(
    text: *const c_char,
    out: *mut *mut OverpartBipartition,
) -> OverpartStatus {
    guard(|| {
        let b: Bipartition = unsafe { read_str(text, "text") }?.parse()?;
        unsafe { write_handle(out, OverpartBipartition(b)) }
    })
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_bipartition_to_string(
    b: *const OverpartBipartition,
    out: *mut *mut c_char,
) -> OverpartStatus {
    guard(|| {
        let b = unsafe { read(b, "bipartition") }?;
        unsafe { write_string(out, b.0.to_string()) }
    })
}

/// # Safety
/// `b` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn overpart_bipartition_free(b: *mut OverpartBipartition) {
    unsafe { free_handle(b) }
}

/// Image of `pi` under phi. `NotInDomain` when `pi` is outside `G_t`.
///
/// # Safety
/// `pi` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_phi(
    pi: *const OverpartPartition,
    t: u64,
    out: *mut *mut OverpartPartition,
) -> OverpartStatus {
    guard(|| {
        let pi = unsafe { read(pi, "partition") }?;
        let image = maps::phi(&pi.0, t)?;
        unsafe { write_handle(out, OverpartPartition(image)) }
    })
}

/// Image of `beta` under psi.
///
/// # Safety
/// `beta` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_psi(
    beta: *const OverpartBipartition,
    t: u64,
    out: *mut *mut OverpartPartition,
) -> OverpartStatus {
    guard(|| {
        let beta = unsafe { read(beta, "bipartition") }?;
        let image = maps::psi(&beta.0, t)?;
        unsafe { write_handle(out, OverpartPartition(image)) }
    })
}

/// Fiber of `mu` as JSON:
/// `{"mu", "t", "fiber": [..], "same_overlines", "one_more_overline", "expected_size"}`.
///
/// # Safety
/// `mu` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_preimages_json(
    mu: *const OverpartPartition,
    t: u64,
    map: OverpartMap,
    out_json: *mut *mut c_char,
) -> OverpartStatus {
    guard(|| {
        let mu = unsafe { read(mu, "partition") }?;
        let report = match map {
            OverpartMap::Phi => maps::phi_preimages(&mu.0, t)?.to_json_value(),
            OverpartMap::Psi => maps::psi_preimages(&mu.0, t)?.to_json_value(),
        };
        let json = serde_json::to_string(&report)
            .map_err(|e| Failure(OverpartStatus::Internal, e.to_string()))?;
        unsafe { write_string(out_json, json) }
    })
}

/// `1/(1-q^t) ((-zq;q)_t/(q;q)_t - 1)` below `q^order`, with `z` tracked
/// or set to 0 or 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_closed_form(
    t: u32,
    z: OverpartZMode,
    order: i64,
    out: *mut *mut OverpartSeries,
) -> OverpartStatus {
    guard(|| {
        let s = match z {
            OverpartZMode::Tracked => rhs_theorem11(t, true, order)?,
            OverpartZMode::Zero => rhs_breuer_kronholm(t, order)?,
            OverpartZMode::One => rhs_bounded_overpartitions(t, order)?,
        };
        unsafe { write_handle(out, OverpartSeries(s)) }
    })
}

/// `sum z^o q^weight` over the family members of weight at most `max_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_from_enumeration(
    family: OverpartFamily,
    t: u64,
    max_n: u64,
    out: *mut *mut OverpartSeries,
) -> OverpartStatus {
    guard(|| {
        if t == 0 {
            return Err(invalid("t must be positive"));
        }
        let family = match family {
            OverpartFamily::Gt => partitions::Family::Gt,
            OverpartFamily::Pt => partitions::Family::Pt,
            OverpartFamily::Bt => partitions::Family::Bt,
        };
        let s = partitions::gf_from_enumeration(family, t, max_n);
        unsafe { write_handle(out, OverpartSeries(s)) }
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_from_json(
    json: *const c_char,
    out: *mut *mut OverpartSeries,
) -> OverpartStatus {
    guard(|| {
        let s = QSeries::from_json(unsafe { read_str(json, "json") }?)?;
        unsafe { write_handle(out, OverpartSeries(s)) }
    })
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_to_json(
    s: *const OverpartSeries,
    out: *mut *mut c_char,
) -> OverpartStatus {
    guard(|| {
        let s = unsafe { read(s, "series") }?;
        unsafe { write_string(out, s.0.to_json()) }
    })
}

/// Exponent below which the series is exact.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_order(
    s: *const OverpartSeries,
    out: *mut i64,
) -> OverpartStatus {
    guard(|| {
        let s = unsafe { read(s, "series") }?;
        unsafe { write(out, s.0.order()) }
    })
}

/// Coefficient of `z^z_exp q^q_exp` as a decimal string. `InvalidArgument`
/// when `q_exp` is at or beyond the order.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_coeff(
    s: *const OverpartSeries,
    z_exp: i64,
    q_exp: i64,
    out: *mut *mut c_char,
) -> OverpartStatus {
    guard(|| {
        let s = unsafe { read(s, "series") }?;
        let c =
            s.0.coeff_zq(z_exp, q_exp)
                .ok_or_else(|| invalid(format!("q^{q_exp} is beyond the order {}", s.0.order())))?;
        unsafe { write_string(out, c.to_string()) }
    })
}

/// Whether `a` and `b` agree below `q^upto`; both must be exact there.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_agree(
    a: *const OverpartSeries,
    b: *const OverpartSeries,
    upto: i64,
    out: *mut bool,
) -> OverpartStatus {
    guard(|| {
        let a = unsafe { read(a, "series") }?;
        let b = unsafe { read(b, "series") }?;
        let same = a.0.agrees_with(&b.0, upto)?;
        unsafe { write(out, same) }
    })
}

/// # Safety
/// `s` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn overpart_series_free(s: *mut OverpartSeries) {
    unsafe { free_handle(s) }
}

/// Chain verification report as JSON:
/// `{"t", "order", "lines": [{"label", "equal_to_previous"}], "pass"}`.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn overpart_chain_json(
    t: u64,
    order: i64,
    z: OverpartZMode,
    out_json: *mut *mut c_char,
) -> OverpartStatus {
    guard(|| {
        let mode = match z {
            OverpartZMode::Tracked => overpart::ZMode::Tracked,
            OverpartZMode::Zero => overpart::ZMode::Zero,
            OverpartZMode::One => overpart::ZMode::One,
        };
        let report = verify_section3_chain(t, order, mode)?;
        let json = serde_json::to_string(&report)
            .map_err(|e| Failure(OverpartStatus::Internal, e.to_string()))?;
        unsafe { write_string(out_json, json) }
    })
}
