//! C ABI over `liework`.
//!
//! Objects are passed as opaque handles created by `lw_*_parse` or
//! `lw_*_catalog` and released with the matching `lw_*_free`. Every fallible
//! function returns an [`LwStatus`]; on failure a message is available from
//! [`lw_last_error_message`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use liework::catalog::{self, Payload};
use liework::finite::{self, FiniteMetricGroup};
use liework::format::{parse_document, Document, FormatError};
use liework::invariants::{
    check_nilradical_condition, derivations, isometry_algebra, nilradical, skew_derivations, InvariantError,
    MetricTensor,
};
use liework::lie::LieAlgebra;
use liework::report::{self, Report};

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LwStatus {
    Ok = 0,
    /// The computation ran and the checked statement does not hold.
    Falsified = 1,
    Parse = 2,
    /// The input does not satisfy the operation's hypothesis.
    Precondition = 3,
    NullArg = 4,
    InvalidUtf8 = 5,
    NotFound = 6,
    WrongKind = 7,
    Panic = 8,
    Internal = 9,
}

/// Opaque Lie algebra with its metric.
pub struct LwLie {
    algebra: LieAlgebra,
    metric: MetricTensor,
}

/// Opaque finite metric group.
pub struct LwGroup {
    group: FiniteMetricGroup,
}

/// The four affine conditions and the counts behind them.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LwTfae {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub equivalent: bool,
    pub isometry_count: usize,
    pub translation_count: usize,
    pub stabilizer_count: usize,
    pub affine_count: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(LwStatus, String);

impl From<FormatError> for Fail {
    fn from(e: FormatError) -> Self {
        Fail(LwStatus::Parse, e.to_string())
    }
}

impl From<InvariantError> for Fail {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::NotNilpotent(_) => Fail(LwStatus::Precondition, e.to_string()),
            other => Fail(LwStatus::Internal, other.to_string()),
        }
    }
}

fn guard(f: impl FnOnce() -> Result<LwStatus, Fail>) -> LwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            LwStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LwStatus::NullArg, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LwStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(LwStatus::NullArg, "null handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(LwStatus::NullArg, "null output pointer".into()))
}

fn wrong_kind(expected: &str) -> Fail {
    Fail(LwStatus::WrongKind, format!("input is not a {expected}"))
}

/// Parses a Lie algebra file.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_parse(text: *const c_char, out_handle: *mut *mut LwLie) -> LwStatus {
    guard(|| {
        let text = str_arg(text)?;
        let slot = out(out_handle)?;
        match parse_document(text)? {
            Document::Lie(f) => {
                let metric = f.metric_or_identity();
                *slot = Box::into_raw(Box::new(LwLie { algebra: f.algebra, metric }));
                Ok(LwStatus::Ok)
            }
            Document::Group(_) => Err(wrong_kind("Lie algebra")),
        }
    })
}

/// Looks up a built-in Lie algebra by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_catalog(name: *const c_char, out_handle: *mut *mut LwLie) -> LwStatus {
    guard(|| {
        let name = str_arg(name)?;
        let slot = out(out_handle)?;
        let e = catalog::find(name).ok_or_else(|| Fail(LwStatus::NotFound, format!("no catalog entry `{name}`")))?;
        match e.payload {
            Payload::Lie { algebra, metric } => {
                *slot = Box::into_raw(Box::new(LwLie { algebra, metric }));
                Ok(LwStatus::Ok)
            }
            Payload::Group(_) => Err(wrong_kind("Lie algebra")),
        }
    })
}

/// # Safety
/// `handle` must come from `lw_lie_parse` or `lw_lie_catalog`, or be null.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_free(handle: *mut LwLie) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_dim(handle: *const LwLie, out_dim: *mut usize) -> LwStatus {
    guard(|| {
        *out(out_dim)? = obj(handle)?.algebra.dim();
        Ok(LwStatus::Ok)
    })
}

/// # Safety
/// `handle` must be a live handle; `out_flag` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_is_nilpotent(handle: *const LwLie, out_flag: *mut bool) -> LwStatus {
    guard(|| {
        *out(out_flag)? = obj(handle)?.algebra.is_nilpotent();
        Ok(LwStatus::Ok)
    })
}

/// # Safety
/// `handle` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_nilradical_dim(handle: *const LwLie, out_dim: *mut usize) -> LwStatus {
    guard(|| {
        *out(out_dim)? = nilradical(&obj(handle)?.algebra)?.nilradical.dim();
        Ok(LwStatus::Ok)
    })
}

/// Dimension of the derivation algebra, or of the skew-symmetric
/// derivations for the handle's metric when `skew` is set.
///
/// # Safety
/// `handle` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_derivations_dim(handle: *const LwLie, skew: bool, out_dim: *mut usize) -> LwStatus {
    guard(|| {
        let h = obj(handle)?;
        let d = if skew { skew_derivations(&h.algebra, &h.metric)? } else { derivations(&h.algebra)? };
        *out(out_dim)? = d.dim();
        Ok(LwStatus::Ok)
    })
}

/// Checks that the nilradical of the isometry algebra is the base.
/// Returns `Ok` when it is, `Falsified` when not and `Precondition` for a
/// non-nilpotent base.
///
/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lw_lie_nilradical_condition(handle: *const LwLie) -> LwStatus {
    guard(|| {
        let h = obj(handle)?;
        let iso = isometry_algebra(&h.algebra, &h.metric)?;
        let v = check_nilradical_condition(&iso)?;
        if v.holds {
            Ok(LwStatus::Ok)
        } else {
            Err(Fail(LwStatus::Falsified, format!("nilradical has dimension {}", v.nil_found.dim())))
        }
    })
}

/// Parses a finite metric group file.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_group_parse(text: *const c_char, out_handle: *mut *mut LwGroup) -> LwStatus {
    guard(|| {
        let text = str_arg(text)?;
        let slot = out(out_handle)?;
        match parse_document(text)? {
            Document::Group(group) => {
                *slot = Box::into_raw(Box::new(LwGroup { group }));
                Ok(LwStatus::Ok)
            }
            Document::Lie(_) => Err(wrong_kind("metric group")),
        }
    })
}

/// Looks up a built-in metric group by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_group_catalog(name: *const c_char, out_handle: *mut *mut LwGroup) -> LwStatus {
    guard(|| {
        let name = str_arg(name)?;
        let slot = out(out_handle)?;
        let e = catalog::find(name).ok_or_else(|| Fail(LwStatus::NotFound, format!("no catalog entry `{name}`")))?;
        match e.payload {
            Payload::Group(group) => {
                *slot = Box::into_raw(Box::new(LwGroup { group }));
                Ok(LwStatus::Ok)
            }
            Payload::Lie { .. } => Err(wrong_kind("metric group")),
        }
    })
}

/// # Safety
/// `handle` must come from `lw_group_parse` or `lw_group_catalog`, or be null.
#[no_mangle]
pub unsafe extern "C" fn lw_group_free(handle: *mut LwGroup) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be a live handle; `out_order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_group_order(handle: *const LwGroup, out_order: *mut usize) -> LwStatus {
    guard(|| {
        *out(out_order)? = obj(handle)?.group.order();
        Ok(LwStatus::Ok)
    })
}

/// # Safety
/// `handle` must be a live handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_group_isometry_count(handle: *const LwGroup, out_count: *mut usize) -> LwStatus {
    guard(|| {
        *out(out_count)? = finite::isometries(&obj(handle)?.group).len();
        Ok(LwStatus::Ok)
    })
}

/// Evaluates the four affine conditions. Returns `Falsified` if they are
/// not all equal; `out_report` is filled either way.
///
/// # Safety
/// `handle` must be a live handle; `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_group_tfae(handle: *const LwGroup, out_report: *mut LwTfae) -> LwStatus {
    guard(|| {
        let r = finite::check_tfae(&obj(handle)?.group);
        *out(out_report)? = LwTfae {
            a: r.a,
            b: r.b,
            c: r.c,
            d: r.d,
            equivalent: r.equivalent,
            isometry_count: r.isometry_count,
            translation_count: r.translation_count,
            stabilizer_count: r.stabilizer_count,
            affine_count: r.affine_count,
        };
        if r.equivalent {
            Ok(LwStatus::Ok)
        } else {
            Err(Fail(LwStatus::Falsified, "the affine conditions disagree".into()))
        }
    })
}

/// Full JSON report for the input text. The returned string is owned by
/// the caller and released with [`lw_string_free`].
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_report_json(text: *const c_char, out_json: *mut *mut c_char) -> LwStatus {
    guard(|| {
        let text = str_arg(text)?;
        let slot = out(out_json)?;
        let checks = match parse_document(text)? {
            Document::Lie(f) => report::lie_checks(f.algebra.name(), &f.algebra, &f.metric_or_identity()),
            Document::Group(g) => report::group_checks(&g.name, &g),
        };
        let r = Report::new("report", text, checks);
        let json = CString::new(r.to_json(0)).map_err(|e| Fail(LwStatus::Internal, e.to_string()))?;
        *slot = json.into_raw();
        Ok(if r.all_passed() { LwStatus::Ok } else { LwStatus::Falsified })
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn lw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}
