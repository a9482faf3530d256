//! C ABI for `knotbound`.
//!
//! Knots live behind the opaque [`KbKnot`] handle. Every fallible call
//! returns a [`KbStatus`]; on anything other than `KB_STATUS_OK` a message is
//! available from [`kb_last_error`] on the same thread. Strings handed out
//! by the library are owned by the caller and released with
//! [`kb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use knotbound::bounds::{bounds_report, BoundsOptions, SourcedCertificate};
use knotbound::certificate::{verify_certificate_with, Certificate, DEFAULT_RADIUS};
use knotbound::intmat::IntMatrix;
use knotbound::orders::nakanishi_lower_bound;
use knotbound::report::ReportDocument;
use knotbound::{Error, SeifertMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotSeifert = 4,
    InvalidArgument = 5,
    ComputationFailed = 6,
    CertificateRejected = 7,
    Panic = 8,
}

/// Opaque handle to a validated Seifert matrix.
pub struct KbKnot {
    seifert: SeifertMatrix,
}

/// Result of a successful certificate check.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KbCertifiedBound {
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> KbStatus {
    match e {
        Error::Parse(_) | Error::TableParse { .. } => KbStatus::ParseError,
        Error::NotSeifert(_) | Error::TableNotSeifert { .. } => KbStatus::NotSeifert,
        Error::InvalidTheta(_) | Error::NotPrime(_) | Error::NonSquare { .. } | Error::DimensionMismatch(_) => {
            KbStatus::InvalidArgument
        }
        _ => KbStatus::ComputationFailed,
    }
}

fn fail(e: Error) -> KbStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, recording errors and turning panics into `KB_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> Result<(), KbStatus>) -> KbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KbStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            KbStatus::Panic
        }
    }
}

unsafe fn knot_ref<'a>(k: *const KbKnot) -> Result<&'a KbKnot, KbStatus> {
    if k.is_null() {
        set_error("null knot handle");
        return Err(KbStatus::NullPointer);
    }
    Ok(&*k)
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, KbStatus> {
    if s.is_null() {
        set_error(format!("null {what}"));
        return Err(KbStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        KbStatus::InvalidUtf8
    })
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, KbStatus> {
    if p.is_null() {
        set_error("null output pointer");
        return Err(KbStatus::NullPointer);
    }
    Ok(&mut *p)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Builds a knot from `size * size` row-major Seifert matrix entries.
/// `size` may be 0 for the unknot, in which case `entries` may be NULL.
///
/// # Safety
/// `entries` must point to `size * size` readable values and `out` must be
/// a valid pointer. The handle written to `out` is released with
/// [`kb_knot_free`].
#[no_mangle]
pub unsafe extern "C" fn kb_knot_from_entries(entries: *const i64, size: usize, out: *mut *mut KbKnot) -> KbStatus {
    guard(|| {
        let out = out_arg(out)?;
        if entries.is_null() && size != 0 {
            set_error("null entries");
            return Err(KbStatus::NullPointer);
        }
        let count = size.checked_mul(size).ok_or_else(|| {
            set_error("size overflows");
            KbStatus::InvalidArgument
        })?;
        let values: Vec<BigInt> =
            if count == 0 { Vec::new() } else { std::slice::from_raw_parts(entries, count).iter().map(|&x| x.into()).collect() };
        let v = IntMatrix::square_from_entries(size, values).map_err(fail)?;
        let seifert = SeifertMatrix::new(v).map_err(fail)?;
        *out = Box::into_raw(Box::new(KbKnot { seifert }));
        Ok(())
    })
}

/// Parses a Seifert matrix written as rows separated by `;` and entries by
/// `,`, e.g. `"-1, 1; 0, -1"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kb_knot_parse(text: *const c_char, out: *mut *mut KbKnot) -> KbStatus {
    guard(|| {
        let out = out_arg(out)?;
        let text = str_arg(text, "text")?;
        let v: IntMatrix = text.parse().map_err(fail)?;
        let seifert = SeifertMatrix::new(v).map_err(fail)?;
        *out = Box::into_raw(Box::new(KbKnot { seifert }));
        Ok(())
    })
}

/// # Safety
/// `knot` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kb_knot_free(knot: *mut KbKnot) {
    if !knot.is_null() {
        drop(Box::from_raw(knot));
    }
}

/// Genus of the Seifert surface, half the matrix size. Returns 0 for NULL.
///
/// # Safety
/// `knot` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kb_knot_genus(knot: *const KbKnot) -> usize {
    knot.as_ref().map_or(0, |k| k.seifert.genus())
}

/// Normalized Alexander polynomial, e.g. `"t - 1 + t^-1"`.
///
/// # Safety
/// `knot` must be a live handle and `out` a valid pointer; the string
/// written there is released with [`kb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kb_alexander(knot: *const KbKnot, out: *mut *mut c_char) -> KbStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_arg(out)?;
        let delta = k.seifert.alexander_polynomial().map_err(fail)?;
        *out = into_c_string(delta.to_string());
        Ok(())
    })
}

/// Signature of `V + V^T`.
///
/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kb_signature(knot: *const KbKnot, out: *mut i64) -> KbStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        *out_arg(out)? = k.seifert.signature_at_minus_one();
        Ok(())
    })
}

/// Levine-Tristram signature at `exp(2 pi i num/den)`, for `0 < num/den < 1`.
///
/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kb_levine_tristram(knot: *const KbKnot, num: i64, den: i64, out: *mut i64) -> KbStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_arg(out)?;
        if den == 0 {
            set_error("zero denominator");
            return Err(KbStatus::InvalidArgument);
        }
        let theta = BigRational::new(num.into(), den.into());
        *out = k.seifert.levine_tristram_signature(&theta).map_err(fail)?.value;
        Ok(())
    })
}

/// Largest minimal generator count of the Alexander module mod `p` over
/// the given primes.
///
/// # Safety
/// `knot` must be a live handle, `primes` must point to `count` values (or
/// be NULL with `count == 0`) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kb_nakanishi(knot: *const KbKnot, primes: *const u64, count: usize, out: *mut usize) -> KbStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_arg(out)?;
        if primes.is_null() && count != 0 {
            set_error("null primes");
            return Err(KbStatus::NullPointer);
        }
        let primes = if count == 0 { &[][..] } else { std::slice::from_raw_parts(primes, count) };
        *out = nakanishi_lower_bound(&k.seifert.alexander_presentation(), primes).map_err(fail)?;
        Ok(())
    })
}

/// Verifies a certificate given in its text form against the knot. A
/// rejected certificate returns `KB_STATUS_CERTIFICATE_REJECTED` with the
/// failing check in [`kb_last_error`].
///
/// # Safety
/// `knot` must be a live handle, `certificate` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kb_certificate_verify(
    knot: *const KbKnot,
    certificate: *const c_char,
    out: *mut KbCertifiedBound,
) -> KbStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let text = str_arg(certificate, "certificate")?;
        let out = out_arg(out)?;
        let cert: Certificate = text.parse().map_err(fail)?;
        match verify_certificate_with(&k.seifert, &cert, DEFAULT_RADIUS) {
            Ok(b) => {
                *out = KbCertifiedBound { n: b.n, n_plus: b.n_plus, n_minus: b.n_minus };
                Ok(())
            }
            Err(f) => {
                set_error(f.to_string());
                Err(KbStatus::CertificateRejected)
            }
        }
    })
}

/// Bounds report for one knot as a JSON document. `certificates` holds
/// `count` certificate texts tried before any search; `search` enables the
/// built-in search with default limits.
///
/// # Safety
/// `knot` must be a live handle, `name` a NUL-terminated string,
/// `certificates` an array of `count` NUL-terminated strings (or NULL with
/// `count == 0`) and `out` a valid pointer. The string written to `out` is
/// released with [`kb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kb_bounds_json(
    knot: *const KbKnot,
    name: *const c_char,
    certificates: *const *const c_char,
    count: usize,
    search: bool,
    out: *mut *mut c_char,
) -> KbStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let name = str_arg(name, "name")?;
        let out = out_arg(out)?;
        if certificates.is_null() && count != 0 {
            set_error("null certificates");
            return Err(KbStatus::NullPointer);
        }
        let mut certs = Vec::with_capacity(count);
        for i in 0..count {
            let text = str_arg(*certificates.add(i), "certificate")?;
            certs.push(SourcedCertificate { source: format!("arg:{i}"), certificate: text.parse().map_err(fail)? });
        }
        let options = BoundsOptions { search, ..BoundsOptions::default() };
        let report = bounds_report(name, &k.seifert, &certs, &options).map_err(fail)?;
        *out = into_c_string(ReportDocument::new(vec![report]).to_json());
        Ok(())
    })
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn kb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
