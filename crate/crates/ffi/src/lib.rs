//! C ABI for `harmonic-locus`.
//!
//! Conventions:
//!
//! - every fallible function returns an [`HlStatus`]; on failure a message is
//!   available from [`hl_last_error_message`] on the same thread;
//! - partitions cross the boundary as opaque [`HlPartition`] handles, freed
//!   with [`hl_partition_free`];
//! - structured results are returned as NUL-terminated JSON strings owned by
//!   the caller and freed with [`hl_string_free`];
//! - a null `*const HlNumericsConfig` selects the default tolerances.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use harmonic_locus::characters::{character_hooks, character_legs, character_theorem4};
use harmonic_locus::cli::exit_code;
use harmonic_locus::exact_poly::wronskian_for_partition;
use harmonic_locus::locus::{pole_structure, NumericsConfig};
use harmonic_locus::moser::{hessian_spectrum_check, invert_wronskian_map, moser_spectrum_check};
use harmonic_locus::wilson::{charpoly_constant, verify_relations, WilsonData};
use harmonic_locus::{Error, Partition};
use num_complex::Complex64;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed or unsupported input (bad partition, bad config, multiple roots).
    InputError = 3,
    /// A checked identity or spectrum comparison failed.
    VerificationFailed = 4,
    /// An iterative numerical method did not converge.
    NoConvergence = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Mirror of the library's numerical tolerances.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HlNumericsConfig {
    pub root_tol: f64,
    pub newton_tol: f64,
    pub max_iter: usize,
    pub cluster_tol: f64,
    pub integer_tol: f64,
    pub digits: u32,
}

impl From<&NumericsConfig> for HlNumericsConfig {
    fn from(c: &NumericsConfig) -> Self {
        HlNumericsConfig {
            root_tol: c.root_tol,
            newton_tol: c.newton_tol,
            max_iter: c.max_iter,
            cluster_tol: c.cluster_tol,
            integer_tol: c.integer_tol,
            digits: c.digits,
        }
    }
}

impl From<&HlNumericsConfig> for NumericsConfig {
    fn from(c: &HlNumericsConfig) -> Self {
        NumericsConfig {
            root_tol: c.root_tol,
            newton_tol: c.newton_tol,
            max_iter: c.max_iter,
            cluster_tol: c.cluster_tol,
            integer_tol: c.integer_tol,
            digits: c.digits,
        }
    }
}

/// Opaque integer partition.
pub struct HlPartition(Partition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> HlStatus {
    match exit_code(e) {
        1 => HlStatus::VerificationFailed,
        3 => HlStatus::NoConvergence,
        _ => HlStatus::InputError,
    }
}

/// Internal failure carrying the status to report.
struct Fail(HlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HlStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            HlStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(HlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: caller guarantees a valid NUL-terminated string
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Fail(HlStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_partition<'a>(p: *const HlPartition) -> Result<&'a Partition, Fail> {
    if p.is_null() {
        return Err(null("partition"));
    }
    // SAFETY: non-null handles come from hl_partition_parse and are live until freed
    Ok(unsafe { &(*p).0 })
}

unsafe fn read_config(cfg: *const HlNumericsConfig) -> Result<NumericsConfig, Fail> {
    let c = if cfg.is_null() {
        NumericsConfig::default()
    } else {
        // SAFETY: caller passes a valid config or null
        NumericsConfig::from(unsafe { &*cfg })
    };
    c.validate()?;
    Ok(c)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(HlStatus::InputError, "interior NUL in output".into()))?;
    // SAFETY: out checked non-null above
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hl_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Default tolerances.
#[no_mangle]
pub extern "C" fn hl_numerics_default() -> HlNumericsConfig {
    (&NumericsConfig::default()).into()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in write_string
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses text such as `"4,3,1"` (or `"0"` for the empty partition).
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_partition_parse(text: *const c_char, out: *mut *mut HlPartition) -> HlStatus {
    guard(|| {
        let s = unsafe { read_str(text, "text") }?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let p: Partition = s.parse()?;
        // SAFETY: out checked non-null above
        unsafe { *out = Box::into_raw(Box::new(HlPartition(p))) };
        Ok(())
    })
}

/// Builds a partition from `len` parts in nonincreasing order.
///
/// # Safety
/// `parts` must point to `len` readable values (or be null when `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn hl_partition_from_parts(
    parts: *const usize,
    len: usize,
    out: *mut *mut HlPartition,
) -> HlStatus {
    guard(|| {
        if out.is_null() || (parts.is_null() && len > 0) {
            return Err(null("argument"));
        }
        let v = if len == 0 {
            Vec::new()
        } else {
            // SAFETY: caller guarantees `len` readable elements
            unsafe { std::slice::from_raw_parts(parts, len) }.to_vec()
        };
        let p = Partition::new(v)?;
        // SAFETY: out checked non-null above
        unsafe { *out = Box::into_raw(Box::new(HlPartition(p))) };
        Ok(())
    })
}

/// Releases a partition handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hl_partition_free(p: *mut HlPartition) {
    if !p.is_null() {
        // SAFETY: created by Box::into_raw in this crate
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Number of boxes, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_partition_size(p: *const HlPartition) -> usize {
    unsafe { read_partition(p) }.map_or(0, Partition::size)
}

/// Text form, e.g. `"4,3,1"`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_partition_to_string(p: *const HlPartition, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let lambda = unsafe { read_partition(p) }?;
        unsafe { write_string(out, lambda.to_string()) }
    })
}

/// Exact Wronskian as JSON: `{"degree", "coefficients": ["num/den", ...]}`,
/// lowest degree first.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_wronskian_json(p: *const HlPartition, monic: bool, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let lambda = unsafe { read_partition(p) }?;
        let mut w = wronskian_for_partition(lambda);
        if monic {
            w = w.monic();
        }
        let v = serde_json::json!({"degree": w.degree(), "coefficients": w.to_strings()});
        unsafe { write_string(out, v.to_string()) }
    })
}

/// Distinct roots with multiplicities and the locus residual, as JSON.
///
/// # Safety
/// `p` must be a live handle, `cfg` valid or null, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_roots_json(
    p: *const HlPartition,
    cfg: *const HlNumericsConfig,
    out: *mut *mut c_char,
) -> HlStatus {
    guard(|| {
        let lambda = unsafe { read_partition(p) }?;
        let cfg = unsafe { read_config(cfg) }?;
        let conf = pole_structure(lambda, &cfg)?;
        unsafe { write_string(out, to_json(&conf)) }
    })
}

/// Writes the roots of the Wronskian, repeated by multiplicity, into
/// `re`/`im` (capacity `cap`). `out_len` receives the degree; if it exceeds
/// `cap` nothing is written and `InputError` is returned.
///
/// # Safety
/// `re` and `im` must have room for `cap` values; `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hl_roots(
    p: *const HlPartition,
    cfg: *const HlNumericsConfig,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> HlStatus {
    guard(|| {
        let lambda = unsafe { read_partition(p) }?;
        let cfg = unsafe { read_config(cfg) }?;
        if out_len.is_null() {
            return Err(null("out_len"));
        }
        let roots = pole_structure(lambda, &cfg)?.expanded_roots();
        // SAFETY: out_len checked non-null above
        unsafe { *out_len = roots.len() };
        if roots.len() > cap {
            return Err(Fail(
                HlStatus::InputError,
                format!("buffer holds {cap} roots, need {}", roots.len()),
            ));
        }
        if !roots.is_empty() && (re.is_null() || im.is_null()) {
            return Err(null("root buffer"));
        }
        for (k, z) in roots.iter().enumerate() {
            // SAFETY: k < roots.len() <= cap
            unsafe {
                *re.add(k) = z.re;
                *im.add(k) = z.im;
            }
        }
        Ok(())
    })
}

/// Recovers a partition from `n` simple roots given as separate real and
/// imaginary parts.
///
/// # Safety
/// `re` and `im` must point to `n` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hl_invert_roots(
    re: *const f64,
    im: *const f64,
    n: usize,
    cfg: *const HlNumericsConfig,
    out: *mut *mut HlPartition,
) -> HlStatus {
    guard(|| {
        if out.is_null() || (n > 0 && (re.is_null() || im.is_null())) {
            return Err(null("argument"));
        }
        let cfg = unsafe { read_config(cfg) }?;
        let roots: Vec<Complex64> = (0..n)
            // SAFETY: caller guarantees n readable values in each buffer
            .map(|k| unsafe { Complex64::new(*re.add(k), *im.add(k)) })
            .collect();
        let (lambda, _) = invert_wronskian_map(&roots, &cfg)?;
        // SAFETY: out checked non-null above
        unsafe { *out = Box::into_raw(Box::new(HlPartition(lambda))) };
        Ok(())
    })
}

/// Character in all three forms as JSON (exponent -> coefficient maps).
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_character_json(p: *const HlPartition, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let lambda = unsafe { read_partition(p) }?;
        let chi = character_theorem4(lambda);
        let v = serde_json::json!({
            "character": chi,
            "legs": character_legs(lambda),
            "hooks": character_hooks(lambda),
        });
        unsafe { write_string(out, v.to_string()) }
    })
}

/// Spectra of Moser's matrix and of the Hessian, each checked against its
/// combinatorial prediction, as JSON.
///
/// # Safety
/// `p` must be a live handle, `cfg` valid or null, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_spectrum_json(
    p: *const HlPartition,
    cfg: *const HlNumericsConfig,
    out: *mut *mut c_char,
) -> HlStatus {
    guard(|| {
        let lambda = unsafe { read_partition(p) }?;
        let cfg = unsafe { read_config(cfg) }?;
        let v = serde_json::json!({
            "moser": moser_spectrum_check(lambda, &cfg)?,
            "hessian": hessian_spectrum_check(lambda, &cfg)?,
        });
        unsafe { write_string(out, v.to_string()) }
    })
}

/// Checks the exact fixed-point relations and the characteristic polynomial
/// identity; `VerificationFailed` if any fails.
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_wilson_verify(p: *const HlPartition) -> HlStatus {
    guard(|| {
        let lambda = unsafe { read_partition(p) }?;
        let rel = verify_relations(&WilsonData::new(lambda)?);
        if !rel.all_pass() {
            return Err(Fail(HlStatus::VerificationFailed, format!("{rel:?}")));
        }
        if charpoly_constant(lambda)?.is_none() {
            return Err(Fail(
                HlStatus::VerificationFailed,
                "characteristic polynomial differs from W".into(),
            ));
        }
        Ok(())
    })
}
