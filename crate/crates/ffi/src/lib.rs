//! C bindings for the Dirichlet-series abscissa library.
//!
//! The surface follows the usual conventions for a C API over an
//! object-oriented core:
//!
//! * Every fallible call returns a [`DaStatus`]; output parameters are
//!   written only when the call returns `DA_STATUS_OK`.
//! * A coefficient sequence is an opaque handle created by one of the
//!   `da_series_*` constructors and released with [`da_series_free`].
//!   Handles are plain heap allocations: they may be moved freely across
//!   threads, but a single handle must not be mutated concurrently
//!   (nothing in this API mutates one after construction, so sharing a
//!   handle for reads is fine).
//! * After any call that returns a non-`OK` status, a human-readable
//!   description is available from [`da_last_error_message`].  The
//!   message is thread-local: errors on one thread never clobber
//!   another's.
//! * Panics never unwind across the boundary; a caught panic reports
//!   `DA_STATUS_INTERNAL_ERROR`.
//!
//! The generated header lives at `include/dirichlet_abscissa.h` and is
//! refreshed by the build script whenever this file changes.

use std::any::Any;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dirichlet_abscissa::abscissa::{
    sigma_a_estimate, sigma_b_estimate, sigma_c_estimate, SampleGrid,
};
use dirichlet_abscissa::bohrlift::{bohr_constant, OptimizerConfig};
use dirichlet_abscissa::coeffs::{mobius_seq, CoefficientSeq};
use dirichlet_abscissa::constructions::{
    gap_family_coeffs, l_chi3_coeffs, lacunary3_coeffs, wintner_coeffs, wintner_minus_coeffs,
    zeta_coeffs, RandomModelConfig,
};
use dirichlet_abscissa::seqio::{read_coeffs_file, write_coeffs_file};
use dirichlet_abscissa::Error;

/// Status code returned by every fallible function.
///
/// `DA_STATUS_OK` is zero, so `if (da_...(...))` reads as "if it failed".
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaStatus {
    /// Success.  Output parameters have been written.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// An argument was malformed: a zero length, an unknown grid kind,
    /// an out-of-range index, a non-UTF-8 path.
    InvalidArgument = 2,
    /// A numeric parameter lies outside its admissible range.
    DomainError = 3,
    /// An operation needing multiplicative structure was given data
    /// that fails the check, or a construction failed a postcondition.
    StructureError = 4,
    /// The input carries no signal (for example, an identically zero
    /// sequence), so the requested statistic does not exist.
    DegenerateInput = 5,
    /// Too few usable sample points to fit the growth rate.
    InsufficientData = 6,
    /// An underlying file operation failed.
    IoError = 7,
    /// A file was read but its contents did not parse.
    ParseError = 8,
    /// A panic was caught at the boundary; this is a bug in the library.
    InternalError = 9,
}

/// Opaque handle to a finite truncation `a_1, ..., a_N` of a coefficient
/// sequence.  Create with a `da_series_*` constructor, release with
/// [`da_series_free`].
pub struct DaSeries {
    inner: CoefficientSeq,
}

/// Abscissa estimate and its diagnostics, mirroring the library's result
/// struct field for field.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DaEstimate {
    /// The abscissa estimate: the tail ratio clamped at zero.
    pub estimate: f64,
    /// Raw limsup surrogate before clamping, `max y / log x` over the
    /// tail of the sample trail.
    pub tail_ratio: f64,
    /// Least-squares slope of the running maximum against `log x` on
    /// the same tail; a consistency diagnostic, not the estimate.
    pub envelope_slope: f64,
    /// Number of `(x, log statistic)` samples that entered the fit.
    pub sample_count: usize,
    /// True when the raw tail ratio was negative and the estimate was
    /// clamped to zero (the series converges at the origin, so the
    /// abscissa is not observable from growth).
    pub clamped: bool,
}

/// Sample scales at every power of two from 16 up to the truncation
/// length.  The right default.
pub const DA_GRID_DYADIC: u32 = 0;

/// The dyadic scales interleaved with scales near powers of three.  Use
/// for sequences supported on powers of 3, where doubling the cut often
/// crosses no new support point.
pub const DA_GRID_DYADIC_THREE_ADIC: u32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    // CString cannot hold interior NULs; scrub rather than fail.
    let clean: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(clean).expect("interior NULs removed");
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::default());
}

fn fail(err: Error) -> DaStatus {
    let status = match &err {
        Error::Domain { .. } => DaStatus::DomainError,
        Error::Structure(_) | Error::Construction(_) => DaStatus::StructureError,
        Error::Degenerate(_) => DaStatus::DegenerateInput,
        Error::InsufficientData { .. } => DaStatus::InsufficientData,
        Error::Io(_) => DaStatus::IoError,
        Error::Parse { .. } => DaStatus::ParseError,
        Error::LengthMismatch { .. }
        | Error::ScaleOutOfRange { .. }
        | Error::MissingLocalValue { .. }
        | Error::BasisCoverage { .. }
        | Error::Invalid { .. } => DaStatus::InvalidArgument,
    };
    set_last_error(&err.to_string());
    status
}

fn fail_null(name: &str) -> DaStatus {
    set_last_error(&format!("argument `{name}` must not be NULL"));
    DaStatus::NullArgument
}

fn fail_invalid(msg: &str) -> DaStatus {
    set_last_error(msg);
    DaStatus::InvalidArgument
}

fn fail_panic(payload: Box<dyn Any + Send>) -> DaStatus {
    let detail = payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic payload".to_string());
    set_last_error(&format!("internal panic: {detail}"));
    DaStatus::InternalError
}

/// Run `body` with panics converted to `DA_STATUS_INTERNAL_ERROR`.
///
/// `AssertUnwindSafe` is sound here: the closures only write through
/// their output pointers after full success, and the sole shared state
/// is the thread-local error string, which is overwritten wholesale.
fn guarded(body: impl FnOnce() -> DaStatus) -> DaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => fail_panic(payload),
    }
}

/// Common tail of every constructor: build, box, write the handle.
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
unsafe fn export_series(
    out: *mut *mut DaSeries,
    make: impl FnOnce() -> Result<CoefficientSeq, Error>,
) -> DaStatus {
    if out.is_null() {
        return fail_null("out");
    }
    guarded(|| match make() {
        Ok(seq) => {
            clear_last_error();
            unsafe { *out = Box::into_raw(Box::new(DaSeries { inner: seq })) };
            DaStatus::Ok
        }
        Err(e) => fail(e),
    })
}

fn require_len(n: usize) -> Result<usize, Error> {
    if n == 0 {
        return Err(Error::Invalid {
            what: "length",
            detail: "a series needs at least one coefficient".to_string(),
        });
    }
    Ok(n)
}

/// Version of the library as a static NUL-terminated string.  Never NULL;
/// do not free.
#[no_mangle]
pub extern "C" fn da_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Description of the most recent failure on the calling thread, as a
/// NUL-terminated string.  Empty (not NULL) if the last call succeeded.
/// The pointer is invalidated by the next library call on this thread;
/// copy the string if it must outlive that.
#[no_mangle]
pub extern "C" fn da_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The sequence `a_n = 1` for all `n`, truncated at `n`.
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_ones(n: usize, out: *mut *mut DaSeries) -> DaStatus {
    export_series(out, || Ok(zeta_coeffs(require_len(n)?)))
}

/// The non-principal character mod 3: `+1, -1, 0` repeating.
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_character_mod3(n: usize, out: *mut *mut DaSeries) -> DaStatus {
    export_series(out, || Ok(l_chi3_coeffs(require_len(n)?)))
}

/// The lacunary sequence supported on powers of three with
/// `a_{3^k} = 3^{(1 - alpha) k}`.  Requires `alpha` in `[0, 1]`.
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_lacunary3(
    alpha: f64,
    n: usize,
    out: *mut *mut DaSeries,
) -> DaStatus {
    export_series(out, || lacunary3_coeffs(alpha, require_len(n)?))
}

/// The gap family: the lacunary sequence of [`da_series_lacunary3`]
/// convolved with the character mod 3, a completely multiplicative
/// sequence whose simple and absolute abscissas differ by `alpha`.
/// Requires `alpha` in `[0, 1]`.
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_gap_family(
    alpha: f64,
    n: usize,
    out: *mut *mut DaSeries,
) -> DaStatus {
    export_series(out, || gap_family_coeffs(alpha, require_len(n)?))
}

/// The random Euler product `prod_p (1 + eps_p p^{-s})`: squarefree
/// support, `a_n = prod_{p | n} eps_p`, with each sign `eps_p` uniform
/// on `{+1, -1}` and derived deterministically from `seed`.
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_random_signs(
    seed: u64,
    n: usize,
    out: *mut *mut DaSeries,
) -> DaStatus {
    export_series(out, || {
        wintner_coeffs(&RandomModelConfig::new(seed, require_len(n)?))
    })
}

/// The all-minus instance of the random-sign model: `eps_p = -1` at
/// every prime, which reproduces the Möbius function exactly (the model
/// is supported on squarefree `n` with `a_n = prod_{p | n} eps_p`).
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_all_minus_signs(n: usize, out: *mut *mut DaSeries) -> DaStatus {
    export_series(out, || wintner_minus_coeffs(require_len(n)?))
}

/// The Möbius function `mu(n)`.
///
/// # Safety
///
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_mobius(n: usize, out: *mut *mut DaSeries) -> DaStatus {
    export_series(out, || Ok(mobius_seq(require_len(n)?)))
}

/// Read a series from a CSV file with header `n,re,im` and rows for
/// consecutive `n` starting at 1 (the format written by
/// [`da_series_write_csv`] and by the CLI's `gen` subcommand).
///
/// # Safety
///
/// `path` must be a valid NUL-terminated string and `out` valid for
/// writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_from_csv(
    path: *const c_char,
    out: *mut *mut DaSeries,
) -> DaStatus {
    if path.is_null() {
        return fail_null("path");
    }
    let path = unsafe { CStr::from_ptr(path) };
    export_series(out, || {
        let path = path.to_str().map_err(|_| Error::Invalid {
            what: "path",
            detail: "not valid UTF-8".to_string(),
        })?;
        read_coeffs_file(path)
    })
}

/// Write a series to a CSV file in the `n,re,im` format, with full
/// round-trip precision.
///
/// # Safety
///
/// `series` must be a live handle and `path` a valid NUL-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn da_series_write_csv(
    series: *const DaSeries,
    path: *const c_char,
) -> DaStatus {
    if series.is_null() {
        return fail_null("series");
    }
    if path.is_null() {
        return fail_null("path");
    }
    let series = unsafe { &*series };
    let path = unsafe { CStr::from_ptr(path) };
    guarded(|| {
        let path = match path.to_str() {
            Ok(p) => p,
            Err(_) => return fail_invalid("argument `path` is not valid UTF-8"),
        };
        match write_coeffs_file(path, &series.inner) {
            Ok(()) => {
                clear_last_error();
                DaStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of coefficients in the truncation.  Returns 0 for a NULL
/// handle.
///
/// # Safety
///
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn da_series_len(series: *const DaSeries) -> usize {
    if series.is_null() {
        return 0;
    }
    unsafe { &*series }.inner.len()
}

/// Fetch the coefficient `a_n` (1-based, so `n = 1` is the first).
///
/// # Safety
///
/// `series` must be a live handle; `re` and `im` must be valid for
/// writing one `double` each.
#[no_mangle]
pub unsafe extern "C" fn da_series_get(
    series: *const DaSeries,
    n: usize,
    re: *mut f64,
    im: *mut f64,
) -> DaStatus {
    if series.is_null() {
        return fail_null("series");
    }
    if re.is_null() {
        return fail_null("re");
    }
    if im.is_null() {
        return fail_null("im");
    }
    let inner = &unsafe { &*series }.inner;
    if n == 0 || n > inner.len() {
        return fail_invalid(&format!(
            "index n = {n} is outside 1..={} (indices are 1-based)",
            inner.len()
        ));
    }
    let value = inner.get(n);
    unsafe {
        *re = value.re;
        *im = value.im;
    }
    clear_last_error();
    DaStatus::Ok
}

/// New handle with coefficients `a_n / n^delta`: the vertical shift that
/// moves every abscissa down by `delta`.  Requires finite `delta`.
///
/// # Safety
///
/// `series` must be a live handle and `out` valid for writing one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn da_series_shifted(
    series: *const DaSeries,
    delta: f64,
    out: *mut *mut DaSeries,
) -> DaStatus {
    if series.is_null() {
        return fail_null("series");
    }
    let inner = &unsafe { &*series }.inner;
    export_series(out, || {
        if !delta.is_finite() {
            return Err(Error::Domain {
                what: "shift delta",
                value: delta,
                expected: "a finite value",
            });
        }
        Ok(inner.shifted(delta))
    })
}

/// Release a handle.  NULL is a no-op.  Do not use the handle afterward.
///
/// # Safety
///
/// `series` must be NULL or a handle not previously freed.
#[no_mangle]
pub unsafe extern "C" fn da_series_free(series: *mut DaSeries) {
    if !series.is_null() {
        drop(unsafe { Box::from_raw(series) });
    }
}

fn build_grid(kind: u32, len: usize) -> Result<SampleGrid, Error> {
    match kind {
        DA_GRID_DYADIC => SampleGrid::dyadic(len),
        DA_GRID_DYADIC_THREE_ADIC => SampleGrid::dyadic_with_three_adic(len),
        other => Err(Error::Invalid {
            what: "grid kind",
            detail: format!(
                "unknown value {other}; use DA_GRID_DYADIC (0) or DA_GRID_DYADIC_THREE_ADIC (1)"
            ),
        }),
    }
}

/// # Safety
///
/// `out` must be non-NULL and valid for writing one `DaEstimate`.
unsafe fn write_estimate(
    out: *mut DaEstimate,
    result: Result<dirichlet_abscissa::abscissa::AbscissaEstimate, Error>,
) -> DaStatus {
    match result {
        Ok(est) => {
            clear_last_error();
            unsafe {
                *out = DaEstimate {
                    estimate: est.estimate,
                    tail_ratio: est.tail_ratio,
                    envelope_slope: est.envelope_slope,
                    sample_count: est.samples.len(),
                    clamped: est.clamped,
                };
            }
            DaStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Estimate the abscissa of convergence from the growth of partial sums
/// along the chosen grid (`DA_GRID_*`).
///
/// # Safety
///
/// `series` must be a live handle and `out` valid for writing one
/// `DaEstimate`.
#[no_mangle]
pub unsafe extern "C" fn da_sigma_simple(
    series: *const DaSeries,
    grid_kind: u32,
    out: *mut DaEstimate,
) -> DaStatus {
    if series.is_null() {
        return fail_null("series");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let inner = &unsafe { &*series }.inner;
    guarded(|| {
        let result =
            build_grid(grid_kind, inner.len()).and_then(|grid| sigma_c_estimate(inner, &grid));
        unsafe { write_estimate(out, result) }
    })
}

/// Estimate the abscissa of absolute convergence from the growth of
/// absolute partial sums along the chosen grid.
///
/// # Safety
///
/// `series` must be a live handle and `out` valid for writing one
/// `DaEstimate`.
#[no_mangle]
pub unsafe extern "C" fn da_sigma_absolute(
    series: *const DaSeries,
    grid_kind: u32,
    out: *mut DaEstimate,
) -> DaStatus {
    if series.is_null() {
        return fail_null("series");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let inner = &unsafe { &*series }.inner;
    guarded(|| {
        let result =
            build_grid(grid_kind, inner.len()).and_then(|grid| sigma_a_estimate(inner, &grid));
        unsafe { write_estimate(out, result) }
    })
}

/// Estimate the abscissa of uniform convergence: each truncation is
/// lifted to a polynomial on the polytorus and its sup-norm found by
/// multistart coordinate ascent.  Pass `restarts = 0` or `sweeps = 0`
/// to use the built-in defaults (32 restarts, 200 sweeps); `seed`
/// determinizes the restart points.  This is by far the most expensive
/// of the three estimators.
///
/// # Safety
///
/// `series` must be a live handle and `out` valid for writing one
/// `DaEstimate`.
#[no_mangle]
pub unsafe extern "C" fn da_sigma_uniform(
    series: *const DaSeries,
    grid_kind: u32,
    restarts: usize,
    sweeps: usize,
    seed: u64,
    out: *mut DaEstimate,
) -> DaStatus {
    if series.is_null() {
        return fail_null("series");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let inner = &unsafe { &*series }.inner;
    guarded(|| {
        let defaults = OptimizerConfig::default();
        let opt = OptimizerConfig {
            restarts: if restarts == 0 {
                defaults.restarts
            } else {
                restarts
            },
            coordinate_sweeps: if sweeps == 0 {
                defaults.coordinate_sweeps
            } else {
                sweeps
            },
            seed,
            ..defaults
        };
        let result = build_grid(grid_kind, inner.len())
            .and_then(|grid| sigma_b_estimate(inner, &grid, &opt));
        unsafe { write_estimate(out, result) }
    })
}

/// The sharp constant `C(r)` relating a power series' coefficient sum at
/// radius `r` to its sup-norm on the unit circle: `1` for `r <= 1/3`,
/// `1/sqrt(1 - r^2)` for `1/3 < r < 1`.  Requires `r` in `[0, 1)`.
///
/// # Safety
///
/// `out` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn da_bohr_constant(r: f64, out: *mut f64) -> DaStatus {
    if out.is_null() {
        return fail_null("out");
    }
    guarded(|| match bohr_constant(r) {
        Ok(value) => {
            clear_last_error();
            unsafe { *out = value };
            DaStatus::Ok
        }
        Err(e) => fail(e),
    })
}
