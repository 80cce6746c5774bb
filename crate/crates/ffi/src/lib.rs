//! C ABI for `simplex-root`.
//!
//! Objects are opaque handles created by `sr_*_new`-style functions and
//! released with the matching `sr_*_free`. Every fallible call returns an
//! [`SrStatus`]; on failure a description is available from
//! [`sr_last_error`] on the same thread. Coordinates travel as flat
//! row-major `double` arrays, `dimension + 1` rows of `dimension` values.
//! Panics never cross the boundary; they surface as `SR_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use simplex_root::document::SimplexDocument;
use simplex_root::oracle;
use simplex_root::verify::{verify_simplex, VerifyConfig};
use simplex_root::{
    iterate, root, subsequence_limits, ConvergenceReport, DoubleDouble, GeomError, IterationConfig, IterationError,
    Real, Simplex, StopReason, Trajectory,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    Overflow = 4,
    UnsupportedDimension = 5,
    OutOfRange = 6,
    BufferTooSmall = 7,
    NotConverged = 8,
    Panic = 99,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrStopReason {
    MaxSteps = 0,
    Overflow = 1,
    ResolutionLimit = 2,
}

/// Scalars of one iterate.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SrStep {
    pub k: usize,
    pub inradius: f64,
    pub circumradius: f64,
    pub ratio: f64,
}

/// Scalar part of the convergence report.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SrReport {
    pub steps_used: usize,
    pub even_converged: bool,
    pub odd_converged: bool,
    pub gap: f64,
    pub rho_estimate: f64,
    pub center_identity_residual: f64,
}

/// Relative residuals of the root's properties for one simplex.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SrVerifyReport {
    pub circumsphere_residual: f64,
    pub gram_residual: f64,
    pub min_margin: f64,
    pub mc_fraction: f64,
    pub container_slack: f64,
    pub ratio_slack: f64,
    pub passed: bool,
}

/// Opaque simplex handle.
pub struct SrSimplex {
    inner: Simplex,
}

/// Opaque trajectory handle, computed in double-double precision.
pub struct SrTrajectory {
    traj: Trajectory<DoubleDouble>,
    report: Option<ConvergenceReport>,
}

struct Fail(SrStatus, String);

impl From<GeomError> for Fail {
    fn from(e: GeomError) -> Self {
        let status = match e {
            GeomError::Degenerate { .. } => SrStatus::Degenerate,
            GeomError::Overflow { .. } => SrStatus::Overflow,
            GeomError::IndexOutOfRange { .. } => SrStatus::OutOfRange,
            _ => SrStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<IterationError> for Fail {
    fn from(e: IterationError) -> Self {
        match e {
            IterationError::Geom(g) => g.into(),
            IterationError::OverflowBeforeTwoSteps { .. } => Fail(SrStatus::Overflow, e.to_string()),
            IterationError::UnsupportedDimension(_) => Fail(SrStatus::UnsupportedDimension, e.to_string()),
            IterationError::TooShort { .. } => Fail(SrStatus::NotConverged, e.to_string()),
            IterationError::InvalidConfig(_) => Fail(SrStatus::InvalidArgument, e.to_string()),
        }
    }
}

impl From<oracle::OracleError> for Fail {
    fn from(e: oracle::OracleError) -> Self {
        match e {
            oracle::OracleError::Geom(g) => g.into(),
            _ => Fail(SrStatus::InvalidArgument, e.to_string()),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SrStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SrStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(SrStatus::NullPointer, "null pointer argument".into())
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn out_slice<'a>(p: *mut f64, len: usize, needed: usize) -> Result<&'a mut [f64], Fail> {
    if p.is_null() {
        return Err(null());
    }
    if len < needed {
        return Err(Fail(SrStatus::BufferTooSmall, format!("buffer holds {len} values, need {needed}")));
    }
    Ok(std::slice::from_raw_parts_mut(p, needed))
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `sr_*` call on this thread.
#[no_mangle]
pub extern "C" fn sr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a simplex from `(dimension + 1) * dimension` row-major coordinates.
///
/// # Safety
/// `coords` must point to `len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_new(
    dimension: usize,
    coords: *const f64,
    len: usize,
    out: *mut *mut SrSimplex,
) -> SrStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null());
        }
        let want = (dimension + 1) * dimension;
        if dimension == 0 || len != want {
            return Err(Fail(SrStatus::InvalidArgument, format!("expected {want} coordinates, got {len}")));
        }
        let flat = std::slice::from_raw_parts(coords, len);
        let rows: Vec<&[f64]> = flat.chunks(dimension).collect();
        let inner = Simplex::from_rows(&rows)?;
        put_box(out, SrSimplex { inner })
    })
}

/// Parse a simplex document (`{"dimension", "vertices", "name"}` JSON).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_from_json(json: *const c_char, out: *mut *mut SrSimplex) -> SrStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| Fail(SrStatus::InvalidArgument, e.to_string()))?;
        let doc = SimplexDocument::parse(text).map_err(|e| Fail(SrStatus::InvalidArgument, e.to_string()))?;
        let inner = doc.to_simplex().map_err(|e| Fail(SrStatus::InvalidArgument, e.to_string()))?;
        put_box(out, SrSimplex { inner })
    })
}

/// Seeded random simplex with vertices in `[-1, 1]^dimension` and `r/R >= quality_floor`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_random(
    dimension: usize,
    seed: u64,
    quality_floor: f64,
    out: *mut *mut SrSimplex,
) -> SrStatus {
    guard(|| {
        let inner = oracle::random_simplex(dimension, seed, quality_floor)?;
        put_box(out, SrSimplex { inner })
    })
}

/// # Safety
/// `s` must come from this library and not be freed already; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_free(s: *mut SrSimplex) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Dimension of the simplex, 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_dimension(s: *const SrSimplex) -> usize {
    s.as_ref().map_or(0, |s| s.inner.dim())
}

/// Copy the vertices, row-major, into `out`.
///
/// # Safety
/// `s` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_vertices(s: *const SrSimplex, out: *mut f64, len: usize) -> SrStatus {
    guard(|| {
        let s = &obj(s)?.inner;
        let n = s.dim();
        let dst = out_slice(out, len, (n + 1) * n)?;
        for (d, v) in dst.iter_mut().zip(s.vertices().iter().flat_map(|v| v.coords())) {
            *d = *v;
        }
        Ok(())
    })
}

/// Inscribed sphere: center into `center` (`len >= dimension`), radius into `radius`.
///
/// # Safety
/// `s` must be a live handle, `center` must hold `len` doubles, `radius` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_insphere(s: *const SrSimplex, center: *mut f64, len: usize, radius: *mut f64) -> SrStatus {
    guard(|| {
        let s = &obj(s)?.inner;
        let sphere = s.insphere()?;
        out_slice(center, len, s.dim())?.copy_from_slice(sphere.center.coords());
        put(radius, sphere.radius)
    })
}

/// Circumscribed sphere, as [`sr_simplex_insphere`].
///
/// # Safety
/// As [`sr_simplex_insphere`].
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_circumsphere(
    s: *const SrSimplex,
    center: *mut f64,
    len: usize,
    radius: *mut f64,
) -> SrStatus {
    guard(|| {
        let s = &obj(s)?.inner;
        let sphere = s.circumsphere()?;
        out_slice(center, len, s.dim())?.copy_from_slice(sphere.center.coords());
        put(radius, sphere.radius)
    })
}

/// The root of `s` as a new handle.
///
/// # Safety
/// `s` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_root(s: *const SrSimplex, out: *mut *mut SrSimplex) -> SrStatus {
    guard(|| {
        let rr = root(&obj(s)?.inner)?;
        put_box(out, SrSimplex { inner: rr.root })
    })
}

/// Check the root's properties on `s` with `mc_samples` Monte Carlo samples.
///
/// # Safety
/// `s` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_simplex_verify(
    s: *const SrSimplex,
    tolerance: f64,
    mc_samples: usize,
    seed: u64,
    out: *mut SrVerifyReport,
) -> SrStatus {
    guard(|| {
        let s = &obj(s)?.inner;
        if mc_samples == 0 || !(tolerance >= 0.0) {
            return Err(Fail(SrStatus::InvalidArgument, "need mc_samples >= 1 and tolerance >= 0".into()));
        }
        let r = verify_simplex(s, 0, Some(seed), &VerifyConfig { tolerance, mc_samples })?;
        put(
            out,
            SrVerifyReport {
                circumsphere_residual: r.circumsphere_residual,
                gram_residual: r.gram_residual,
                min_margin: r.min_margin,
                mc_fraction: r.mc_fraction,
                container_slack: r.container_slack,
                ratio_slack: r.ratio_slack,
                passed: r.passed,
            },
        )
    })
}

/// Iterate the root map up to `max_steps` simplices with Cauchy threshold `tolerance`.
///
/// # Safety
/// `s` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_iterate(
    s: *const SrSimplex,
    max_steps: usize,
    tolerance: f64,
    recenter: bool,
    out: *mut *mut SrTrajectory,
) -> SrStatus {
    guard(|| {
        let s = &obj(s)?.inner;
        let cfg = IterationConfig { max_steps, cauchy_tolerance: tolerance, recenter, ..Default::default() };
        let traj = iterate(&s.cast::<DoubleDouble>(), &cfg)?;
        let report = subsequence_limits(&traj, &cfg).ok();
        put_box(out, SrTrajectory { traj, report })
    })
}

/// # Safety
/// `t` must come from [`sr_iterate`] and not be freed already; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sr_trajectory_free(t: *mut SrTrajectory) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of iterates, 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_trajectory_len(t: *const SrTrajectory) -> usize {
    t.as_ref().map_or(0, |t| t.traj.len())
}

/// Why the iteration stopped.
///
/// # Safety
/// `t` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_trajectory_stop(t: *const SrTrajectory, out: *mut SrStopReason) -> SrStatus {
    guard(|| {
        let stop = match obj(t)?.traj.stop {
            StopReason::MaxSteps => SrStopReason::MaxSteps,
            StopReason::Overflow => SrStopReason::Overflow,
            StopReason::ResolutionLimit => SrStopReason::ResolutionLimit,
        };
        put(out, stop)
    })
}

/// Scalars of iterate `index` (0-based; `k = index + 1`).
///
/// # Safety
/// `t` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_trajectory_step(t: *const SrTrajectory, index: usize, out: *mut SrStep) -> SrStatus {
    guard(|| {
        let r = record(obj(t)?, index)?;
        put(
            out,
            SrStep { k: r.k, inradius: r.inradius.as_f64(), circumradius: r.circumradius.as_f64(), ratio: r.ratio.as_f64() },
        )
    })
}

fn record(t: &SrTrajectory, index: usize) -> Result<&simplex_root::TrajectoryRecord<DoubleDouble>, Fail> {
    t.traj.records.get(index).ok_or_else(|| {
        Fail(SrStatus::OutOfRange, format!("index {index} out of range for {} iterates", t.traj.len()))
    })
}

/// Absolute incenter and circumcenter of iterate `index`, each `dimension` values.
///
/// # Safety
/// `t` must be a live handle; `incenter` and `circumcenter` must each hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_trajectory_centers(
    t: *const SrTrajectory,
    index: usize,
    incenter: *mut f64,
    circumcenter: *mut f64,
    len: usize,
) -> SrStatus {
    guard(|| {
        let r = record(obj(t)?, index)?;
        let n = r.incenter.dim();
        out_slice(incenter, len, n)?.copy_from_slice(&r.incenter.to_f64());
        out_slice(circumcenter, len, n)?.copy_from_slice(&r.circumcenter.to_f64());
        Ok(())
    })
}

/// Convergence report; `SR_STATUS_NOT_CONVERGED` if fewer than four iterates exist.
/// `even_limit` and `odd_limit` may be null; otherwise each must hold `len` doubles.
///
/// # Safety
/// `t` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_trajectory_report(
    t: *const SrTrajectory,
    out: *mut SrReport,
    even_limit: *mut f64,
    odd_limit: *mut f64,
    len: usize,
) -> SrStatus {
    guard(|| {
        let t = obj(t)?;
        let r = t.report.as_ref().ok_or_else(|| {
            Fail(SrStatus::NotConverged, format!("{} iterates are too few for a report", t.traj.len()))
        })?;
        if !even_limit.is_null() {
            out_slice(even_limit, len, r.even_limit.len())?.copy_from_slice(&r.even_limit);
        }
        if !odd_limit.is_null() {
            out_slice(odd_limit, len, r.odd_limit.len())?.copy_from_slice(&r.odd_limit);
        }
        put(
            out,
            SrReport {
                steps_used: r.steps_used,
                even_converged: r.even_converged,
                odd_converged: r.odd_converged,
                gap: r.gap,
                rho_estimate: r.rho_estimate,
                center_identity_residual: r.center_identity_residual,
            },
        )
    })
}
