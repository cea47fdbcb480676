//! C ABI for the `thermosep` library.
//!
//! Objects are opaque handles created by `*_new`/constructor functions and
//! released with the matching `*_free`. Fallible functions return a
//! [`ThermosepStatus`] and write results through out-pointers; the message
//! of the last failure on the calling thread is available from
//! [`thermosep_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use thermosep::analytic::{symmetric_length, symmetric_protocol_samples};
use thermosep::geodesic::{find_all_geodesics, to_protocol, GeodesicOptions, GeodesicSolution};
use thermosep::geometry::{metric_at, path_length, PathSamples};
use thermosep::model::{quasi_static_work, ConfigPoint, SystemParams};
use thermosep::simulate::{evolve, Trajectory};
use thermosep::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThermosepStatus {
    Ok = 0,
    Domain = 1,
    Singular = 2,
    Trajectory = 3,
    Convergence = 4,
    Numerical = 5,
    Config = 6,
    Io = 7,
    NullPointer = 8,
    Panic = 9,
}

/// System parameters.
pub struct ThermosepParams(SystemParams);

/// A sampled protocol `s -> (x_l, x_r)`.
pub struct ThermosepProtocol(PathSamples);

/// The geodesics found by [`thermosep_find_geodesics`], shortest first.
pub struct ThermosepGeodesics(Vec<GeodesicSolution>);

/// A simulated run.
pub struct ThermosepTrajectory(Trajectory);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ThermosepStatus {
    match e {
        Error::Domain(_) => ThermosepStatus::Domain,
        Error::Singular { .. } => ThermosepStatus::Singular,
        Error::Trajectory { .. } => ThermosepStatus::Trajectory,
        Error::Convergence { .. } => ThermosepStatus::Convergence,
        Error::Numerical(_) => ThermosepStatus::Numerical,
        Error::Config(_) => ThermosepStatus::Config,
        Error::Io { .. } => ThermosepStatus::Io,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), ThermosepStatus>>(f: F) -> ThermosepStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ThermosepStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            ThermosepStatus::Panic
        }
    }
}

fn lift<T>(r: thermosep::Result<T>) -> Result<T, ThermosepStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, ThermosepStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null pointer argument".into());
        ThermosepStatus::NullPointer
    })
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), ThermosepStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(ThermosepStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a>(p: *const f64, n: usize) -> Result<&'a [f64], ThermosepStatus> {
    if p.is_null() {
        set_error("null array argument".into());
        return Err(ThermosepStatus::NullPointer);
    }
    Ok(std::slice::from_raw_parts(p, n))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len` bytes). Returns the full message length without the
/// terminator, or 0 if there is none.
///
/// # Safety
/// `buf` must point to `len` writable bytes or be null.
#[no_mangle]
pub unsafe extern "C" fn thermosep_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Reference parameter set (never fails).
#[no_mangle]
pub extern "C" fn thermosep_params_reference() -> *mut ThermosepParams {
    Box::into_raw(Box::new(ThermosepParams(SystemParams::reference())))
}

/// New parameter set; `eps_beta = 1 - eps_alpha`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn thermosep_params_new(
    n_total: f64,
    t_bath_k: f64,
    eps_alpha: f64,
    tau_alpha_s: f64,
    tau_beta_s: f64,
    tau_h_s: f64,
    out: *mut *mut ThermosepParams,
) -> ThermosepStatus {
    guard(|| {
        let p = lift(SystemParams::new(
            n_total,
            t_bath_k,
            eps_alpha,
            1.0 - eps_alpha,
            tau_alpha_s,
            tau_beta_s,
            tau_h_s,
        ))?;
        write(out, Box::into_raw(Box::new(ThermosepParams(p))))
    })
}

/// # Safety
/// `p` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn thermosep_params_free(p: *mut ThermosepParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Metric components `[g_ll, g_lr, g_rr]` (J s) at `(x_l, x_r)`.
///
/// # Safety
/// `params` valid; `out` points to 3 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn thermosep_metric(
    params: *const ThermosepParams,
    x_l: f64,
    x_r: f64,
    out: *mut f64,
) -> ThermosepStatus {
    guard(|| {
        let p = deref(params)?;
        let g = lift(metric_at(&p.0, ConfigPoint { x_l, x_r }))?;
        if out.is_null() {
            return write(out, 0.0);
        }
        for (i, v) in [g.g_ll, g.g_lr, g.g_rr].into_iter().enumerate() {
            out.add(i).write(v);
        }
        Ok(())
    })
}

/// Thermodynamic length of the diagonal from the origin to `(x_end, x_end)`.
///
/// # Safety
/// `params` and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_symmetric_length(
    params: *const ThermosepParams,
    x_end: f64,
    out: *mut f64,
) -> ThermosepStatus {
    guard(|| write(out, lift(symmetric_length(&deref(params)?.0, x_end))?))
}

/// Quasi-static work to complete separation at the mixture fractions, J.
///
/// # Safety
/// `params` and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_quasi_static_work(params: *const ThermosepParams, out: *mut f64) -> ThermosepStatus {
    guard(|| {
        let p = &deref(params)?.0;
        write(out, lift(quasi_static_work(p, p.target()))?)
    })
}

/// Protocol from `n` samples `(s[i], x_l[i], x_r[i])`.
///
/// # Safety
/// The arrays hold `n` doubles each; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_protocol_new(
    s: *const f64,
    x_l: *const f64,
    x_r: *const f64,
    n: usize,
    out: *mut *mut ThermosepProtocol,
) -> ThermosepStatus {
    guard(|| {
        let (s, l, r) = (slice(s, n)?, slice(x_l, n)?, slice(x_r, n)?);
        let pts = l.iter().zip(r).map(|(&x_l, &x_r)| ConfigPoint { x_l, x_r }).collect();
        let path = lift(PathSamples::new(s.to_vec(), pts))?;
        write(out, Box::into_raw(Box::new(ThermosepProtocol(path))))
    })
}

/// Constant-speed protocol along the diagonal with `n` samples.
///
/// # Safety
/// `params` and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_protocol_symmetric(
    params: *const ThermosepParams,
    n: usize,
    out: *mut *mut ThermosepProtocol,
) -> ThermosepStatus {
    guard(|| {
        let path = lift(symmetric_protocol_samples(&deref(params)?.0, n))?;
        write(out, Box::into_raw(Box::new(ThermosepProtocol(path))))
    })
}

/// Number of samples in a protocol (0 for null).
///
/// # Safety
/// `protocol` valid or null.
#[no_mangle]
pub unsafe extern "C" fn thermosep_protocol_len(protocol: *const ThermosepProtocol) -> usize {
    protocol.as_ref().map_or(0, |p| p.0.len())
}

/// Copies the samples into caller arrays of length `thermosep_protocol_len`.
///
/// # Safety
/// Each array must hold `thermosep_protocol_len(protocol)` doubles.
#[no_mangle]
pub unsafe extern "C" fn thermosep_protocol_copy(
    protocol: *const ThermosepProtocol,
    s: *mut f64,
    x_l: *mut f64,
    x_r: *mut f64,
) -> ThermosepStatus {
    guard(|| {
        let p = &deref(protocol)?.0;
        if s.is_null() || x_l.is_null() || x_r.is_null() {
            return write(ptr::null_mut::<f64>(), 0.0);
        }
        for (i, (&si, pt)) in p.s().iter().zip(p.points()).enumerate() {
            s.add(i).write(si);
            x_l.add(i).write(pt.x_l);
            x_r.add(i).write(pt.x_r);
        }
        Ok(())
    })
}

/// Thermodynamic length of a protocol's path.
///
/// # Safety
/// All pointers valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_path_length(
    params: *const ThermosepParams,
    protocol: *const ThermosepProtocol,
    out: *mut f64,
) -> ThermosepStatus {
    guard(|| write(out, lift(path_length(&deref(params)?.0, &deref(protocol)?.0))?))
}

/// # Safety
/// `p` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn thermosep_protocol_free(p: *mut ThermosepProtocol) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// All geodesics from the origin to the parameter set's target, scanning
/// `n_scan` initial angles.
///
/// # Safety
/// `params` and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_find_geodesics(
    params: *const ThermosepParams,
    n_scan: usize,
    out: *mut *mut ThermosepGeodesics,
) -> ThermosepStatus {
    guard(|| {
        let p = &deref(params)?.0;
        let sols = lift(find_all_geodesics(p, p.target(), n_scan, &GeodesicOptions::default()))?;
        write(out, Box::into_raw(Box::new(ThermosepGeodesics(sols))))
    })
}

/// Number of geodesics in the set (0 for null).
///
/// # Safety
/// `g` valid or null.
#[no_mangle]
pub unsafe extern "C" fn thermosep_geodesics_count(g: *const ThermosepGeodesics) -> usize {
    g.as_ref().map_or(0, |g| g.0.len())
}

unsafe fn solution<'a>(g: *const ThermosepGeodesics, index: usize) -> Result<&'a GeodesicSolution, ThermosepStatus> {
    deref(g)?.0.get(index).ok_or_else(|| {
        set_error(format!("geodesic index {index} out of range"));
        ThermosepStatus::Domain
    })
}

/// Length, terminal gap and initial angle of geodesic `index`.
///
/// # Safety
/// `g` valid; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_geodesic_info(
    g: *const ThermosepGeodesics,
    index: usize,
    length: *mut f64,
    terminal_gap: *mut f64,
    theta0: *mut f64,
) -> ThermosepStatus {
    guard(|| {
        let sol = solution(g, index)?;
        write(length, sol.length)?;
        write(terminal_gap, sol.terminal_gap)?;
        write(theta0, sol.initial_angle)
    })
}

/// Constant-speed protocol of geodesic `index` on `n` uniform samples.
///
/// # Safety
/// `g` and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_geodesic_protocol(
    g: *const ThermosepGeodesics,
    index: usize,
    n: usize,
    out: *mut *mut ThermosepProtocol,
) -> ThermosepStatus {
    guard(|| {
        let path = lift(to_protocol(solution(g, index)?, n))?;
        write(out, Box::into_raw(Box::new(ThermosepProtocol(path))))
    })
}

/// # Safety
/// `g` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn thermosep_geodesics_free(g: *mut ThermosepGeodesics) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Simulates `protocol` in operation time `tau_s`.
///
/// # Safety
/// All pointers valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_evolve(
    params: *const ThermosepParams,
    protocol: *const ThermosepProtocol,
    tau_s: f64,
    out: *mut *mut ThermosepTrajectory,
) -> ThermosepStatus {
    guard(|| {
        let tr = lift(evolve(&deref(params)?.0, &deref(protocol)?.0, tau_s))?;
        write(out, Box::into_raw(Box::new(ThermosepTrajectory(tr))))
    })
}

/// Total and excess work of a run, J.
///
/// # Safety
/// All pointers valid.
#[no_mangle]
pub unsafe extern "C" fn thermosep_trajectory_work(
    tr: *const ThermosepTrajectory,
    total_work: *mut f64,
    excess_work: *mut f64,
) -> ThermosepStatus {
    guard(|| {
        let t = &deref(tr)?.0;
        write(total_work, t.total_work)?;
        write(excess_work, t.excess_work)
    })
}

/// Number of output samples (0 for null).
///
/// # Safety
/// `tr` valid or null.
#[no_mangle]
pub unsafe extern "C" fn thermosep_trajectory_len(tr: *const ThermosepTrajectory) -> usize {
    tr.as_ref().map_or(0, |t| t.0.samples.len())
}

/// Copies the samples as rows of 7 doubles
/// `(t_s, x_l, x_r, n_alpha_l, n_beta_r, temperature_k, work_j)` into `rows`,
/// which must hold `7 * thermosep_trajectory_len(tr)` doubles.
///
/// # Safety
/// `tr` valid; `rows` large enough.
#[no_mangle]
pub unsafe extern "C" fn thermosep_trajectory_copy(tr: *const ThermosepTrajectory, rows: *mut f64) -> ThermosepStatus {
    guard(|| {
        let t = &deref(tr)?.0;
        if rows.is_null() {
            return write(rows, 0.0);
        }
        for (i, s) in t.samples.iter().enumerate() {
            let row = [
                s.t,
                s.state.config.x_l,
                s.state.config.x_r,
                s.state.n_alpha_l,
                s.state.n_beta_r,
                s.state.temperature,
                s.work,
            ];
            for (k, v) in row.into_iter().enumerate() {
                rows.add(7 * i + k).write(v);
            }
        }
        Ok(())
    })
}

/// # Safety
/// `tr` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn thermosep_trajectory_free(tr: *mut ThermosepTrajectory) {
    if !tr.is_null() {
        drop(Box::from_raw(tr));
    }
}
