//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Bisection safeguarded secant on a sign-changing bracket `[a, b]`.
///
/// A secant (regula falsi) candidate is used when it falls strictly inside
/// the bracket and the bracket shrank by at least half over the previous
/// two iterations; otherwise the midpoint is taken. Stops once the bracket
/// is narrower than `x_tol` or `f` vanishes exactly.
pub fn bracketed_root<F>(mut f: F, a: f64, b: f64, x_tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.signum() != f_hi.signum()) || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Convergence {
            message: format!("[{lo}, {hi}] does not bracket a root"),
            best_miss: f_lo.abs().min(f_hi.abs()),
        });
    }

    let mut width_two_ago = f64::INFINITY;
    let mut width_prev = hi - lo;
    for _ in 0..max_iter {
        let width = hi - lo;
        if width <= x_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        let use_secant = secant > lo && secant < hi && width <= 0.5 * width_two_ago;
        let x = if use_secant { secant } else { mid };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        width_two_ago = width_prev;
        width_prev = width;
    }
    if hi - lo > x_tol {
        return Err(Error::Convergence {
            message: format!("bracket [{lo}, {hi}] still wider than {x_tol:e} after {max_iter} iterations"),
            best_miss: f_lo.abs().min(f_hi.abs()),
        });
    }
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Plain bisection for functions that may jump at the sign change.
/// Returns the final bracket `(lo, hi)`.
pub fn bisect<F>(mut f: F, a: f64, b: f64, x_tol: f64, max_iter: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok((lo, lo));
    }
    if f_hi == 0.0 {
        return Ok((hi, hi));
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Convergence {
            message: format!("[{lo}, {hi}] does not bracket a sign change"),
            best_miss: f_lo.abs().min(f_hi.abs()),
        });
    }
    let s_lo = f_lo.signum();
    for _ in 0..max_iter {
        if hi - lo <= x_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok((mid, mid));
        }
        if fm.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}
