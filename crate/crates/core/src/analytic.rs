//! Closed forms for the symmetric control path (equal mixture, equal
//! membrane permeabilities) and its two relaxation-dominated limits.

use std::f64::consts::{LN_2, SQRT_2};

use crate::error::{Error, Result};
use crate::geometry::{metric_raw, PathSamples};
use crate::model::{ConfigPoint, SystemParams};
use crate::roots::bracketed_root;

/// Which relaxation channel dominates the excess work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `tau_h << tau_p`: particle transport across the membranes.
    Particle,
    /// `tau_h >> tau_p`: heat exchange with the bath.
    Heat,
}

/// Ratio beyond which a limit regime is considered established.
pub const REGIME_RATIO: f64 = 1e2;

const ROOT_TOL: f64 = 1e-12;

fn require_symmetric(params: &SystemParams) -> Result<f64> {
    if !params.is_symmetric() {
        return Err(Error::domain(
            "closed forms need tau_alpha = tau_beta and eps_alpha = eps_beta = 0.5",
        ));
    }
    Ok(params.tau_alpha())
}

/// `asinh(z)` for `z >= 0` through `ln_1p`, accurate for small `z`.
fn asinh_stable(z: f64) -> f64 {
    let z2 = z * z;
    (z + z2 / (1.0 + (1.0 + z2).sqrt())).ln_1p()
}

/// Antiderivative of the length element along the diagonal.
fn length_primitive(params: &SystemParams, tau_p: f64, x: f64) -> f64 {
    let th = params.tau_h();
    let u = 1.0 - x;
    2.0 * params.energy_scale().sqrt()
        * ((tau_p / u + 2.0 / 3.0 * th).sqrt()
            - (2.0 * th / 3.0).sqrt() * asinh_stable((2.0 * u * th / (3.0 * tau_p)).sqrt()))
}

/// Thermodynamic length of the diagonal `x_l = x_r` from the origin to
/// `(x_end, x_end)`, in (J s)^1/2.
pub fn symmetric_length(params: &SystemParams, x_end: f64) -> Result<f64> {
    let tau_p = require_symmetric(params)?;
    if !(0.0..=0.5).contains(&x_end) {
        return Err(Error::domain(format!("x_end must lie in [0, 0.5], got {x_end}")));
    }
    if x_end == 0.0 {
        return Ok(0.0);
    }
    Ok(length_primitive(params, tau_p, x_end) - length_primitive(params, tau_p, 0.0))
}

/// `dL_s/dx`, the length element along the diagonal.
pub fn symmetric_length_density(params: &SystemParams, x: f64) -> Result<f64> {
    require_symmetric(params)?;
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain(format!("x must lie in [0, 1), got {x}")));
    }
    let g = metric_raw(params, x, x);
    Ok((g.g_ll + 2.0 * g.g_lr + g.g_rr).sqrt())
}

/// Constant-speed protocol along the diagonal: the `x` solving
/// `L_s(x) = s L_s(1/2)`.
pub fn symmetric_protocol(params: &SystemParams, s: f64) -> Result<f64> {
    require_symmetric(params)?;
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::domain(format!("s must lie in [0, 1], got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    if s == 1.0 {
        return Ok(0.5);
    }
    let total = symmetric_length(params, 0.5)?;
    let target = s * total;
    bracketed_root(
        |x| symmetric_length(params, x).unwrap_or(f64::NAN) - target,
        0.0,
        0.5,
        ROOT_TOL,
        200,
    )
    .map_err(|e| Error::Numerical(format!("symmetric protocol root at s = {s}: {e}")))
}

/// `d x / d s` of [`symmetric_protocol`] at the point `x = x(s)`.
pub fn symmetric_protocol_rate(params: &SystemParams, x: f64) -> Result<f64> {
    Ok(symmetric_length(params, 0.5)? / symmetric_length_density(params, x)?)
}

/// Samples the constant-speed diagonal protocol on `n` uniform `s` values,
/// with exact derivatives.
pub fn symmetric_protocol_samples(params: &SystemParams, n: usize) -> Result<PathSamples> {
    if n < 2 {
        return Err(Error::domain("need at least two samples"));
    }
    let mut s = Vec::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    let mut der = Vec::with_capacity(n);
    for i in 0..n {
        let si = if i == n - 1 { 1.0 } else { i as f64 / (n - 1) as f64 };
        let x = symmetric_protocol(params, si)?;
        let v = symmetric_protocol_rate(params, x)?;
        s.push(si);
        pts.push(ConfigPoint { x_l: x, x_r: x });
        der.push([v, v]);
    }
    PathSamples::with_derivatives(s, pts, der)
}

/// Minimum excess work of the symmetric protocol in a limit regime,
/// `(12 - 8 sqrt 2) N_t k_B T_0 tau_p / tau` (particle) or
/// `2 (ln 2)^2 / 3 N_t k_B T_0 tau_h / tau` (heat).
pub fn limit_min_excess_work(params: &SystemParams, tau_op: f64, regime: Regime) -> Result<f64> {
    let tau_p = require_symmetric(params)?;
    if !(tau_op > 0.0 && tau_op.is_finite()) {
        return Err(Error::domain(format!("operation time must be > 0, got {tau_op}")));
    }
    let scale = params.energy_scale();
    Ok(match regime {
        Regime::Particle => limit_prefactor(Regime::Particle) * scale * tau_p / tau_op,
        Regime::Heat => limit_prefactor(Regime::Heat) * scale * params.tau_h() / tau_op,
    })
}

/// Dimensionless prefactor of [`limit_min_excess_work`].
pub fn limit_prefactor(regime: Regime) -> f64 {
    match regime {
        Regime::Particle => 12.0 - 8.0 * SQRT_2,
        Regime::Heat => 2.0 * LN_2 * LN_2 / 3.0,
    }
}

/// Closed-form optimal protocol of a limit regime.
pub fn limit_protocol(regime: Regime, s: f64) -> f64 {
    match regime {
        Regime::Particle => 1.0 - ((SQRT_2 - 1.0) * s + 1.0).powi(-2),
        Regime::Heat => 1.0 - (-s * LN_2).exp(),
    }
}

/// Derivative of [`limit_protocol`] with respect to `s`.
pub fn limit_protocol_rate(regime: Regime, s: f64) -> f64 {
    match regime {
        Regime::Particle => 2.0 * (SQRT_2 - 1.0) * ((SQRT_2 - 1.0) * s + 1.0).powi(-3),
        Regime::Heat => LN_2 * (-s * LN_2).exp(),
    }
}

/// Whether the timescale ratio of `params` places it well inside `regime`.
pub fn regime_holds(params: &SystemParams, regime: Regime) -> bool {
    let ratio = params.tau_h() / params.tau_alpha();
    match regime {
        Regime::Particle => ratio < 1.0 / REGIME_RATIO,
        Regime::Heat => ratio > REGIME_RATIO,
    }
}
