//! Physical parameterization of the binary membrane separation problem,
//! equilibrium partitions and quasi-static work.
//!
//! Volumes only enter through the dimensionless fractions `x_l = V_L/V_t`
//! and `x_r = V_R/V_t`; the membrane area and permeabilities only enter
//! through the transport timescales `tau_alpha`, `tau_beta`.

use crate::error::{Error, Result};

/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Avogadro constant, 1/mol (exact SI value).
pub const AVOGADRO: f64 = 6.02214076e23;

/// Molecule count of the reference parameter set: two moles, counted with
/// the three-digit Avogadro number 6.02e23 that the reference lengths
/// (59.68 and 59.64 (J s)^1/2) were computed with.
pub const REFERENCE_N_TOTAL: f64 = 2.0 * 6.02e23;

/// Tolerance on `eps_alpha + eps_beta = 1`.
const EPS_SUM_TOL: f64 = 1e-12;

/// Slack allowed on the simplex constraints of a [`ConfigPoint`].
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Constants and timescales of one separation problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    n_total: f64,
    t_bath: f64,
    eps_alpha: f64,
    eps_beta: f64,
    tau_alpha: f64,
    tau_beta: f64,
    tau_h: f64,
    k_b: f64,
}

impl SystemParams {
    /// Builds a parameter set with the SI Boltzmann constant.
    ///
    /// `n_total` is the total molecule count, `t_bath` the bath temperature
    /// in kelvin, `eps_*` the mixture fractions and `tau_*` the particle
    /// transport and heat exchange timescales in seconds.
    pub fn new(
        n_total: f64,
        t_bath: f64,
        eps_alpha: f64,
        eps_beta: f64,
        tau_alpha: f64,
        tau_beta: f64,
        tau_h: f64,
    ) -> Result<Self> {
        let p = SystemParams {
            n_total,
            t_bath,
            eps_alpha,
            eps_beta,
            tau_alpha,
            tau_beta,
            tau_h,
            k_b: BOLTZMANN,
        };
        p.validate()?;
        Ok(p)
    }

    /// The parameter set used throughout the reference results:
    /// `tau_alpha = tau_beta = 1 s`, `tau_h = 0.1 s`, equal mixture of two
    /// moles at 298.15 K.
    pub fn reference() -> Self {
        SystemParams {
            n_total: REFERENCE_N_TOTAL,
            t_bath: 298.15,
            eps_alpha: 0.5,
            eps_beta: 0.5,
            tau_alpha: 1.0,
            tau_beta: 1.0,
            tau_h: 0.1,
            k_b: BOLTZMANN,
        }
    }

    /// Replaces the Boltzmann constant, e.g. `k_b = 1` for a dimensionless
    /// unit system.
    pub fn with_boltzmann(mut self, k_b: f64) -> Result<Self> {
        self.k_b = k_b;
        self.validate()?;
        Ok(self)
    }

    pub fn with_timescales(mut self, tau_alpha: f64, tau_beta: f64, tau_h: f64) -> Result<Self> {
        self.tau_alpha = tau_alpha;
        self.tau_beta = tau_beta;
        self.tau_h = tau_h;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("n_total", self.n_total),
            ("t_bath", self.t_bath),
            ("tau_alpha", self.tau_alpha),
            ("tau_beta", self.tau_beta),
            ("tau_h", self.tau_h),
            ("k_b", self.k_b),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        for (name, v) in [("eps_alpha", self.eps_alpha), ("eps_beta", self.eps_beta)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::domain(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if (self.eps_alpha + self.eps_beta - 1.0).abs() > EPS_SUM_TOL {
            return Err(Error::domain(format!(
                "eps_alpha + eps_beta must equal 1, got {} + {}",
                self.eps_alpha, self.eps_beta
            )));
        }
        Ok(())
    }

    pub fn n_total(&self) -> f64 {
        self.n_total
    }
    pub fn t_bath(&self) -> f64 {
        self.t_bath
    }
    pub fn eps_alpha(&self) -> f64 {
        self.eps_alpha
    }
    pub fn eps_beta(&self) -> f64 {
        self.eps_beta
    }
    pub fn tau_alpha(&self) -> f64 {
        self.tau_alpha
    }
    pub fn tau_beta(&self) -> f64 {
        self.tau_beta
    }
    pub fn tau_h(&self) -> f64 {
        self.tau_h
    }
    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    /// Number of type-alpha molecules.
    pub fn n_alpha(&self) -> f64 {
        self.eps_alpha * self.n_total
    }

    /// Number of type-beta molecules.
    pub fn n_beta(&self) -> f64 {
        self.eps_beta * self.n_total
    }

    /// Heat capacity of the monatomic ideal gas, `3/2 N_t k_B` (J/K).
    pub fn heat_capacity(&self) -> f64 {
        1.5 * self.n_total * self.k_b
    }

    /// `N_t k_B T_0` (J), the overall scale of every energy in the model.
    pub fn energy_scale(&self) -> f64 {
        self.n_total * self.k_b * self.t_bath
    }

    /// True when `tau_alpha = tau_beta` and `eps_alpha = eps_beta = 1/2`
    /// (relative tolerance 1e-12).
    pub fn is_symmetric(&self) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
        close(self.tau_alpha, self.tau_beta) && (self.eps_alpha - 0.5).abs() <= 1e-12
    }

    /// Target of complete separation with minimal reversible work,
    /// `(eps_alpha, eps_beta)`.
    pub fn target(&self) -> ConfigPoint {
        ConfigPoint {
            x_l: self.eps_alpha,
            x_r: self.eps_beta,
        }
    }

    /// The same problem with the roles of the two species (and membranes)
    /// exchanged.
    pub fn mirrored(&self) -> Self {
        SystemParams {
            eps_alpha: self.eps_beta,
            eps_beta: self.eps_alpha,
            tau_alpha: self.tau_beta,
            tau_beta: self.tau_alpha,
            ..*self
        }
    }
}

/// A point `(x_l, x_r)` of the configuration triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfigPoint {
    pub x_l: f64,
    pub x_r: f64,
}

impl ConfigPoint {
    pub const ORIGIN: ConfigPoint = ConfigPoint { x_l: 0.0, x_r: 0.0 };

    /// Validated constructor: `x_l, x_r >= 0` and `x_l + x_r <= 1`.
    pub fn new(x_l: f64, x_r: f64) -> Result<Self> {
        let p = ConfigPoint { x_l, x_r };
        if !p.is_valid() {
            return Err(Error::domain(format!(
                "({x_l}, {x_r}) is outside the configuration triangle"
            )));
        }
        Ok(p)
    }

    pub fn is_valid(&self) -> bool {
        self.x_l.is_finite()
            && self.x_r.is_finite()
            && self.x_l >= -SIMPLEX_TOL
            && self.x_r >= -SIMPLEX_TOL
            && self.x_l + self.x_r <= 1.0 + SIMPLEX_TOL
    }

    /// Middle-compartment volume fraction `1 - x_l - x_r`.
    pub fn x_m(&self) -> f64 {
        1.0 - self.x_l - self.x_r
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.x_l, self.x_r]
    }

    pub fn from_array(a: [f64; 2]) -> Self {
        ConfigPoint { x_l: a[0], x_r: a[1] }
    }

    pub fn distance(&self, other: &ConfigPoint) -> f64 {
        (self.x_l - other.x_l).hypot(self.x_r - other.x_r)
    }

    /// Reflection `x_l <-> x_r`.
    pub fn mirrored(&self) -> Self {
        ConfigPoint {
            x_l: self.x_r,
            x_r: self.x_l,
        }
    }
}

/// Instantaneous macroscopic state of the gas.
///
/// Only the purified compartments are stored; the middle compartment holds
/// the remainder (`N_alpha - n_alpha_l`, `N_beta - n_beta_r`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasState {
    pub n_alpha_l: f64,
    pub n_beta_r: f64,
    pub temperature: f64,
    pub config: ConfigPoint,
}

impl GasState {
    pub fn n_alpha_m(&self, params: &SystemParams) -> f64 {
        params.n_alpha() - self.n_alpha_l
    }

    pub fn n_beta_m(&self, params: &SystemParams) -> f64 {
        params.n_beta() - self.n_beta_r
    }
}

/// Equilibrium (equal partial pressure, `T = T_0`) partition of the
/// molecules for the given membrane positions.
pub fn equilibrium_partition(params: &SystemParams, pt: ConfigPoint) -> Result<GasState> {
    if !pt.is_valid() {
        return Err(Error::domain(format!(
            "({}, {}) is outside the configuration triangle",
            pt.x_l, pt.x_r
        )));
    }
    // V_L / (V_L + V_M) = x_l / (1 - x_r); an empty compartment holds nothing.
    let frac = |x: f64, other: f64| {
        if x <= 0.0 {
            0.0
        } else {
            (x / (1.0 - other)).min(1.0)
        }
    };
    Ok(GasState {
        n_alpha_l: params.n_alpha() * frac(pt.x_l, pt.x_r),
        n_beta_r: params.n_beta() * frac(pt.x_r, pt.x_l),
        temperature: params.t_bath,
        config: pt,
    })
}

/// Work of a quasi-static isothermal separation ending at `endpoint`
/// (which must lie on `x_l + x_r = 1`):
/// `-k_B T_0 (N_alpha ln x_l + N_beta ln x_r)`.
pub fn quasi_static_work(params: &SystemParams, endpoint: ConfigPoint) -> Result<f64> {
    if (endpoint.x_l + endpoint.x_r - 1.0).abs() > SIMPLEX_TOL {
        return Err(Error::domain(format!(
            "quasi-static work needs a complete-separation endpoint, got x_l + x_r = {}",
            endpoint.x_l + endpoint.x_r
        )));
    }
    if !(endpoint.x_l > 0.0 && endpoint.x_l < 1.0) {
        return Err(Error::domain(format!(
            "quasi-static work diverges at x_l = {}",
            endpoint.x_l
        )));
    }
    let kt = params.k_b * params.t_bath;
    Ok(-kt * (params.n_alpha() * endpoint.x_l.ln() + params.n_beta() * endpoint.x_r.ln()))
}

/// Minimum over complete-separation endpoints of [`quasi_static_work`],
/// `-N_t k_B T_0 (eps_a ln eps_a + eps_b ln eps_b)`.
pub fn minimum_quasi_static_work(params: &SystemParams) -> f64 {
    let (a, b) = (params.eps_alpha, params.eps_beta);
    -params.energy_scale() * (a * a.ln() + b * b.ln())
}

/// Reversible work rate `k_B T_0 (v_l N_beta/(1-x_l) + v_r N_alpha/(1-x_r))`
/// for membrane velocities `vel` (1/s).
pub fn reversible_work_rate(params: &SystemParams, pt: ConfigPoint, vel: [f64; 2]) -> f64 {
    let kt = params.k_b * params.t_bath;
    kt * (vel[0] * params.n_beta() / (1.0 - pt.x_l) + vel[1] * params.n_alpha() / (1.0 - pt.x_r))
}

/// Reversible work from the mixed state `(0, 0)` to `endpoint`; the
/// reversible work rate is an exact differential so this only depends on
/// the endpoint: `-k_B T_0 (N_beta ln(1-x_l) + N_alpha ln(1-x_r))`.
pub fn reversible_work(params: &SystemParams, endpoint: ConfigPoint) -> Result<f64> {
    if !endpoint.is_valid() {
        return Err(Error::domain(format!(
            "({}, {}) is outside the configuration triangle",
            endpoint.x_l, endpoint.x_r
        )));
    }
    if endpoint.x_l >= 1.0 || endpoint.x_r >= 1.0 {
        return Err(Error::domain("reversible work diverges at x_l = 1 or x_r = 1"));
    }
    let kt = params.k_b * params.t_bath;
    Ok(-kt
        * (params.n_beta() * (-endpoint.x_l).ln_1p() + params.n_alpha() * (-endpoint.x_r).ln_1p()))
}
