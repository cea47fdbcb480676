//! Finite-time dynamics of the gas under a prescribed membrane protocol:
//! particle exchange through the membranes, heat exchange with the bath,
//! and the mechanical work done on the gas.
//!
//! The state is integrated in reduced form: fractions `N_alpha_L / N_alpha`
//! and `N_beta_R / N_beta`, temperature `T / T_0`, and work and heat in
//! units of `N_t k_B T_0`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{path_length, PathSamples};
use crate::interp::HermiteCurve;
use crate::model::{equilibrium_partition, reversible_work, ConfigPoint, GasState, SystemParams};
use crate::ode::{Dopri5, StepControl, StepStatus};
use crate::roots::bracketed_root;

/// Integration settings for [`evolve_with`].
#[derive(Debug, Clone, Copy)]
pub struct SimulationOptions {
    pub rtol: f64,
    /// Absolute tolerance on the reduced state components.
    pub atol: f64,
    /// Integration starts at `t = start_offset * tau_op`.
    pub start_offset: f64,
    /// Integration stops where the middle compartment shrinks to this volume.
    pub min_middle_volume: f64,
    /// Number of output samples, uniform in `s` (at least 2).
    pub output_points: usize,
    /// Initial state; the equilibrium partition at the start point if `None`.
    pub initial_state: Option<GasState>,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        SimulationOptions {
            rtol: 1e-9,
            atol: 1e-12,
            start_offset: 1e-8,
            min_middle_volume: 1e-8,
            output_points: 1001,
            initial_state: None,
        }
    }
}

/// One output sample of a simulated run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: GasState,
    /// Work done on the gas since `t = 0`, J.
    pub work: f64,
    /// Heat released to the bath since `t = 0`, J.
    pub heat: f64,
}

/// Result of [`evolve`].
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub total_work: f64,
    /// `total_work` minus the reversible work to `endpoint`.
    pub excess_work: f64,
    /// Configuration at which integration stopped.
    pub endpoint: ConfigPoint,
    /// Rescaled time at which integration stopped.
    pub s_end: f64,
    pub tau_op: f64,
    /// `C_V (T_end - T_0) + heat`; equals `total_work` up to integration error.
    pub energy_balance: f64,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().unwrap()
    }
}

/// Tolerance on the protocol start and end positions.
const ENDPOINT_TOL: f64 = 1e-6;

/// Simulates a separation protocol from the mixed state in operation time
/// `tau_op`. The protocol must start at the origin and end within
/// `1e-6` of the complete-separation line.
pub fn evolve(params: &SystemParams, protocol: &PathSamples, tau_op: f64) -> Result<Trajectory> {
    let start = protocol.start();
    if start.x_l.abs() > ENDPOINT_TOL || start.x_r.abs() > ENDPOINT_TOL {
        return Err(Error::domain(format!(
            "protocol must start at (0, 0), got ({}, {})",
            start.x_l, start.x_r
        )));
    }
    if protocol.end().x_m() > ENDPOINT_TOL {
        return Err(Error::domain(format!(
            "protocol must end on the complete-separation line, middle volume left {}",
            protocol.end().x_m()
        )));
    }
    evolve_with(params, protocol, tau_op, &SimulationOptions::default())
}

/// Reduced state: `[n_alpha_l / N_alpha, n_beta_r / N_beta, T / T_0, W, Q]`,
/// with `W` and `Q` in units of `N_t k_B T_0`.
type Reduced = [f64; 5];

fn rates(params: &SystemParams, x: [f64; 2], dx: [f64; 2], y: &Reduced) -> Option<Reduced> {
    let (x_l, x_r) = (x[0], x[1]);
    let x_m = 1.0 - x_l - x_r;
    if !(x_l > 0.0 && x_r > 0.0 && x_m > 0.0) {
        return None;
    }
    let (ea, eb) = (params.eps_alpha(), params.eps_beta());
    let (fa, fb, theta) = (y[0], y[1], y[2]);
    let dfa = ((1.0 - fa) / x_m - fa / x_l) / params.tau_alpha();
    let dfb = ((1.0 - fb) / x_m - fb / x_r) / params.tau_beta();
    // -p dV summed over the compartments, via the ideal-gas law
    let middle = ea * (1.0 - fa) + eb * (1.0 - fb);
    let dw = -theta * (ea * fa * dx[0] / x_l + eb * fb * dx[1] / x_r - middle * (dx[0] + dx[1]) / x_m);
    let dq = 1.5 * (theta - 1.0) / params.tau_h();
    let dtheta = (dw - dq) / 1.5;
    Some([dfa, dfb, dtheta, dw, dq])
}

/// First `s` at which the middle volume reaches `x_min`, or 1.
fn stop_time(curve: &HermiteCurve, protocol: &PathSamples, x_min: f64) -> Result<f64> {
    let pts = protocol.points();
    let s = protocol.s();
    let Some(k) = pts.iter().position(|p| p.x_m() <= x_min) else {
        return Ok(1.0);
    };
    if k == 0 {
        return Err(Error::domain("protocol starts without a middle compartment"));
    }
    let x_m = |v: f64| {
        let p = curve.eval(v).x;
        1.0 - p[0] - p[1] - x_min
    };
    if x_m(s[k]) >= 0.0 {
        return Ok(s[k]);
    }
    bracketed_root(x_m, s[k - 1], s[k], 1e-15, 200)
}

/// General integrator behind [`evolve`]: any protocol inside the triangle,
/// optional initial state, adjustable tolerances.
pub fn evolve_with(
    params: &SystemParams,
    protocol: &PathSamples,
    tau_op: f64,
    opts: &SimulationOptions,
) -> Result<Trajectory> {
    if !(tau_op > 0.0 && tau_op.is_finite()) {
        return Err(Error::domain(format!("operation time must be > 0, got {tau_op}")));
    }
    if protocol.s()[0] != 0.0 || protocol.len() < 2 {
        return Err(Error::domain("protocol must cover s from 0 to 1"));
    }
    if opts.output_points < 2 {
        return Err(Error::domain("need at least two output points"));
    }
    let curve = HermiteCurve::from_path(protocol)?;
    let s_end = stop_time(&curve, protocol, opts.min_middle_volume)?;
    let t0 = opts.start_offset * tau_op;
    let t_end = s_end * tau_op;
    if !(t_end > t0) {
        return Err(Error::domain("protocol stops before the integration start"));
    }

    let position = |t: f64| -> Result<(ConfigPoint, [f64; 2])> {
        let c = curve.eval(t / tau_op);
        let pt = ConfigPoint { x_l: c.x[0], x_r: c.x[1] };
        if !pt.is_valid() {
            return Err(Error::domain(format!(
                "protocol leaves the configuration triangle at s = {}: ({}, {})",
                t / tau_op,
                pt.x_l,
                pt.x_r
            )));
        }
        Ok((pt, [c.dx[0] / tau_op, c.dx[1] / tau_op]))
    };

    let (p0, _) = position(t0)?;
    let init = match opts.initial_state {
        Some(st) => st,
        None => equilibrium_partition(params, p0)?,
    };
    let scale = params.energy_scale();
    // Before the offset start the gas is at equilibrium, so the work done so
    // far is the reversible work to the start point.
    let w0 = if opts.initial_state.is_some() { 0.0 } else { reversible_work(params, p0)? / scale };
    let y0: Reduced = [
        init.n_alpha_l / params.n_alpha(),
        init.n_beta_r / params.n_beta(),
        init.temperature / params.t_bath(),
        w0,
        0.0,
    ];

    let mut rhs = |t: f64, y: &Reduced| -> Option<Reduced> {
        let c = curve.eval(t / tau_op);
        rates(params, c.x, [c.dx[0] / tau_op, c.dx[1] / tau_op], y)
    };
    let mut ctl = StepControl::<5>::new(opts.rtol, opts.atol);
    let h_cap = params.tau_alpha().min(params.tau_beta()).min(params.tau_h()) / 10.0;
    ctl.h_max = h_cap;
    ctl.h_min = 1e-14 * tau_op;
    let mut st = Dopri5::new(&mut rhs, t0, y0, ctl)?;

    // Output grid: uniform in s, first sample at the offset start.
    let n = opts.output_points;
    let mut grid: Vec<f64> = (0..n)
        .map(|i| (i as f64 / (n - 1) as f64 * tau_op).clamp(t0, t_end))
        .collect();
    grid.dedup();
    if *grid.last().unwrap() < t_end {
        grid.push(t_end);
    }

    let to_sample = |t: f64, y: &Reduced| -> Result<TrajectorySample> {
        let (pt, _) = position(t)?;
        Ok(TrajectorySample {
            t,
            state: GasState {
                n_alpha_l: y[0] * params.n_alpha(),
                n_beta_r: y[1] * params.n_beta(),
                temperature: y[2] * params.t_bath(),
                config: pt,
            },
            work: y[3] * scale,
            heat: y[4] * scale,
        })
    };

    let mut samples = Vec::with_capacity(grid.len());
    samples.push(to_sample(t0, &y0)?);
    let mut next = 1;
    while next < grid.len() {
        match st.step(&mut rhs, t_end) {
            StepStatus::Accepted => {}
            StepStatus::Underflow { h } => {
                let (pt, _) = position(st.t())?;
                return Err(Error::Numerical(format!(
                    "step size {h:.3e} s below minimum at t = {:.6e} s (s = {:.6e}, x = ({:.6e}, {:.6e}), state {:?})",
                    st.t(),
                    st.t() / tau_op,
                    pt.x_l,
                    pt.x_r,
                    st.y()
                )));
            }
        }
        let dense = *st.dense().unwrap();
        while next < grid.len() && grid[next] <= st.t() {
            let y = if grid[next] == st.t() { *st.y() } else { dense.eval(grid[next]) };
            samples.push(to_sample(grid[next], &y)?);
            next += 1;
        }
    }

    for smp in &samples {
        let na = smp.state.n_alpha_l / params.n_alpha();
        let nb = smp.state.n_beta_r / params.n_beta();
        if !((-1e-9..=1.0 + 1e-9).contains(&na) && (-1e-9..=1.0 + 1e-9).contains(&nb)) {
            return Err(Error::Numerical(format!(
                "particle fractions left [0, 1] at t = {}: ({na}, {nb})",
                smp.t
            )));
        }
    }

    let y_end = *st.y();
    let (endpoint, _) = position(t_end)?;
    let total_work = y_end[3] * scale;
    let excess_work = total_work - reversible_work(params, endpoint)?;
    let energy_balance = scale * (1.5 * (y_end[2] - 1.0) + y_end[4]) + w0 * scale;
    Ok(Trajectory {
        samples,
        total_work,
        excess_work,
        endpoint,
        s_end,
        tau_op,
        energy_balance,
    })
}

/// One row of [`excess_work_sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub tau: f64,
    pub excess_work: f64,
    /// Leading-order prediction `L^2 / tau`.
    pub l_squared_over_tau: f64,
}

/// Runs [`evolve`] for every operation time (in parallel) and pairs the
/// excess work with `L^2 / tau`, `L` being the length of the protocol path.
pub fn excess_work_sweep(params: &SystemParams, protocol: &PathSamples, taus: &[f64]) -> Result<Vec<SweepRow>> {
    if let Some(bad) = taus.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(Error::domain(format!("operation times must be > 0, got {bad}")));
    }
    let len = path_length(params, protocol)?;
    taus.par_iter()
        .map(|&tau| {
            let tr = evolve(params, protocol, tau)?;
            Ok(SweepRow { tau, excess_work: tr.excess_work, l_squared_over_tau: len * len / tau })
        })
        .collect()
}

/// Leading-order deviations from the equilibrium partition and from the
/// bath temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviations {
    pub n_alpha_l: f64,
    pub n_beta_r: f64,
    pub temperature: f64,
}

/// First-order (in `1/tau`) deviations of the state at rescaled time `s`
/// when the protocol runs in time `tau_op`.
pub fn first_order_deviations(
    params: &SystemParams,
    protocol: &PathSamples,
    tau_op: f64,
    s: f64,
) -> Result<Deviations> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain(format!("s must lie strictly inside (0, 1), got {s}")));
    }
    if !(tau_op > 0.0 && tau_op.is_finite()) {
        return Err(Error::domain(format!("operation time must be > 0, got {tau_op}")));
    }
    let c = HermiteCurve::from_path(protocol)?.eval(s);
    let (x_l, x_r) = (c.x[0], c.x[1]);
    let x_m = 1.0 - x_l - x_r;
    if !(x_l > 0.0 && x_r > 0.0 && x_m > 0.0) {
        return Err(Error::domain(format!("compartment volume vanishes at s = {s}")));
    }
    let (v_l, v_r) = (c.dx[0] / tau_op, c.dx[1] / tau_op);
    let (u, v) = (1.0 - x_l, 1.0 - x_r);
    let rate_l = v_l / v + x_l * v_r / (v * v);
    let rate_r = v_r / u + x_r * v_l / (u * u);
    Ok(Deviations {
        n_alpha_l: -params.n_alpha() * params.tau_alpha() * (x_m * x_l / v) * rate_l,
        n_beta_r: -params.n_beta() * params.tau_beta() * (x_m * x_r / u) * rate_r,
        temperature: 2.0 * params.t_bath() * params.tau_h() / (3.0 * params.n_total())
            * (v_l * params.n_beta() / u + v_r * params.n_alpha() / v),
    })
}
