//! Self-check suite run by the `verify` subcommand: internal consistency of
//! the metric, its derivatives, the geodesics and the simulator for one
//! parameter set.

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::analytic::{symmetric_length, symmetric_protocol_samples};
use crate::error::Result;
use crate::geodesic::{find_all_geodesics, to_protocol, GeodesicOptions, PROTOCOL_SAMPLES};
use crate::geometry::{
    christoffel_at, excess_work_rate, excess_work_rate_direct, metric_at, path_length, MetricTensor,
};
use crate::model::{quasi_static_work, reversible_work, ConfigPoint, SystemParams};
use crate::simulate::evolve;

/// Outcome of one check: `value` is compared against `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check { name, value, tolerance, passed: value <= tolerance }
    }
}

/// Uniform random point with every compartment volume at least `margin`.
pub fn random_interior(rng: &mut StdRng, margin: f64) -> ConfigPoint {
    loop {
        let x_l = rng.random_range(margin..1.0 - 2.0 * margin);
        let x_r = rng.random_range(margin..1.0 - 2.0 * margin);
        if 1.0 - x_l - x_r >= margin {
            return ConfigPoint { x_l, x_r };
        }
    }
}

fn fd_metric_derivative(params: &SystemParams, pt: ConfigPoint, l: usize, h: f64) -> Result<MetricTensor> {
    let mut lo = pt.as_array();
    let mut hi = pt.as_array();
    lo[l] -= h;
    hi[l] += h;
    let a = metric_at(params, ConfigPoint::from_array(lo))?;
    let b = metric_at(params, ConfigPoint::from_array(hi))?;
    Ok(MetricTensor {
        g_ll: (b.g_ll - a.g_ll) / (2.0 * h),
        g_lr: (b.g_lr - a.g_lr) / (2.0 * h),
        g_rr: (b.g_rr - a.g_rr) / (2.0 * h),
    })
}

/// Largest relative deviation between the Christoffel symbols of the first
/// kind and their central-difference counterparts over `n` random points.
pub fn christoffel_fd_error(params: &SystemParams, n: usize, seed: u64) -> Result<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let pt = random_interior(&mut rng, 0.02);
        let c = christoffel_at(params, pt)?;
        let d = [fd_metric_derivative(params, pt, 0, 1e-6)?, fd_metric_derivative(params, pt, 1, 1e-6)?];
        let mut scale: f64 = 0.0;
        let mut err: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    let fd = 0.5 * (d[j].component(l, i) + d[i].component(l, j) - d[l].component(i, j));
                    scale = scale.max(fd.abs());
                    err = err.max((fd - c.lowered[i][j][l]).abs());
                }
            }
        }
        worst = worst.max(err / scale);
    }
    Ok(worst)
}

/// Largest relative difference between the metric form of the excess work
/// rate and its channel-by-channel form over `n` random states.
pub fn rate_form_error(params: &SystemParams, n: usize, seed: u64) -> Result<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let pt = random_interior(&mut rng, 0.01);
        let v = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let a = excess_work_rate(params, pt, v)?;
        let b = excess_work_rate_direct(params, pt, v)?;
        worst = worst.max((a - b).abs() / b.abs().max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

/// Runs the suite; geodesic and simulation checks use the parameter set's
/// own target.
pub fn run_suite(params: &SystemParams) -> Result<Vec<Check>> {
    let mut out = vec![
        Check::at_most("christoffel vs finite differences (rel)", christoffel_fd_error(params, 200, 1)?, 1e-5),
        Check::at_most("metric vs channel excess work rate (rel)", rate_form_error(params, 1000, 2)?, 1e-10),
    ];

    let target = params.target();
    let w_target = quasi_static_work(params, target)?;
    let w_rev = reversible_work(params, target)?;
    out.push(Check::at_most("reversible work equals quasi-static work (rel)", (w_rev - w_target).abs() / w_target, 1e-12));
    let mut worst_endpoint = f64::INFINITY;
    for i in 1..200 {
        let x = i as f64 / 200.0;
        let w = quasi_static_work(params, ConfigPoint { x_l: x, x_r: 1.0 - x })?;
        worst_endpoint = worst_endpoint.min(w - w_target);
    }
    out.push(Check { name: "quasi-static work minimal at mixture fractions", value: worst_endpoint, tolerance: 0.0, passed: worst_endpoint >= -1e-9 * w_target });

    let opts = GeodesicOptions::default();
    let sols = find_all_geodesics(params, target, 32, &opts)?;
    let drift = sols.iter().map(|g| g.max_speed_drift(params)).fold(0.0, f64::max);
    let gap = sols.iter().map(|g| g.terminal_gap).fold(0.0, f64::max);
    out.push(Check::at_most("geodesic unit-speed drift", drift, 1e-8));
    out.push(Check::at_most("geodesic terminal gap", gap, opts.gap_threshold));

    if params.is_symmetric() {
        let l_sym = symmetric_length(params, 0.5)?;
        let diag = symmetric_protocol_samples(params, 2001)?;
        let l_path = path_length(params, &diag)?;
        out.push(Check::at_most("diagonal length: closed form vs quadrature (rel)", (l_path - l_sym).abs() / l_sym, 1e-5));
        let unpaired = sols
            .iter()
            .filter(|g| {
                !sols.iter().any(|h| {
                    (h.initial_angle - (std::f64::consts::FRAC_PI_2 - g.initial_angle)).abs() < opts.cluster_tol
                        && (h.length - g.length).abs() < 1e-6 * g.length
                })
            })
            .count();
        out.push(Check::at_most("geodesic set closed under mirroring (unpaired)", unpaired as f64, 0.0));
    }

    // Slow operation: excess work bounded below by L^2 / tau.
    let shortest = to_protocol(&sols[0], PROTOCOL_SAMPLES)?;
    let len = path_length(params, &shortest)?;
    let tau = 100.0 * params.tau_alpha().max(params.tau_beta()).max(params.tau_h());
    let tr = evolve(params, &shortest, tau)?;
    let ratio = tr.excess_work * tau / (len * len);
    out.push(Check { name: "excess work / (L^2/tau) at tau = 100 max(tau_i)", value: ratio, tolerance: 0.95, passed: ratio >= 0.95 });
    out.push(Check::at_most(
        "energy balance work = C_V dT + heat (rel)",
        (tr.energy_balance - tr.total_work).abs() / tr.total_work.abs(),
        1e-8,
    ));
    Ok(out)
}
