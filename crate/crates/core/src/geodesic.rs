//! Geodesics of the excess-work metric: initial value integration in arc
//! length, shooting from the mixed state to a target point, multi-root
//! discovery and conversion to constant-speed protocols.
//!
//! The metric degenerates at the target `(eps_alpha, eps_beta)`, so the
//! Christoffel symbols diverge there and the adaptive step collapses as a
//! geodesic runs into it. Integration stops once the step falls below
//! `min_step`, leaving a small terminal gap.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{christoffel_raw, excess_work_rate_direct, geodesic_acceleration_offset, metric_at, metric_raw, path_length, PathSamples};
use crate::model::{ConfigPoint, SystemParams, SIMPLEX_TOL};
use crate::ode::{DenseStep, Dopri5, StepControl, StepStatus};
use crate::roots::bisect;

/// Tolerance on `g(v, v) = 1` for an initial direction.
const UNIT_SPEED_TOL: f64 = 1e-10;

/// Numerical settings for geodesic integration and shooting.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicOptions {
    pub rtol: f64,
    /// Absolute tolerance on the velocity components.
    pub atol: f64,
    /// Absolute tolerance on the position offsets from the target.
    pub position_atol: f64,
    /// Minimum arc-length step; integration halts below it.
    pub min_step: f64,
    /// Accepted Euclidean distance between the final point and the target.
    pub gap_threshold: f64,
    /// Bisection tolerance on the shooting angle (rad).
    pub angle_tol: f64,
    /// Solutions whose initial angles differ by less are merged (rad).
    pub cluster_tol: f64,
    pub max_bisections: usize,
    /// Integration limit as a multiple of the straight-segment length.
    pub r_max_factor: f64,
}

impl Default for GeodesicOptions {
    fn default() -> Self {
        GeodesicOptions {
            rtol: 1e-10,
            atol: 1e-12,
            position_atol: 1e-16,
            min_step: 1e-13,
            gap_threshold: 1e-6,
            angle_tol: 1e-12,
            cluster_tol: 1e-4,
            max_bisections: 200,
            r_max_factor: 1.5,
        }
    }
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Reached the requested arc length.
    MaxLength,
    /// Crossed the boundary of the configuration triangle; the last sample
    /// sits on the boundary.
    LeftRegion,
    /// The adaptive step fell below the minimum (degenerate metric ahead).
    StepUnderflow,
    /// Passed the target within the gap threshold; truncated at the
    /// closest approach.
    ClosestApproach,
}

/// One sample of a geodesic parameterized by arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSample {
    pub r: f64,
    pub point: ConfigPoint,
    /// `dx/dr`.
    pub velocity: [f64; 2],
}

/// An integrated geodesic.
#[derive(Debug, Clone)]
pub struct GeodesicSolution {
    pub samples: Vec<GeodesicSample>,
    /// Thermodynamic length `r_last`, (J s)^1/2.
    pub length: f64,
    /// Euclidean distance from the final sample to the target (0 without one).
    pub terminal_gap: f64,
    /// Metric length of the straight step from the final sample to the
    /// target: an estimate of the length not covered.
    pub length_gap_bound: f64,
    /// Unit (under G) initial tangent.
    pub initial_direction: [f64; 2],
    /// Euclidean angle of the initial tangent, rad.
    pub initial_angle: f64,
    pub termination: Termination,
    steps: Vec<DenseStep<4>>,
    anchor: Anchor,
}

/// Positions are integrated as offsets from the degenerate point, which
/// keeps them, and the acceleration built from them, accurate close to it.
#[derive(Debug, Clone, Copy)]
struct Anchor(ConfigPoint);

impl Anchor {
    fn point(&self, y: &[f64; 4]) -> ConfigPoint {
        ConfigPoint { x_l: self.0.x_l + y[0], x_r: self.0.x_r + y[1] }
    }

    fn sample(&self, r: f64, y: &[f64; 4]) -> GeodesicSample {
        GeodesicSample { r, point: self.point(y), velocity: [y[2], y[3]] }
    }
}

impl GeodesicSolution {
    pub fn end(&self) -> ConfigPoint {
        self.samples.last().unwrap().point
    }

    /// Position and `dx/dr` at arc length `r` from the continuous extension.
    pub fn state_at(&self, r: f64) -> (ConfigPoint, [f64; 2]) {
        let last = self.samples.last().unwrap();
        if r >= last.r || self.steps.is_empty() {
            return (last.point, last.velocity);
        }
        if r <= 0.0 {
            let first = self.samples[0];
            return (first.point, first.velocity);
        }
        let idx = self.steps.partition_point(|d| d.t1() < r).min(self.steps.len() - 1);
        let y = self.steps[idx].eval(r);
        (self.anchor.point(&y), [y[2], y[3]])
    }

    /// Largest `|g(v, v) - 1|` over the samples. The quadratic form is
    /// summed channel by channel, which stays accurate near the target
    /// where `G` is nearly singular and `|v|` large.
    pub fn max_speed_drift(&self, params: &SystemParams) -> f64 {
        self.samples
            .iter()
            .map(|s| match excess_work_rate_direct(params, s.point, s.velocity) {
                Ok(g) => (g - 1.0).abs(),
                Err(_) => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }

    /// Mirror image `x_l <-> x_r`.
    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        for s in &mut out.samples {
            s.point = s.point.mirrored();
            s.velocity = [s.velocity[1], s.velocity[0]];
        }
        out.initial_direction = [self.initial_direction[1], self.initial_direction[0]];
        out.initial_angle = FRAC_PI_2 - self.initial_angle;
        out.steps.clear();
        out
    }
}

/// Unit tangent under `G` at `pt` along Euclidean angle `theta`.
pub fn unit_direction(params: &SystemParams, pt: ConfigPoint, theta: f64) -> Result<[f64; 2]> {
    let g = metric_at(params, pt)?;
    let d = [theta.cos(), theta.sin()];
    let norm = g.quadratic(d).sqrt();
    if !(norm > 0.0) {
        return Err(Error::Singular { point: pt, ratio: g.conditioning() });
    }
    Ok([d[0] / norm, d[1] / norm])
}

/// Signed distance to the triangle boundary (negative outside).
fn region_margin(x_l: f64, x_r: f64) -> f64 {
    x_l.min(x_r).min(1.0 - x_l - x_r)
}

fn geodesic_rhs(params: &SystemParams) -> impl FnMut(f64, &[f64; 4]) -> Option<[f64; 4]> + '_ {
    move |_r, y| {
        let a = geodesic_acceleration_offset(params, [y[0], y[1]], [y[2], y[3]])?;
        Some([y[2], y[3], a[0], a[1]])
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let candidates = [(a, f(a)), (b, f(b)), (c, fc), (d, fd)];
    candidates.into_iter().fold((a, f64::INFINITY), |best, x| if x.1 < best.1 { x } else { best })
}

/// Integrates the geodesic equation `x'' = -Gamma(x', x')` in arc length from
/// `start` along the unit tangent `direction`.
///
/// Stops at `r_max`, on leaving the configuration triangle, when the step
/// underflows `opts.min_step`, or (with `stop_near`) at the closest approach
/// to that point once it is within `opts.gap_threshold`.
pub fn integrate_geodesic(
    params: &SystemParams,
    start: ConfigPoint,
    direction: [f64; 2],
    r_max: f64,
    stop_near: Option<ConfigPoint>,
    opts: &GeodesicOptions,
) -> Result<GeodesicSolution> {
    if !start.is_valid() {
        return Err(Error::domain("start point is outside the configuration triangle"));
    }
    let g0 = metric_at(params, start)?;
    if christoffel_raw(params, start.x_l, start.x_r).is_none() {
        return Err(Error::Singular { point: start, ratio: g0.conditioning() });
    }
    let speed = g0.quadratic(direction);
    if !((speed - 1.0).abs() <= UNIT_SPEED_TOL) {
        return Err(Error::domain(format!("initial direction is not unit speed: g(v, v) = {speed}")));
    }
    // Pointing out of the triangle from a boundary point.
    let outward = (start.x_l <= SIMPLEX_TOL && direction[0] < 0.0)
        || (start.x_r <= SIMPLEX_TOL && direction[1] < 0.0)
        || (start.x_m() <= SIMPLEX_TOL && direction[0] + direction[1] > 0.0);
    if outward {
        return Err(Error::Trajectory { r: 0.0, last: start });
    }

    let anchor = Anchor(params.target());
    let mut rhs = geodesic_rhs(params);
    let mut ctl = StepControl::<4>::new(opts.rtol, opts.atol);
    ctl.atol[0] = opts.position_atol;
    ctl.atol[1] = opts.position_atol;
    ctl.h_min = opts.min_step;
    ctl.h_max = (r_max / 50.0).max(opts.min_step);
    let y0 = [start.x_l - anchor.0.x_l, start.x_r - anchor.0.x_r, direction[0], direction[1]];
    let mut st = Dopri5::new(&mut rhs, 0.0, y0, ctl)?;

    let mut samples = vec![anchor.sample(0.0, &y0)];
    let mut steps: Vec<DenseStep<4>> = Vec::new();
    let dist = |y: &[f64; 4], t: ConfigPoint| anchor.point(y).distance(&t);
    let mut prev_dist = stop_near.map(|t| dist(&y0, t)).unwrap_or(f64::INFINITY);

    let termination = loop {
        if st.t() >= r_max {
            break Termination::MaxLength;
        }
        match st.step(&mut rhs, r_max) {
            StepStatus::Underflow { .. } => break Termination::StepUnderflow,
            StepStatus::Accepted => {}
        }
        let dense = *st.dense().unwrap();
        let y = *st.y();

        let x = anchor.point(&y);
        if region_margin(x.x_l, x.x_r) < -SIMPLEX_TOL {
            if steps.is_empty() && dense.t0 == 0.0 && region_margin(start.x_l, start.x_r) <= SIMPLEX_TOL {
                // Only fails if the very first step ran straight out.
                let mid = anchor.point(&dense.eval(0.5 * dense.h));
                if region_margin(mid.x_l, mid.x_r) < 0.0 {
                    return Err(Error::Trajectory { r: 0.0, last: start });
                }
            }
            // Locate the boundary crossing inside the last step.
            let (lo, _) = bisect(
                |r| {
                    let z = anchor.point(&dense.eval(r));
                    if region_margin(z.x_l, z.x_r) >= 0.0 {
                        1.0
                    } else {
                        -1.0
                    }
                },
                dense.t0,
                dense.t1(),
                1e-15 * dense.t1().max(1.0),
                200,
            )?;
            let z = dense.eval(lo);
            let mut truncated = dense;
            truncated.h = lo - dense.t0;
            if truncated.h > 0.0 {
                steps.push(dense);
            }
            samples.push(anchor.sample(lo, &z));
            break Termination::LeftRegion;
        }

        steps.push(dense);
        samples.push(anchor.sample(st.t(), &y));

        if let Some(target) = stop_near {
            let d = dist(&y, target);
            if d > prev_dist && prev_dist <= opts.gap_threshold {
                // Closest approach lies in one of the last two steps.
                let n = steps.len();
                let mut best = (f64::NAN, f64::INFINITY, 0usize);
                for k in n.saturating_sub(2)..n {
                    let ds = steps[k];
                    let (r, dm) = golden_min(|r| dist(&ds.eval(r), target), ds.t0, ds.t1(), 80);
                    if dm < best.1 {
                        best = (r, dm, k);
                    }
                }
                let (r_best, _, k) = best;
                let z = steps[k].eval(r_best);
                steps.truncate(k + 1);
                samples.retain(|s| s.r < r_best);
                samples.push(anchor.sample(r_best, &z));
                break Termination::ClosestApproach;
            }
            prev_dist = d;
        }
    };

    let last = *samples.last().unwrap();
    let (terminal_gap, length_gap_bound) = match stop_near {
        Some(t) => {
            let gap = last.point.distance(&t);
            let dx = [t.x_l - last.point.x_l, t.x_r - last.point.x_r];
            let g = metric_raw(params, last.point.x_l, last.point.x_r);
            (gap, g.quadratic(dx).max(0.0).sqrt())
        }
        None => (0.0, 0.0),
    };
    Ok(GeodesicSolution {
        length: last.r,
        terminal_gap,
        length_gap_bound,
        initial_direction: direction,
        initial_angle: direction[1].atan2(direction[0]),
        termination,
        samples,
        steps,
        anchor,
    })
}

/// Default integration limit for shots towards `target`: a multiple of the
/// length of the straight segment from the origin.
pub fn default_r_max(params: &SystemParams, target: ConfigPoint, opts: &GeodesicOptions) -> Result<f64> {
    let n = 2001;
    let s: Vec<f64> = (0..n).map(|i| if i == n - 1 { 1.0 } else { i as f64 / (n - 1) as f64 }).collect();
    let pts = s
        .iter()
        .map(|&v| ConfigPoint { x_l: v * target.x_l, x_r: v * target.x_r })
        .collect();
    let straight = path_length(params, &PathSamples::new(s, pts)?)?;
    Ok(opts.r_max_factor * straight)
}

fn check_target(target: ConfigPoint) -> Result<()> {
    if (target.x_l + target.x_r - 1.0).abs() > SIMPLEX_TOL || !(target.x_l > 0.0 && target.x_r > 0.0) {
        return Err(Error::domain(format!(
            "shooting target must lie inside the complete-separation line, got ({}, {})",
            target.x_l, target.x_r
        )));
    }
    Ok(())
}

/// Signed miss of the geodesic shot from the origin at angle `theta`.
///
/// The side of the origin-target ray the shot initially turns to gives the
/// sign `side`. A shot that crosses back over the ray inside the triangle
/// passes short of the target: miss `+side * d`, with `d` the distance from
/// the crossing to the target. A shot that leaves (or stops) without
/// crossing back overshoots: miss `-side * d_min`. Shots that stop within
/// the gap threshold score 0. Passing through the target changes the
/// sign, so geodesics to the target are sign changes of this function.
pub fn shooting_miss(
    params: &SystemParams,
    target: ConfigPoint,
    theta: f64,
    r_max: f64,
    opts: &GeodesicOptions,
) -> Result<f64> {
    let dir = unit_direction(params, ConfigPoint::ORIGIN, theta)?;
    let sol = integrate_geodesic(params, ConfigPoint::ORIGIN, dir, r_max, None, opts)?;
    let ray = |p: ConfigPoint| target.x_r * p.x_l - target.x_l * p.x_r;
    let side = (target.x_r * theta.cos() - target.x_l * theta.sin()).signum();
    let side = if side == 0.0 { 1.0 } else { side };

    // First crossing back over the ray.
    for (k, w) in sol.samples.windows(2).enumerate() {
        if ray(w[1].point) * side < 0.0 {
            let step = sol.steps.get(k).copied();
            let crossing = match step {
                Some(ds) => {
                    let (lo, hi) = bisect(
                        |r| {
                            let z = sol.anchor.point(&ds.eval(r));
                            target.x_r * z.x_l - target.x_l * z.x_r
                        },
                        w[0].r,
                        w[1].r,
                        1e-14 * w[1].r.max(1.0),
                        200,
                    )
                    .unwrap_or((w[1].r, w[1].r));
                    sol.anchor.point(&ds.eval(0.5 * (lo + hi)))
                }
                None => w[1].point,
            };
            if crossing.x_m() >= 0.0 {
                return Ok(side * crossing.distance(&target));
            }
            break;
        }
    }
    let d_min = sol
        .samples
        .iter()
        .map(|s| s.point.distance(&target))
        .fold(f64::INFINITY, f64::min);
    if sol.termination == Termination::StepUnderflow && sol.end().distance(&target) <= opts.gap_threshold {
        return Ok(0.0);
    }
    Ok(-side * d_min)
}

fn shoot_final(params: &SystemParams, target: ConfigPoint, theta: f64, r_max: f64, opts: &GeodesicOptions) -> Result<GeodesicSolution> {
    let dir = unit_direction(params, ConfigPoint::ORIGIN, theta)?;
    let mut sol = integrate_geodesic(params, ConfigPoint::ORIGIN, dir, r_max, Some(target), opts)?;
    sol.initial_angle = theta;
    Ok(sol)
}

/// Refines a sign-change bracket of [`shooting_miss`] and integrates the
/// resulting geodesic.
fn refine_bracket(
    params: &SystemParams,
    target: ConfigPoint,
    lo: f64,
    hi: f64,
    r_max: f64,
    opts: &GeodesicOptions,
) -> Result<GeodesicSolution> {
    let (a, b) = bisect(
        |th| shooting_miss(params, target, th, r_max, opts).unwrap_or(f64::NAN),
        lo,
        hi,
        opts.angle_tol,
        opts.max_bisections,
    )?;
    let mut best: Option<GeodesicSolution> = None;
    let mut candidates = vec![0.5 * (a + b)];
    if b > a {
        candidates.extend([a, b]);
    }
    for th in candidates {
        let sol = shoot_final(params, target, th, r_max, opts)?;
        if sol.terminal_gap <= opts.gap_threshold {
            return Ok(sol);
        }
        if best.as_ref().map_or(true, |s| sol.terminal_gap < s.terminal_gap) {
            best = Some(sol);
        }
    }
    let best = best.unwrap();
    Err(Error::Convergence {
        message: format!(
            "shot at {:.12} rad ends {:.3e} from the target",
            best.initial_angle, best.terminal_gap
        ),
        best_miss: best.terminal_gap,
    })
}

/// Shooting method for the geodesic from the origin to `target`, searching
/// outwards from `initial_angle_guess` for a sign change of the miss.
pub fn shoot_to_target(
    params: &SystemParams,
    target: ConfigPoint,
    initial_angle_guess: f64,
    opts: &GeodesicOptions,
) -> Result<GeodesicSolution> {
    check_target(target)?;
    if !(initial_angle_guess > 0.0 && initial_angle_guess < FRAC_PI_2) {
        return Err(Error::domain(format!(
            "initial angle must lie in (0, pi/2), got {initial_angle_guess}"
        )));
    }
    let r_max = default_r_max(params, target, opts)?;
    let miss = |th: f64| shooting_miss(params, target, th, r_max, opts);
    let m0 = miss(initial_angle_guess)?;
    if m0 == 0.0 {
        return refine_or_direct(params, target, initial_angle_guess, r_max, opts);
    }
    let mut best = m0.abs();
    let lower = 1e-6;
    let upper = FRAC_PI_2 - 1e-6;
    let mut delta = 2e-3;
    let (mut left, mut right) = (initial_angle_guess, initial_angle_guess);
    let (mut m_left, mut m_right) = (m0, m0);
    while left > lower || right < upper {
        if right < upper {
            let th = (initial_angle_guess + delta).min(upper);
            let m = miss(th)?;
            best = best.min(m.abs());
            if m.signum() != m_right.signum() {
                return refine_bracket(params, target, right, th, r_max, opts);
            }
            right = th;
            m_right = m;
        }
        if left > lower {
            let th = (initial_angle_guess - delta).max(lower);
            let m = miss(th)?;
            best = best.min(m.abs());
            if m.signum() != m_left.signum() {
                return refine_bracket(params, target, th, left, r_max, opts);
            }
            left = th;
            m_left = m;
        }
        delta *= 1.5;
    }
    Err(Error::Convergence {
        message: format!("no sign change of the miss around {initial_angle_guess} rad"),
        best_miss: best,
    })
}

fn refine_or_direct(params: &SystemParams, target: ConfigPoint, theta: f64, r_max: f64, opts: &GeodesicOptions) -> Result<GeodesicSolution> {
    let sol = shoot_final(params, target, theta, r_max, opts)?;
    if sol.terminal_gap <= opts.gap_threshold {
        Ok(sol)
    } else {
        Err(Error::Convergence {
            message: format!("shot at {theta} rad ends {:.3e} from the target", sol.terminal_gap),
            best_miss: sol.terminal_gap,
        })
    }
}

/// Scans `n_scan` initial angles over the open cone `(0, pi/2)`, refines
/// every sign change of the miss and returns the distinct geodesics that
/// reach `target`, shortest first.
pub fn find_all_geodesics(
    params: &SystemParams,
    target: ConfigPoint,
    n_scan: usize,
    opts: &GeodesicOptions,
) -> Result<Vec<GeodesicSolution>> {
    check_target(target)?;
    if n_scan < 8 {
        return Err(Error::domain(format!("n_scan must be at least 8, got {n_scan}")));
    }
    let r_max = default_r_max(params, target, opts)?;
    let angles: Vec<f64> = (1..=n_scan).map(|i| FRAC_PI_2 * i as f64 / (n_scan + 1) as f64).collect();
    let misses: Vec<f64> = angles
        .par_iter()
        .map(|&th| shooting_miss(params, target, th, r_max, opts))
        .collect::<Result<_>>()?;

    let mut jobs: Vec<(f64, f64)> = Vec::new();
    for (k, &m) in misses.iter().enumerate() {
        if m == 0.0 {
            jobs.push((angles[k], angles[k]));
        }
    }
    for k in 0..angles.len() - 1 {
        let (a, b) = (misses[k], misses[k + 1]);
        if a != 0.0 && b != 0.0 && a.signum() != b.signum() {
            jobs.push((angles[k], angles[k + 1]));
        }
    }

    let found: Vec<GeodesicSolution> = jobs
        .par_iter()
        .filter_map(|&(lo, hi)| {
            if lo == hi {
                refine_or_direct(params, target, lo, r_max, opts).ok()
            } else {
                refine_bracket(params, target, lo, hi, r_max, opts).ok()
            }
        })
        .collect();

    let mut distinct: Vec<GeodesicSolution> = Vec::new();
    for sol in found {
        match distinct
            .iter_mut()
            .find(|d| (d.initial_angle - sol.initial_angle).abs() < opts.cluster_tol)
        {
            Some(d) if sol.terminal_gap < d.terminal_gap => *d = sol,
            Some(_) => {}
            None => distinct.push(sol),
        }
    }
    if distinct.is_empty() {
        let best = misses.iter().map(|m| m.abs()).fold(f64::INFINITY, f64::min);
        return Err(Error::Convergence {
            message: format!("none of {n_scan} scanned angles led to a geodesic reaching the target"),
            best_miss: best,
        });
    }
    distinct.sort_by(|a, b| a.length.total_cmp(&b.length));
    // Mirror pairs have equal lengths up to integration error; order them by angle.
    for k in 1..distinct.len() {
        let (a, b) = (&distinct[k - 1], &distinct[k]);
        if (b.length - a.length) <= 1e-9 * b.length && b.initial_angle < a.initial_angle {
            distinct.swap(k - 1, k);
        }
    }
    Ok(distinct)
}

/// Default number of protocol samples.
pub const PROTOCOL_SAMPLES: usize = 1001;

/// Reparameterizes a geodesic by `s = r / L` on `n` uniform samples, giving
/// a constant thermodynamic speed protocol.
///
/// Only positions are kept. Near the target `dx/dr` grows without bound
/// while the path bends within a tiny arc length, so a Hermite interpolant
/// built from the exact end velocity would overshoot the last sample
/// interval; consumers interpolate the positions shape-preservingly, exactly
/// as they would after a round trip through a protocol file.
pub fn to_protocol(sol: &GeodesicSolution, n: usize) -> Result<PathSamples> {
    if n < 2 {
        return Err(Error::domain("need at least two protocol samples"));
    }
    let len = sol.length;
    let mut s = Vec::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        let si = if i == n - 1 { 1.0 } else { i as f64 / (n - 1) as f64 };
        let (mut p, _) = sol.state_at(si * len);
        // Dense output can stray by rounding past the boundary.
        p.x_l = p.x_l.max(0.0);
        p.x_r = p.x_r.max(0.0);
        let over = p.x_l + p.x_r - 1.0;
        if over > 0.0 {
            p.x_l -= 0.5 * over;
            p.x_r -= 0.5 * over;
        }
        s.push(si);
        pts.push(p);
    }
    PathSamples::new(s, pts)
}
