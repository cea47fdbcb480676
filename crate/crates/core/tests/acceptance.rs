//! End-to-end acceptance checks on the reference parameter set. Each
//! criterion prints one PASS/FAIL line; the test fails if any criterion does.

mod common;

use std::f64::consts::{LN_2, SQRT_2};
use std::time::{Duration, Instant};

use thermosep::analytic::{
    limit_min_excess_work, limit_protocol, symmetric_length, symmetric_protocol, symmetric_protocol_rate,
    symmetric_protocol_samples, Regime,
};
use thermosep::geodesic::{find_all_geodesics, to_protocol, GeodesicOptions, GeodesicSolution, PROTOCOL_SAMPLES};
use thermosep::geometry::{path_length, PathSamples};
use thermosep::model::{equilibrium_partition, quasi_static_work, BOLTZMANN};
use thermosep::simulate::{evolve, excess_work_sweep, first_order_deviations};
use thermosep::verify::{christoffel_fd_error, rate_form_error};
use thermosep::{ConfigPoint, SystemParams};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn report(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let ok = o.passed && elapsed <= limit;
    println!(
        "{} [{id}] {name}: {} ({:.2} s, limit {} s)",
        if ok { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn reference_geodesics() -> Vec<GeodesicSolution> {
    let p = SystemParams::reference();
    find_all_geodesics(&p, p.target(), 32, &GeodesicOptions::default()).unwrap()
}

fn symmetric_length_reproduction() -> Outcome {
    let p = SystemParams::reference();
    let closed = symmetric_length(&p, 0.5).unwrap();
    let diag = symmetric_protocol_samples(&p, 2001).unwrap();
    let quad = path_length(&p, &diag).unwrap();
    let ok = (closed - 59.68).abs() <= 0.01 && (quad - 59.68).abs() <= 0.01;
    outcome(ok, format!("closed form {closed:.5}, quadrature {quad:.5}, expected 59.68 +- 0.01"))
}

fn symmetry_breaking_geodesics() -> Outcome {
    let sols = reference_geodesics();
    if sols.len() != 3 {
        return outcome(false, format!("found {} geodesics, expected 3", sols.len()));
    }
    let (a, b, c) = (&sols[0], &sols[1], &sols[2]);
    // Mirror check: x_l of one against x_r of the other at equal arc length.
    let mut mirror: f64 = 0.0;
    for i in 0..=1000 {
        let s = i as f64 / 1000.0;
        let (pa, _) = a.state_at(s * a.length);
        let (pb, _) = b.state_at(s * b.length);
        mirror = mirror.max((pa.x_l - pb.x_r).abs()).max((pa.x_r - pb.x_l).abs());
    }
    let diag: f64 = (0..=1000)
        .map(|i| {
            let (pt, _) = c.state_at(i as f64 / 1000.0 * c.length);
            (pt.x_l - pt.x_r).abs()
        })
        .fold(0.0, f64::max);
    let ok = (a.length - 59.64).abs() <= 0.02
        && (b.length - 59.64).abs() <= 0.02
        && mirror <= 1e-6
        && diag <= 1e-6
        && (c.length - 59.68).abs() <= 0.01;
    outcome(
        ok,
        format!(
            "lengths {:.5}, {:.5}, {:.5}; mirror deviation {mirror:.1e}; diagonal deviation {diag:.1e}",
            a.length, b.length, c.length
        ),
    )
}

fn quasi_static_work_value() -> Outcome {
    let p = SystemParams::reference();
    let w = quasi_static_work(&p, p.target()).unwrap();
    // Independent: N_t k_B T_0 ln 2 for an equimolar mixture.
    let oracle = p.n_total() * BOLTZMANN * p.t_bath() * LN_2;
    let ok = (w / 3.44e3 - 1.0).abs() <= 0.005 && (w - oracle).abs() <= 1e-12 * oracle;
    outcome(ok, format!("W0 = {w:.2} J, expected 3.44e3 J +- 0.5%"))
}

fn unit_energy(tau_p: f64, tau_h: f64) -> SystemParams {
    SystemParams::new(1.0 / (BOLTZMANN * 300.0), 300.0, 0.5, 0.5, tau_p, tau_p, tau_h).unwrap()
}

fn table_limits() -> Outcome {
    let p = unit_energy(1.0, 1.0);
    let particle = limit_min_excess_work(&p, 1.0, Regime::Particle).unwrap();
    let heat = limit_min_excess_work(&p, 1.0, Regime::Heat).unwrap();
    let e_p = (particle - (12.0 - 8.0 * SQRT_2)).abs();
    let e_h = (heat - 2.0 * LN_2 * LN_2 / 3.0).abs();
    let mut e_proto: f64 = 0.0;
    for (q, regime) in [(unit_energy(1.0, 1e-9), Regime::Particle), (unit_energy(1.0, 1e9), Regime::Heat)] {
        for i in 1..100 {
            let s = i as f64 / 100.0;
            e_proto = e_proto.max((symmetric_protocol(&q, s).unwrap() - limit_protocol(regime, s)).abs());
        }
    }
    let ok = e_p <= 1e-12 && e_h <= 1e-12 && e_proto <= 1e-4;
    outcome(
        ok,
        format!("prefactors {particle:.5} (err {e_p:.1e}), {heat:.5} (err {e_h:.1e}); protocol deviation {e_proto:.1e}"),
    )
}

fn bound_validation() -> Outcome {
    let p = SystemParams::reference();
    let taus = [30.0, 100.0, 300.0];
    let tols = [0.10, 0.05, 0.02];
    let sym = symmetric_protocol_samples(&p, PROTOCOL_SAMPLES).unwrap();
    let geo = to_protocol(&reference_geodesics()[0], PROTOCOL_SAMPLES).unwrap();
    let rs = excess_work_sweep(&p, &sym, &taus).unwrap();
    let rg = excess_work_sweep(&p, &geo, &taus).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for k in 0..taus.len() {
        let qs = rs[k].excess_work / rs[k].l_squared_over_tau;
        let qg = rg[k].excess_work / rg[k].l_squared_over_tau;
        ok &= (qs - 1.0).abs() <= tols[k] && (qg - 1.0).abs() <= tols[k] && rg[k].excess_work < rs[k].excess_work;
        parts.push(format!(
            "tau {}: W_ex geo {:.4} < sym {:.4} J, ratios {qg:.5}/{qs:.5}",
            taus[k], rg[k].excess_work, rs[k].excess_work
        ));
    }
    outcome(ok, parts.join("; "))
}

/// Diagonal path run with the rescaled-time warp `sigma(s) = s + a s (1 - s)`.
fn warped_symmetric(p: &SystemParams, a: f64) -> PathSamples {
    let n = PROTOCOL_SAMPLES;
    let mut s = Vec::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    let mut der = Vec::with_capacity(n);
    for i in 0..n {
        let si = if i == n - 1 { 1.0 } else { i as f64 / (n - 1) as f64 };
        let sigma = (si + a * si * (1.0 - si)).clamp(0.0, 1.0);
        let x = symmetric_protocol(p, sigma).unwrap();
        let v = symmetric_protocol_rate(p, x).unwrap() * (1.0 + a * (1.0 - 2.0 * si));
        s.push(si);
        pts.push(ConfigPoint { x_l: x, x_r: x });
        der.push([v, v]);
    }
    PathSamples::with_derivatives(s, pts, der).unwrap()
}

fn property_suites() -> Outcome {
    let p = SystemParams::reference();
    let fd = christoffel_fd_error(&p, 200, 11).unwrap();
    let rate = rate_form_error(&p, 1000, 12).unwrap();
    let sols = reference_geodesics();
    let drift = sols.iter().map(|g| g.max_speed_drift(&p)).fold(0.0, f64::max);
    let orders: Vec<f64> = sols.iter().flat_map(|g| common::residual_orders(&p, g, 1.6, 3).1).collect();
    let order_ok = orders.iter().all(|o| (o - 2.0).abs() <= 0.2);
    let min_order = orders.iter().cloned().fold(f64::INFINITY, f64::min);

    let tau = 300.0;
    let warps = [0.0, -0.3, 0.3, -0.6, 0.6];
    let works: Vec<f64> = warps.iter().map(|&a| evolve(&p, &warped_symmetric(&p, a), tau).unwrap().excess_work).collect();
    let const_min = works[1..].iter().all(|w| *w > works[0]);

    let ok = fd <= 1e-5 && drift < 1e-8 && rate <= 1e-10 && order_ok && const_min;
    outcome(
        ok,
        format!(
            "christoffel fd {fd:.1e}; speed drift {drift:.1e}; rate forms {rate:.1e}; residual order >= {min_order:.3}; \
             W_ex constant speed {:.5} J vs warped min {:.5} J",
            works[0],
            works[1..].iter().cloned().fold(f64::INFINITY, f64::min)
        ),
    )
}

/// Largest relative error of the first-order prediction of the deviation
/// from equilibrium at `s`, over the three state components.
fn first_order_error(p: &SystemParams, proto: &PathSamples, tau: f64, s: f64) -> f64 {
    let tr = evolve(p, proto, tau).unwrap();
    let smp = tr.samples.iter().min_by(|a, b| (a.t - s * tau).abs().total_cmp(&(b.t - s * tau).abs())).unwrap();
    let s_at = smp.t / tau;
    let eq = equilibrium_partition(p, smp.state.config).unwrap();
    let d = first_order_deviations(p, proto, tau, s_at).unwrap();
    let pairs = [
        (smp.state.n_alpha_l - eq.n_alpha_l, d.n_alpha_l),
        (smp.state.n_beta_r - eq.n_beta_r, d.n_beta_r),
        (smp.state.temperature - p.t_bath(), d.temperature),
    ];
    pairs.iter().map(|(sim, pred)| (sim - pred).abs() / pred.abs()).fold(0.0, f64::max)
}

fn first_order_oracle() -> Outcome {
    let p = SystemParams::reference();
    let proto = symmetric_protocol_samples(&p, PROTOCOL_SAMPLES).unwrap();
    // Remainder relative to the O(1/tau) deviation is O(1/tau), so the
    // absolute remainder falls as 1/tau^2 and its ratio is 4 on doubling.
    let abs_err = |tau: f64| first_order_error(&p, &proto, tau, 0.5) / tau;
    let ratio = abs_err(150.0) / abs_err(300.0);
    outcome((ratio - 4.0).abs() <= 0.3 * 4.0, format!("error ratio tau 150 -> 300 = {ratio:.3}, expected 4 +- 30%"))
}

#[test]
fn acceptance() {
    let results = [
        report(1, "symmetric length", Duration::from_secs(1), symmetric_length_reproduction),
        report(2, "symmetry-breaking geodesics", Duration::from_secs(60), symmetry_breaking_geodesics),
        report(3, "quasi-static work", Duration::from_secs(1), quasi_static_work_value),
        report(4, "limit regimes", Duration::from_secs(1), table_limits),
        report(5, "excess work bound", Duration::from_secs(120), bound_validation),
        report(6, "property suites", Duration::from_secs(120), property_suites),
        report(7, "first-order oracle", Duration::from_secs(60), first_order_oracle),
    ];
    assert!(results.iter().all(|r| *r), "acceptance criteria failed");
}
