use thermosep::analytic::symmetric_protocol_samples;
use thermosep::geometry::PathSamples;
use thermosep::model::{equilibrium_partition, GasState};
use thermosep::simulate::{evolve, evolve_with, excess_work_sweep, first_order_deviations, SimulationOptions};
use thermosep::{ConfigPoint, SystemParams};

fn frozen(pt: ConfigPoint) -> PathSamples {
    PathSamples::new(vec![0.0, 1.0], vec![pt, pt]).unwrap()
}

/// Decay rate of `|dev|` fitted between two samples.
fn decay_rate(t0: f64, d0: f64, t1: f64, d1: f64) -> f64 {
    (d0.abs() / d1.abs()).ln() / (t1 - t0)
}

#[test]
fn relaxation_time_constants() {
    let p = SystemParams::new(2.0 * 6.02e23, 298.15, 0.5, 0.5, 1.0, 2.0, 0.3).unwrap();
    let pt = ConfigPoint { x_l: 0.2, x_r: 0.3 };
    let eq = equilibrium_partition(&p, pt).unwrap();
    let start = GasState { n_alpha_l: 0.5 * eq.n_alpha_l, n_beta_r: 0.5 * eq.n_beta_r, temperature: 300.0, config: pt };
    let opts = SimulationOptions { initial_state: Some(start), ..Default::default() };
    let tr = evolve_with(&p, &frozen(pt), 1.0, &opts).unwrap();
    let (a, b) = (&tr.samples[100], &tr.samples[300]);
    let x_m = pt.x_m();
    let k_alpha = (1.0 / x_m + 1.0 / pt.x_l) / p.tau_alpha();
    let k_beta = (1.0 / x_m + 1.0 / pt.x_r) / p.tau_beta();
    let k_heat = 1.0 / p.tau_h();
    let fit = |f: fn(&GasState) -> f64, target: f64| {
        decay_rate(a.t, f(&a.state) - target, b.t, f(&b.state) - target)
    };
    let ka = fit(|s| s.n_alpha_l, eq.n_alpha_l);
    let kb = fit(|s| s.n_beta_r, eq.n_beta_r);
    let kh = fit(|s| s.temperature, p.t_bath());
    assert!((ka / k_alpha - 1.0).abs() < 0.05, "{ka} vs {k_alpha}");
    assert!((kb / k_beta - 1.0).abs() < 0.05, "{kb} vs {k_beta}");
    assert!((kh / k_heat - 1.0).abs() < 0.05, "{kh} vs {k_heat}");
}

#[test]
fn compression_heats_the_gas() {
    let p = SystemParams::reference();
    let proto = symmetric_protocol_samples(&p, 1001).unwrap();
    let tr = evolve(&p, &proto, 50.0).unwrap();
    let mid = &tr.samples[tr.samples.len() / 2];
    assert!(mid.state.temperature > p.t_bath());
    let d = first_order_deviations(&p, &proto, 50.0, 0.5).unwrap();
    assert!(d.temperature > 0.0);
    assert!(tr.excess_work > 0.0);
}

#[test]
fn heat_matches_temperature_record() {
    let p = SystemParams::reference();
    let proto = symmetric_protocol_samples(&p, 1001).unwrap();
    let tr = evolve(&p, &proto, 30.0).unwrap();
    // Newton cooling: dQ/dt = C_V (T - T_0) / tau_h, trapezoid over the output grid.
    let rate = |s: &thermosep::simulate::TrajectorySample| p.heat_capacity() * (s.state.temperature - p.t_bath()) / p.tau_h();
    let heat: f64 = tr.samples.windows(2).map(|w| 0.5 * (rate(&w[0]) + rate(&w[1])) * (w[1].t - w[0].t)).sum();
    let last = tr.last();
    assert!((heat - last.heat).abs() < 1e-4 * last.heat.abs(), "{heat} vs {}", last.heat);
    // The short reversible, isothermal stretch before the first sample
    // releases its work as heat outside the counter.
    let pre = tr.samples[0].work;
    let balance = p.heat_capacity() * (last.state.temperature - p.t_bath()) + last.heat + pre;
    assert!((balance - tr.total_work).abs() < 1e-8 * tr.total_work.abs());
}

#[test]
fn sweep_gap_shrinks_with_time() {
    let p = SystemParams::reference();
    let proto = symmetric_protocol_samples(&p, 1001).unwrap();
    let rows = excess_work_sweep(&p, &proto, &[30.0, 100.0, 300.0]).unwrap();
    let gaps: Vec<f64> = rows.iter().map(|r| r.excess_work / r.l_squared_over_tau - 1.0).collect();
    assert!(gaps.iter().all(|g| *g > 0.0));
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn single_sweep_matches_direct_run() {
    let p = SystemParams::reference();
    let proto = symmetric_protocol_samples(&p, 1001).unwrap();
    let row = excess_work_sweep(&p, &proto, &[100.0]).unwrap()[0];
    let tr = evolve(&p, &proto, 100.0).unwrap();
    assert_eq!(row.excess_work, tr.excess_work);
    assert!(excess_work_sweep(&p, &proto, &[100.0, -1.0]).is_err());
}
