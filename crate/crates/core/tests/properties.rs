use proptest::prelude::*;

use thermosep::geometry::{
    christoffel_at, excess_work_rate, excess_work_rate_by_channel, geodesic_acceleration, metric_at,
    metric_derivatives,
};
use thermosep::model::{equilibrium_partition, reversible_work, reversible_work_rate};
use thermosep::{ConfigPoint, SystemParams};

fn params_strategy() -> impl Strategy<Value = SystemParams> {
    (0.1..0.9f64, 0.1..10.0f64, 0.1..10.0f64, 0.01..10.0f64).prop_map(|(ea, ta, tb, th)| {
        SystemParams::new(1e3, 300.0, ea, 1.0 - ea, ta, tb, th).unwrap()
    })
}

/// Interior point with every compartment volume at least `0.02`.
fn point_strategy() -> impl Strategy<Value = ConfigPoint> {
    (0.02..0.96f64, 0.0..1.0f64).prop_map(|(x_l, t)| {
        let x_r = 0.02 + t * (0.96 - x_l - 0.02);
        ConfigPoint { x_l, x_r }
    })
}

fn away_from_target(p: &SystemParams, pt: ConfigPoint) -> bool {
    pt.distance(&p.target()) > 0.05
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn metric_positive_definite_off_target(p in params_strategy(), pt in point_strategy()) {
        prop_assume!(away_from_target(&p, pt));
        let g = metric_at(&p, pt).unwrap();
        prop_assert!(g.g_ll > 0.0 && g.g_rr > 0.0);
        prop_assert!(g.det() > 0.0);
    }

    #[test]
    fn excess_rate_nonnegative(p in params_strategy(), pt in point_strategy(), vl in -1.0..1.0f64, vr in -1.0..1.0f64) {
        let r = excess_work_rate(&p, pt, [vl, vr]).unwrap();
        prop_assert!(r >= -1e-12 * p.energy_scale());
        for c in excess_work_rate_by_channel(&p, pt, [vl, vr]).unwrap() {
            prop_assert!(c >= 0.0);
        }
    }

    #[test]
    fn mirror_symmetry(p in params_strategy(), pt in point_strategy()) {
        let g = metric_at(&p, pt).unwrap();
        let m = metric_at(&p.mirrored(), pt.mirrored()).unwrap();
        prop_assert!((g.g_ll - m.g_rr).abs() <= 1e-12 * g.g_ll.abs());
        prop_assert!((g.g_rr - m.g_ll).abs() <= 1e-12 * g.g_rr.abs());
        prop_assert!((g.g_lr - m.g_lr).abs() <= 1e-12 * g.g_lr.abs().max(g.trace()));
    }

    #[test]
    fn christoffel_compatible_with_metric(p in params_strategy(), pt in point_strategy()) {
        prop_assume!(away_from_target(&p, pt));
        let c = christoffel_at(&p, pt).unwrap().lowered;
        let d = metric_derivatives(&p, pt).unwrap().d;
        let scale = d.iter().flatten().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let sum = c[k][i][j] + c[k][j][i];
                    prop_assert!((sum - d[k][i][j]).abs() <= 1e-12 * scale);
                }
            }
        }
    }

    #[test]
    fn channel_acceleration_matches_christoffel(p in params_strategy(), pt in point_strategy(), th in 0.0..std::f64::consts::TAU) {
        prop_assume!(away_from_target(&p, pt));
        let v = [th.cos(), th.sin()];
        let a = geodesic_acceleration(&p, pt, v).unwrap();
        let b = christoffel_at(&p, pt).unwrap().acceleration(v);
        let scale = a[0].abs().max(a[1].abs()).max(b[0].abs()).max(b[1].abs()).max(1.0);
        prop_assert!((a[0] - b[0]).abs() <= 1e-8 * scale, "{a:?} vs {b:?}");
        prop_assert!((a[1] - b[1]).abs() <= 1e-8 * scale, "{a:?} vs {b:?}");
    }

    #[test]
    fn equilibrium_fractions_in_unit_interval(p in params_strategy(), pt in point_strategy()) {
        let s = equilibrium_partition(&p, pt).unwrap();
        prop_assert!((0.0..=p.n_alpha()).contains(&s.n_alpha_l));
        prop_assert!((0.0..=p.n_beta()).contains(&s.n_beta_r));
        prop_assert_eq!(s.temperature, p.t_bath());
    }
}

/// Integrates the reversible work rate along a quadratic Bezier curve from
/// the origin to `end` with composite Simpson.
fn work_along(p: &SystemParams, ctrl: ConfigPoint, end: ConfigPoint) -> f64 {
    let n = 2000;
    let h = 1.0 / n as f64;
    let at = |t: f64| {
        let b = 2.0 * t * (1.0 - t);
        let c = t * t;
        let pt = ConfigPoint { x_l: b * ctrl.x_l + c * end.x_l, x_r: b * ctrl.x_r + c * end.x_r };
        let vel = [
            2.0 * (1.0 - t) * ctrl.x_l + 2.0 * t * (end.x_l - ctrl.x_l),
            2.0 * (1.0 - t) * ctrl.x_r + 2.0 * t * (end.x_r - ctrl.x_r),
        ];
        reversible_work_rate(p, pt, vel)
    };
    let mut sum = at(0.0) + at(1.0);
    for i in 1..n {
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * at(i as f64 * h);
    }
    sum * h / 3.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reversible_work_path_independent(p in params_strategy(), end in point_strategy(), c in point_strategy()) {
        let exact = reversible_work(&p, end).unwrap();
        let along = work_along(&p, c, end);
        prop_assert!((along - exact).abs() <= 1e-8 * exact.abs().max(p.energy_scale()), "{along} vs {exact}");
    }
}
