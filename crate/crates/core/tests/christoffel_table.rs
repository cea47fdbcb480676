//! Cross-check of hand-written closed forms for the lowered Christoffel
//! symbols `Gamma_{ij,l} = (d_j g_li + d_i g_lj - d_l g_ij) / 2` against the
//! library.
//!
//! Two of the hand-written forms below differ from the derived symbols:
//! the pair labelled `Gamma_121` / `Gamma_122` carries the
//! other pair's expression (`d_1 g_22 / 2` versus `d_2 g_11 / 2`), and the
//! leading term of `Gamma_112` is written with `eps_alpha tau_beta` where the
//! derivation gives `eps_alpha tau_alpha`. The tests pin both findings so a
//! regression in either direction shows up.

use thermosep::geometry::christoffel_at;
use thermosep::{ConfigPoint, SystemParams};

/// Asymmetric so that swapped labels or timescales cannot coincide.
fn params() -> SystemParams {
    SystemParams::new(1e3, 300.0, 0.3, 0.7, 2.0, 0.5, 0.2).unwrap()
}

struct Table {
    g111: f64,
    g222: f64,
    g121: f64,
    g122: f64,
    g221: f64,
    g112: f64,
}

/// Hand-written closed forms, with `x1 = x_l`, `x2 = x_r`.
fn printed(p: &SystemParams, x1: f64, x2: f64) -> Table {
    let k = 0.5 * p.energy_scale();
    let (ea, eb) = (p.eps_alpha(), p.eps_beta());
    let (ta, tb, th) = (p.tau_alpha(), p.tau_beta(), p.tau_h());
    let (u, v) = (1.0 - x1, 1.0 - x2);
    Table {
        g111: k * (4.0 / 3.0 * eb * eb * th / u.powi(3) + 3.0 * eb * tb * x2 * x2 / u.powi(4)),
        g222: k * (4.0 / 3.0 * ea * ea * th / v.powi(3) + 3.0 * ea * ta * x1 * x1 / v.powi(4)),
        g121: k * (eb * tb / (u * u) + 2.0 * ea * ta * x1 / v.powi(3)),
        g122: k * (ea * ta / (v * v) + 2.0 * eb * tb * x2 / u.powi(3)),
        g221: k * (eb * tb / (u * u) + 2.0 * ea * ta * x1 / v.powi(3) + 4.0 / 3.0 * ea * eb * th / (u * v * v)),
        g112: k * (ea * tb / (v * v) + 2.0 * eb * tb * x2 / u.powi(3) + 4.0 / 3.0 * ea * eb * th / (v * u * u)),
    }
}

/// `Gamma_112` with the leading timescale corrected to `tau_alpha`.
fn g112_corrected(p: &SystemParams, x1: f64, x2: f64) -> f64 {
    let k = 0.5 * p.energy_scale();
    let (ea, eb) = (p.eps_alpha(), p.eps_beta());
    let (u, v) = (1.0 - x1, 1.0 - x2);
    k * (ea * p.tau_alpha() / (v * v)
        + 2.0 * eb * p.tau_beta() * x2 / u.powi(3)
        + 4.0 / 3.0 * ea * eb * p.tau_h() / (v * u * u))
}

const POINTS: [(f64, f64); 5] = [(0.1, 0.2), (0.3, 0.15), (0.05, 0.6), (0.45, 0.45), (0.2, 0.5)];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn diagonal_and_mixed_entries_match() {
    let p = params();
    for (x1, x2) in POINTS {
        let c = christoffel_at(&p, ConfigPoint { x_l: x1, x_r: x2 }).unwrap().lowered;
        let t = printed(&p, x1, x2);
        assert!(rel(t.g111, c[0][0][0]) < 1e-13);
        assert!(rel(t.g222, c[1][1][1]) < 1e-13);
        assert!(rel(t.g221, c[1][1][0]) < 1e-13);
        assert!(rel(g112_corrected(&p, x1, x2), c[0][0][1]) < 1e-13);
    }
}

#[test]
fn off_diagonal_pair_labels_are_swapped() {
    let p = params();
    for (x1, x2) in POINTS {
        let c = christoffel_at(&p, ConfigPoint { x_l: x1, x_r: x2 }).unwrap().lowered;
        let t = printed(&p, x1, x2);
        // Gamma_{12,1} = d_2 g_11 / 2 and Gamma_{12,2} = d_1 g_22 / 2.
        assert!(rel(t.g122, c[0][1][0]) < 1e-13);
        assert!(rel(t.g121, c[0][1][1]) < 1e-13);
        assert!(rel(t.g121, c[0][1][0]) > 1e-3);
        assert!(rel(c[0][1][0], c[1][0][0]) < 1e-15);
    }
}

#[test]
fn printed_gamma_112_uses_wrong_timescale() {
    let p = params();
    for (x1, x2) in POINTS {
        let c = christoffel_at(&p, ConfigPoint { x_l: x1, x_r: x2 }).unwrap().lowered;
        assert!(rel(printed(&p, x1, x2).g112, c[0][0][1]) > 1e-3);
    }
    // With tau_alpha = tau_beta the two forms coincide.
    let sym = SystemParams::reference();
    let c = christoffel_at(&sym, ConfigPoint { x_l: 0.2, x_r: 0.3 }).unwrap().lowered;
    assert!(rel(printed(&sym, 0.2, 0.3).g112, c[0][0][1]) < 1e-13);
}
