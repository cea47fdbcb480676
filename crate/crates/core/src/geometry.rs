//! Excess-work quadratic form, the induced Riemannian metric on the
//! configuration triangle, its Christoffel symbols and thermodynamic length.
//!
//! Units: metric components are J s, so `vel^T G vel` is a power (W) for
//! velocities in 1/s, and lengths come out in (J s)^1/2.

use crate::error::{Error, Result};
use crate::model::{ConfigPoint, SystemParams};

/// Below this value of `det / (trace/2)^2` the metric is treated as singular.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Symmetric 2x2 metric `[[g_ll, g_lr], [g_lr, g_rr]]` (J s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    pub g_ll: f64,
    pub g_lr: f64,
    pub g_rr: f64,
}

impl MetricTensor {
    pub fn det(&self) -> f64 {
        self.g_ll * self.g_rr - self.g_lr * self.g_lr
    }

    pub fn trace(&self) -> f64 {
        self.g_ll + self.g_rr
    }

    /// Scale-free conditioning measure `det / (trace/2)^2`, in `[0, 1]` for
    /// a positive semi-definite metric.
    pub fn conditioning(&self) -> f64 {
        let half = 0.5 * self.trace();
        self.det() / (half * half)
    }

    pub fn component(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.g_ll,
            (1, 1) => self.g_rr,
            _ => self.g_lr,
        }
    }

    pub fn as_matrix(&self) -> [[f64; 2]; 2] {
        [[self.g_ll, self.g_lr], [self.g_lr, self.g_rr]]
    }

    /// Exact 2x2 inverse; `None` if the determinant is not positive.
    pub fn inverse(&self) -> Option<[[f64; 2]; 2]> {
        let det = self.det();
        if !(det > 0.0) || !det.is_finite() {
            return None;
        }
        Some([
            [self.g_rr / det, -self.g_lr / det],
            [-self.g_lr / det, self.g_ll / det],
        ])
    }

    /// `v^T G v`.
    pub fn quadratic(&self, v: [f64; 2]) -> f64 {
        self.g_ll * v[0] * v[0] + 2.0 * self.g_lr * v[0] * v[1] + self.g_rr * v[1] * v[1]
    }
}

/// Partial derivatives of the metric, `d[l][i][j] = dg_ij / dx^l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricDerivatives {
    pub d: [[[f64; 2]; 2]; 2],
}

/// Christoffel symbols at a point.
///
/// `gamma[k][i][j]` are the symbols of the second kind; `lowered[i][j][l]`
/// those of the first kind, `Gamma_{ij,l} = (d_j g_li + d_i g_lj - d_l g_ij)/2`,
/// so that `gamma[k][i][j] = g^{kl} lowered[i][j][l]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelSymbols {
    pub gamma: [[[f64; 2]; 2]; 2],
    pub lowered: [[[f64; 2]; 2]; 2],
}

impl ChristoffelSymbols {
    /// Geodesic acceleration `-Gamma^k_ij v^i v^j`.
    pub fn acceleration(&self, v: [f64; 2]) -> [f64; 2] {
        let mut a = [0.0; 2];
        for (k, ak) in a.iter_mut().enumerate() {
            let g = &self.gamma[k];
            *ak = -(g[0][0] * v[0] * v[0] + 2.0 * g[0][1] * v[0] * v[1] + g[1][1] * v[1] * v[1]);
        }
        a
    }
}

/// Timescale weights shared by the metric and its derivatives.
struct Weights {
    scale: f64,
    a: f64,      // eps_alpha tau_alpha
    b: f64,      // eps_beta tau_beta
    h_ll: f64,   // 2/3 eps_beta^2 tau_h
    h_lr: f64,   // 2/3 eps_alpha eps_beta tau_h
    h_rr: f64,   // 2/3 eps_alpha^2 tau_h
}

impl Weights {
    fn new(p: &SystemParams) -> Self {
        let h = 2.0 / 3.0 * p.tau_h();
        Weights {
            scale: p.energy_scale(),
            a: p.eps_alpha() * p.tau_alpha(),
            b: p.eps_beta() * p.tau_beta(),
            h_ll: h * p.eps_beta() * p.eps_beta(),
            h_lr: h * p.eps_alpha() * p.eps_beta(),
            h_rr: h * p.eps_alpha() * p.eps_alpha(),
        }
    }
}

fn check_pole(pt: ConfigPoint) -> Result<()> {
    if !(pt.x_l < 1.0 && pt.x_r < 1.0) || !pt.x_l.is_finite() || !pt.x_r.is_finite() {
        return Err(Error::domain(format!(
            "metric has a pole at x_l = 1 or x_r = 1, got ({}, {})",
            pt.x_l, pt.x_r
        )));
    }
    Ok(())
}

pub(crate) fn metric_raw(params: &SystemParams, x_l: f64, x_r: f64) -> MetricTensor {
    let w = Weights::new(params);
    let u = 1.0 - x_l;
    let v = 1.0 - x_r;
    MetricTensor {
        g_ll: w.scale * (w.b * x_r * x_r / (u * u * u) + w.a / v + w.h_ll / (u * u)),
        g_lr: w.scale * (w.a * x_l / (v * v) + w.b * x_r / (u * u) + w.h_lr / (u * v)),
        g_rr: w.scale * (w.a * x_l * x_l / (v * v * v) + w.b / u + w.h_rr / (v * v)),
    }
}

pub(crate) fn metric_derivatives_raw(params: &SystemParams, x_l: f64, x_r: f64) -> MetricDerivatives {
    let w = Weights::new(params);
    let u = 1.0 - x_l;
    let v = 1.0 - x_r;
    let (u2, v2) = (u * u, v * v);
    let (u3, v3) = (u2 * u, v2 * v);

    let dl_ll = 3.0 * w.b * x_r * x_r / (u3 * u) + 2.0 * w.h_ll / u3;
    let dl_lr = w.a / v2 + 2.0 * w.b * x_r / u3 + w.h_lr / (u2 * v);
    let dl_rr = 2.0 * w.a * x_l / v3 + w.b / u2;

    let dr_ll = 2.0 * w.b * x_r / u3 + w.a / v2;
    let dr_lr = 2.0 * w.a * x_l / v3 + w.b / u2 + w.h_lr / (u * v2);
    let dr_rr = 3.0 * w.a * x_l * x_l / (v3 * v) + 2.0 * w.h_rr / v3;

    let s = w.scale;
    MetricDerivatives {
        d: [
            [[s * dl_ll, s * dl_lr], [s * dl_lr, s * dl_rr]],
            [[s * dr_ll, s * dr_lr], [s * dr_lr, s * dr_rr]],
        ],
    }
}

/// Geodesic acceleration `-Gamma^k_ij v^i v^j` at the point whose offset
/// from the target `(eps_alpha, eps_beta)` is `dz`.
///
/// `G` is a weighted sum of three rank-one terms `w_c grad(phi_c) grad(phi_c)^T`
/// with `phi_alpha = x_l/(1 - x_r)`, `phi_beta = x_r/(1 - x_l)` and
/// `phi_h = -eps_beta ln(1 - x_l) - eps_alpha ln(1 - x_r)`. Writing the
/// Euler-Lagrange equation in these terms, with the determinant and the
/// adjugate built from cross products of the gradients, avoids the
/// cancellation that ruins `g^{kl} Gamma_{ij,l}` close to the target, where
/// the cross products vanish like the offsets. Returns `None` where `G` is
/// singular or the result is not finite.
pub(crate) fn geodesic_acceleration_offset(params: &SystemParams, dz: [f64; 2], vel: [f64; 2]) -> Option<[f64; 2]> {
    let (ea, eb) = (params.eps_alpha(), params.eps_beta());
    let (ta, tb) = (ea * params.tau_alpha(), eb * params.tau_beta());
    let x_l = ea + dz[0];
    let x_r = eb + dz[1];
    let u = eb - dz[0];
    let v = ea - dz[1];
    let x_m = -(dz[0] + dz[1]);
    if !(u > 0.0 && v > 0.0) {
        return None;
    }
    let (v_l, v_r) = (vel[0], vel[1]);

    let w = [ta * v, tb * u, 2.0 / 3.0 * params.tau_h()];
    let grad = [[1.0 / v, x_l / (v * v)], [x_r / (u * u), 1.0 / u], [eb / u, ea / v]];
    let q_a = v_l / v + x_l * v_r / (v * v);
    let q_b = x_r * v_l / (u * u) + v_r / u;
    // d/dt(w_c q_c) - w_c q_c d/dt: weight change plus curvature of phi_c
    let k = [
        ta * v_r * q_a,
        tb * v_l * q_b,
        w[2] * (eb * v_l * v_l / (u * u) + ea * v_r * v_r / (v * v)),
    ];
    // half q_c^2 grad(w_c); the heat weight is constant
    let gw = [[0.0, -0.5 * ta * q_a * q_a], [-0.5 * tb * q_b * q_b, 0.0]];

    let c_ab = x_m / (u * u * v * v);
    let c_ah = -dz[0] / (v * v * u);
    let c_bh = dz[1] / (u * u * v);
    let cross = [[0.0, c_ab, c_ah], [-c_ab, 0.0, c_bh], [-c_ah, -c_bh, 0.0]];
    let det = w[0] * w[1] * c_ab * c_ab + w[0] * w[2] * c_ah * c_ah + w[1] * w[2] * c_bh * c_bh;
    if !(det > 0.0) {
        return None;
    }

    let mut acc = [0.0; 2];
    for c in 0..3 {
        let j = [grad[c][1], -grad[c][0]];
        let mut proj = 0.0;
        for d in 0..3 {
            proj += k[d] * cross[c][d];
        }
        for g in &gw {
            proj += j[0] * g[0] + j[1] * g[1];
        }
        acc[0] += w[c] * j[0] * proj;
        acc[1] += w[c] * j[1] * proj;
    }
    let out = [acc[0] / det, acc[1] / det];
    (out[0].is_finite() && out[1].is_finite()).then_some(out)
}

/// [`geodesic_acceleration_offset`] at an absolute point.
pub fn geodesic_acceleration(params: &SystemParams, pt: ConfigPoint, vel: [f64; 2]) -> Result<[f64; 2]> {
    check_pole(pt)?;
    let dz = [pt.x_l - params.eps_alpha(), pt.x_r - params.eps_beta()];
    geodesic_acceleration_offset(params, dz, vel).ok_or_else(|| {
        let g = metric_raw(params, pt.x_l, pt.x_r);
        Error::Singular { point: pt, ratio: g.conditioning() }
    })
}

/// Metric tensor at `pt`.
pub fn metric_at(params: &SystemParams, pt: ConfigPoint) -> Result<MetricTensor> {
    check_pole(pt)?;
    Ok(metric_raw(params, pt.x_l, pt.x_r))
}

/// Analytic partial derivatives of the metric at `pt`.
pub fn metric_derivatives(params: &SystemParams, pt: ConfigPoint) -> Result<MetricDerivatives> {
    check_pole(pt)?;
    Ok(metric_derivatives_raw(params, pt.x_l, pt.x_r))
}

/// Builds the symbols from the metric and its derivatives; `None` when the
/// metric cannot be inverted.
pub(crate) fn christoffel_from(g: &MetricTensor, dg: &MetricDerivatives) -> Option<ChristoffelSymbols> {
    let inv = g.inverse()?;
    let d = &dg.d;
    let mut lowered = [[[0.0; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                lowered[i][j][l] = 0.5 * (d[j][l][i] + d[i][l][j] - d[l][i][j]);
            }
        }
    }
    let mut gamma = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in i..2 {
                let v = inv[k][0] * lowered[i][j][0] + inv[k][1] * lowered[i][j][1];
                gamma[k][i][j] = v;
                gamma[k][j][i] = v;
            }
        }
    }
    Some(ChristoffelSymbols { gamma, lowered })
}

pub(crate) fn christoffel_raw(params: &SystemParams, x_l: f64, x_r: f64) -> Option<ChristoffelSymbols> {
    let g = metric_raw(params, x_l, x_r);
    let dg = metric_derivatives_raw(params, x_l, x_r);
    christoffel_from(&g, &dg)
}

/// Christoffel symbols from the analytically differentiated metric.
///
/// Fails with [`Error::Singular`] where the metric is degenerate (at the
/// target `(eps_alpha, eps_beta)` in particular).
pub fn christoffel_at(params: &SystemParams, pt: ConfigPoint) -> Result<ChristoffelSymbols> {
    let g = metric_at(params, pt)?;
    let ratio = g.conditioning();
    if !(ratio >= DEGENERACY_TOL) {
        return Err(Error::Singular { point: pt, ratio });
    }
    let dg = metric_derivatives_raw(params, pt.x_l, pt.x_r);
    christoffel_from(&g, &dg).ok_or(Error::Singular { point: pt, ratio })
}

/// Leading-order excess work rate `vel^T G vel` (W) for membrane
/// velocities `vel = (dx_l/dt, dx_r/dt)` in 1/s.
pub fn excess_work_rate(params: &SystemParams, pt: ConfigPoint, vel: [f64; 2]) -> Result<f64> {
    Ok(metric_at(params, pt)?.quadratic(vel))
}

/// The same rate written as the sum of its three physical contributions:
/// heat exchange plus particle transport across each membrane.
pub fn excess_work_rate_by_channel(params: &SystemParams, pt: ConfigPoint, vel: [f64; 2]) -> Result<[f64; 3]> {
    check_pole(pt)?;
    let (x_l, x_r) = (pt.x_l, pt.x_r);
    let (v_l, v_r) = (vel[0], vel[1]);
    let (ea, eb) = (params.eps_alpha(), params.eps_beta());
    let scale = params.energy_scale();

    let heat_bracket = ea * v_r / (1.0 - x_r) + eb * v_l / (1.0 - x_l);
    let heat = 2.0 / 3.0 * scale * params.tau_h() * heat_bracket * heat_bracket;

    // d/dt [x_l / (1 - x_r)] and d/dt [x_r / (1 - x_l)]
    let rate_l = v_l / (1.0 - x_r) + x_l * v_r / ((1.0 - x_r) * (1.0 - x_r));
    let rate_r = v_r / (1.0 - x_l) + x_r * v_l / ((1.0 - x_l) * (1.0 - x_l));
    let alpha = scale * ea * params.tau_alpha() * (1.0 - x_r) * rate_l * rate_l;
    let beta = scale * eb * params.tau_beta() * (1.0 - x_l) * rate_r * rate_r;
    Ok([heat, alpha, beta])
}

/// Sum of [`excess_work_rate_by_channel`].
pub fn excess_work_rate_direct(params: &SystemParams, pt: ConfigPoint, vel: [f64; 2]) -> Result<f64> {
    Ok(excess_work_rate_by_channel(params, pt, vel)?.iter().sum())
}

/// A control protocol: configuration points sampled at rescaled times
/// `s in [0, 1]`, optionally with their derivatives `dx/ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSamples {
    s: Vec<f64>,
    points: Vec<ConfigPoint>,
    derivatives: Option<Vec<[f64; 2]>>,
}

impl PathSamples {
    /// Validates `s` (strictly increasing from 0 to 1) and every point.
    pub fn new(s: Vec<f64>, points: Vec<ConfigPoint>) -> Result<Self> {
        Self::build(s, points, None)
    }

    /// As [`PathSamples::new`], carrying exact derivatives `dx/ds` used for
    /// Hermite interpolation.
    pub fn with_derivatives(s: Vec<f64>, points: Vec<ConfigPoint>, derivatives: Vec<[f64; 2]>) -> Result<Self> {
        if derivatives.len() != points.len() {
            return Err(Error::domain("derivative count differs from sample count"));
        }
        if derivatives.iter().flatten().any(|d| !d.is_finite()) {
            return Err(Error::domain("non-finite protocol derivative"));
        }
        Self::build(s, points, Some(derivatives))
    }

    fn build(s: Vec<f64>, points: Vec<ConfigPoint>, derivatives: Option<Vec<[f64; 2]>>) -> Result<Self> {
        if s.len() != points.len() {
            return Err(Error::domain("s and point sequences differ in length"));
        }
        if s.len() == 1 {
            if s[0] != 0.0 && s[0] != 1.0 {
                return Err(Error::domain("a single-sample path must sit at s = 0 or s = 1"));
            }
        } else {
            if s.is_empty() {
                return Err(Error::domain("empty path"));
            }
            if s[0] != 0.0 || *s.last().unwrap() != 1.0 {
                return Err(Error::domain("path must start at s = 0 and end at s = 1"));
            }
            if s.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::domain("s must be strictly increasing"));
            }
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| !p.is_valid()) {
            return Err(Error::domain(format!(
                "sample {i} ({}, {}) is outside the configuration triangle",
                p.x_l, p.x_r
            )));
        }
        Ok(PathSamples { s, points, derivatives })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn points(&self) -> &[ConfigPoint] {
        &self.points
    }

    pub fn derivatives(&self) -> Option<&[[f64; 2]]> {
        self.derivatives.as_deref()
    }

    pub fn start(&self) -> ConfigPoint {
        self.points[0]
    }

    pub fn end(&self) -> ConfigPoint {
        *self.points.last().unwrap()
    }

    /// Drops the stored derivatives, as a round trip through the
    /// `s,x_l,x_r` file format does.
    pub fn without_derivatives(mut self) -> Self {
        self.derivatives = None;
        self
    }

    /// Mirror image `x_l <-> x_r`.
    pub fn mirrored(&self) -> Self {
        PathSamples {
            s: self.s.clone(),
            points: self.points.iter().map(ConfigPoint::mirrored).collect(),
            derivatives: self
                .derivatives
                .as_ref()
                .map(|d| d.iter().map(|v| [v[1], v[0]]).collect()),
        }
    }
}

/// Thermodynamic length of a sampled path by the composite midpoint rule:
/// each segment contributes `sqrt(dx^T G(mid) dx)`.
pub fn path_length(params: &SystemParams, path: &PathSamples) -> Result<f64> {
    let pts = path.points();
    let n = pts.len();
    for (i, p) in pts.iter().enumerate().take(n.saturating_sub(1)) {
        if p.x_l >= 1.0 || p.x_r >= 1.0 {
            return Err(Error::domain(format!("path touches the metric pole at sample {i}")));
        }
    }
    let mut total = 0.0;
    for w in pts.windows(2) {
        let mid = ConfigPoint {
            x_l: 0.5 * (w[0].x_l + w[1].x_l),
            x_r: 0.5 * (w[0].x_r + w[1].x_r),
        };
        let g = metric_at(params, mid)?;
        let dx = [w[1].x_l - w[0].x_l, w[1].x_r - w[0].x_r];
        total += g.quadratic(dx).max(0.0).sqrt();
    }
    Ok(total)
}

/// Cumulative length at every sample (first entry 0).
pub fn cumulative_length(params: &SystemParams, path: &PathSamples) -> Result<Vec<f64>> {
    let pts = path.points();
    let mut out = Vec::with_capacity(pts.len());
    let mut total = 0.0;
    out.push(0.0);
    for w in pts.windows(2) {
        let mid = ConfigPoint {
            x_l: 0.5 * (w[0].x_l + w[1].x_l),
            x_r: 0.5 * (w[0].x_r + w[1].x_r),
        };
        let g = metric_at(params, mid)?;
        let dx = [w[1].x_l - w[0].x_l, w[1].x_r - w[0].x_r];
        total += g.quadratic(dx).max(0.0).sqrt();
        out.push(total);
    }
    Ok(out)
}
