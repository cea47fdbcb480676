//! Piecewise cubic Hermite interpolation of a sampled protocol.

use crate::error::{Error, Result};
use crate::geometry::PathSamples;

/// Cubic Hermite curve through `(s_i, x_i)` with slopes `m_i`.
#[derive(Debug, Clone)]
pub struct HermiteCurve {
    s: Vec<f64>,
    x: Vec<[f64; 2]>,
    m: Vec<[f64; 2]>,
}

/// Position and first two derivatives with respect to `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub x: [f64; 2],
    pub dx: [f64; 2],
    pub ddx: [f64; 2],
}

impl HermiteCurve {
    /// Uses the stored derivatives when the path carries them, otherwise
    /// shape-preserving (PCHIP) slopes from the samples.
    pub fn from_path(path: &PathSamples) -> Result<Self> {
        if path.len() < 2 {
            return Err(Error::domain("interpolation needs at least two samples"));
        }
        let s = path.s().to_vec();
        let x: Vec<[f64; 2]> = path.points().iter().map(|p| p.as_array()).collect();
        let m = match path.derivatives() {
            Some(d) => d.to_vec(),
            None => {
                let ml = pchip_slopes(&s, &x.iter().map(|v| v[0]).collect::<Vec<_>>());
                let mr = pchip_slopes(&s, &x.iter().map(|v| v[1]).collect::<Vec<_>>());
                ml.into_iter().zip(mr).map(|(a, b)| [a, b]).collect()
            }
        };
        Ok(HermiteCurve { s, x, m })
    }

    pub fn s_max(&self) -> f64 {
        *self.s.last().unwrap()
    }

    fn segment(&self, s: f64) -> usize {
        let n = self.s.len();
        if s <= self.s[0] {
            return 0;
        }
        if s >= self.s[n - 1] {
            return n - 2;
        }
        self.s.partition_point(|&v| v <= s) - 1
    }

    pub fn eval(&self, s: f64) -> CurvePoint {
        let i = self.segment(s);
        let h = self.s[i + 1] - self.s[i];
        let t = (s - self.s[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let d00 = (6.0 * t2 - 6.0 * t) / h;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = (-6.0 * t2 + 6.0 * t) / h;
        let d11 = 3.0 * t2 - 2.0 * t;
        let e00 = (12.0 * t - 6.0) / (h * h);
        let e10 = (6.0 * t - 4.0) / h;
        let e01 = (-12.0 * t + 6.0) / (h * h);
        let e11 = (6.0 * t - 2.0) / h;
        let mut out = CurvePoint { x: [0.0; 2], dx: [0.0; 2], ddx: [0.0; 2] };
        for c in 0..2 {
            let (y0, y1) = (self.x[i][c], self.x[i + 1][c]);
            let (m0, m1) = (self.m[i][c], self.m[i + 1][c]);
            out.x[c] = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
            out.dx[c] = d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1;
            out.ddx[c] = e00 * y0 + e10 * m0 + e01 * y1 + e11 * m1;
        }
        out
    }
}

/// Fritsch–Butland weighted-harmonic-mean slopes with the usual
/// shape-preserving end conditions.
pub fn pchip_slopes(s: &[f64], y: &[f64]) -> Vec<f64> {
    let n = s.len();
    let h: Vec<f64> = s.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    let mut m = vec![0.0; n];
    if n == 2 {
        m[0] = delta[0];
        m[1] = delta[0];
        return m;
    }
    for k in 1..n - 1 {
        let (d0, d1) = (delta[k - 1], delta[k]);
        if d0 * d1 <= 0.0 {
            m[k] = 0.0;
        } else {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / d0 + w2 / d1);
        }
    }
    m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    m
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}
