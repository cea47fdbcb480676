//! Dormand–Prince 5(4) stepper with embedded error control and the
//! 4th-order continuous extension.
//!
//! The driver loop is left to the caller so that it can inspect every
//! accepted step (event location, stop rules). A right-hand side returns
//! `None` for states where it is undefined; such attempts are rejected and
//! retried with a smaller step.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Step control settings.
#[derive(Debug, Clone, Copy)]
pub struct StepControl<const N: usize> {
    pub rtol: f64,
    pub atol: [f64; N],
    /// Smallest step the stepper will attempt; below it the stepper reports
    /// [`StepStatus::Underflow`].
    pub h_min: f64,
    pub h_max: f64,
    /// First trial step; estimated from the problem when `None`.
    pub h_init: Option<f64>,
}

impl<const N: usize> StepControl<N> {
    pub fn new(rtol: f64, atol: f64) -> Self {
        StepControl {
            rtol,
            atol: [atol; N],
            h_min: 0.0,
            h_max: f64::INFINITY,
            h_init: None,
        }
    }
}

/// Continuous extension over the last accepted step.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    r: [[f64; N]; 5],
}

impl<const N: usize> DenseStep<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// State at `t` (meant for `t` inside the step).
    pub fn eval(&self, t: f64) -> [f64; N] {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.r;
        let mut y = [0.0; N];
        for i in 0..N {
            y[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        }
        y
    }
}

/// Outcome of one call to [`Dopri5::step`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepStatus {
    Accepted,
    /// The required step fell below `h_min`; the state was not advanced.
    Underflow { h: f64 },
}

/// Dormand–Prince 5(4) integrator state.
#[derive(Debug, Clone)]
pub struct Dopri5<const N: usize> {
    t: f64,
    y: [f64; N],
    f: [f64; N],
    h: f64,
    ctl: StepControl<N>,
    dense: Option<DenseStep<N>>,
    accepted: usize,
    rejected: usize,
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

fn finite<const N: usize>(v: &[f64; N]) -> bool {
    v.iter().all(|x| x.is_finite())
}

impl<const N: usize> Dopri5<N> {
    pub fn new<F>(rhs: &mut F, t0: f64, y0: [f64; N], ctl: StepControl<N>) -> Result<Self>
    where
        F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
    {
        let f = rhs(t0, &y0)
            .filter(finite)
            .ok_or_else(|| Error::Numerical(format!("right-hand side undefined at the initial state t = {t0:e}")))?;
        let mut s = Dopri5 {
            t: t0,
            y: y0,
            f,
            h: 0.0,
            ctl,
            dense: None,
            accepted: 0,
            rejected: 0,
        };
        s.h = match ctl.h_init {
            Some(h) => h,
            None => s.initial_step(rhs),
        }
        .min(ctl.h_max);
        Ok(s)
    }

    fn scale(&self, i: usize, a: f64, b: f64) -> f64 {
        self.ctl.atol[i] + self.ctl.rtol * a.abs().max(b.abs())
    }

    // Hairer & Wanner's starting step heuristic.
    fn initial_step<F>(&self, rhs: &mut F) -> f64
    where
        F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
    {
        let mut d0 = 0.0;
        let mut d1 = 0.0;
        for i in 0..N {
            let sk = self.scale(i, self.y[i], self.y[i]);
            d0 += (self.y[i] / sk).powi(2);
            d1 += (self.f[i] / sk).powi(2);
        }
        let (d0, d1) = ((d0 / N as f64).sqrt(), (d1 / N as f64).sqrt());
        let mut h0 = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * d0 / d1 };
        h0 = h0.min(self.ctl.h_max);
        let y1 = axpy(&self.y, h0, &[(1.0, &self.f)]);
        let d2 = match rhs(self.t + h0, &y1).filter(finite) {
            Some(f1) => {
                let mut acc = 0.0;
                for i in 0..N {
                    acc += ((f1[i] - self.f[i]) / self.scale(i, self.y[i], self.y[i])).powi(2);
                }
                (acc / N as f64).sqrt() / h0
            }
            None => return h0 * 1e-3,
        };
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).max(self.ctl.h_min)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y(&self) -> &[f64; N] {
        &self.y
    }

    /// Derivative at the current state.
    pub fn derivative(&self) -> &[f64; N] {
        &self.f
    }

    /// Continuous extension of the most recent accepted step.
    pub fn dense(&self) -> Option<&DenseStep<N>> {
        self.dense.as_ref()
    }

    /// Step size proposed for the next attempt.
    pub fn next_step(&self) -> f64 {
        self.h
    }

    pub fn accepted_steps(&self) -> usize {
        self.accepted
    }

    pub fn rejected_steps(&self) -> usize {
        self.rejected
    }

    /// Advances by one accepted step without passing `t_end`.
    pub fn step<F>(&mut self, rhs: &mut F, t_end: f64) -> StepStatus
    where
        F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
    {
        let mut fac_max = FAC_MAX;
        loop {
            let remaining = t_end - self.t;
            let mut h = self.h.min(self.ctl.h_max);
            let last = h >= remaining;
            if last {
                h = remaining;
            } else if h < self.ctl.h_min {
                return StepStatus::Underflow { h };
            }
            if h <= 0.0 || self.t + h == self.t {
                return StepStatus::Underflow { h };
            }

            match self.attempt(rhs, h) {
                Some((y1, f1, err, r)) if err <= 1.0 => {
                    let fac = (SAFETY * err.max(1e-10).powf(-0.2)).clamp(FAC_MIN, fac_max);
                    self.dense = Some(DenseStep { t0: self.t, h, r });
                    self.t = if last { t_end } else { self.t + h };
                    self.y = y1;
                    self.f = f1;
                    // Keep the unclipped proposal when the final step was shortened.
                    let proposal = h * fac;
                    self.h = if last { self.h.max(proposal) } else { proposal };
                    self.accepted += 1;
                    return StepStatus::Accepted;
                }
                Some((_, _, err, _)) => {
                    self.rejected += 1;
                    let fac = (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, 1.0);
                    self.h = h * fac;
                    fac_max = 1.0;
                }
                None => {
                    self.rejected += 1;
                    self.h = 0.25 * h;
                    fac_max = 1.0;
                }
            }
        }
    }

    #[allow(clippy::type_complexity)]
    fn attempt<F>(&self, rhs: &mut F, h: f64) -> Option<([f64; N], [f64; N], f64, [[f64; N]; 5])>
    where
        F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
    {
        let (t, y, k1) = (self.t, &self.y, &self.f);
        let mut eval = |tt: f64, yy: [f64; N]| rhs(tt, &yy).filter(finite);

        let k2 = eval(t + C2 * h, axpy(y, h, &[(A21, k1)]))?;
        let k3 = eval(t + C3 * h, axpy(y, h, &[(A31, k1), (A32, &k2)]))?;
        let k4 = eval(t + C4 * h, axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = eval(t + C5 * h, axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
        let k6 = eval(
            t + h,
            axpy(y, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        )?;
        let y1 = axpy(y, h, &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        if !finite(&y1) {
            return None;
        }
        let k7 = eval(t + h, y1)?;

        let mut err = 0.0;
        for i in 0..N {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sk = self.scale(i, y[i], y1[i]);
            err += (e / sk).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            return None;
        }

        let mut r = [[0.0; N]; 5];
        for i in 0..N {
            let dy = y1[i] - y[i];
            let bspl = h * k1[i] - dy;
            r[0][i] = y[i];
            r[1][i] = dy;
            r[2][i] = bspl;
            r[3][i] = dy - h * k7[i] - bspl;
            r[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
        }
        Some((y1, k7, err, r))
    }
}

/// Integrates from `t0` to `t1` and returns the final state.
pub fn integrate<const N: usize, F>(rhs: &mut F, t0: f64, y0: [f64; N], t1: f64, ctl: StepControl<N>) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
{
    let mut st = Dopri5::new(rhs, t0, y0, ctl)?;
    while st.t() < t1 {
        if let StepStatus::Underflow { h } = st.step(rhs, t1) {
            return Err(Error::Numerical(format!("step size underflow (h = {h:e}) at t = {:e}", st.t())));
        }
    }
    Ok(*st.y())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let mut f = |_t: f64, y: &[f64; 1]| Some([-y[0]]);
        let y = integrate(&mut f, 0.0, [1.0], 5.0, StepControl::new(1e-10, 1e-12)).unwrap();
        assert!((y[0] - (-5.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn harmonic_oscillator_dense_output() {
        let mut f = |_t: f64, y: &[f64; 2]| Some([y[1], -y[0]]);
        let mut st = Dopri5::new(&mut f, 0.0, [0.0, 1.0], StepControl::new(1e-10, 1e-12)).unwrap();
        let mut worst: f64 = 0.0;
        while st.t() < 10.0 {
            assert_eq!(st.step(&mut f, 10.0), StepStatus::Accepted);
            let d = st.dense().unwrap();
            for k in 1..4 {
                let t = d.t0 + d.h * k as f64 / 4.0;
                worst = worst.max((d.eval(t)[0] - t.sin()).abs());
            }
        }
        assert!((st.y()[0] - 10f64.sin()).abs() < 1e-9);
        assert!(worst < 1e-8, "dense error {worst}");
    }

    #[test]
    fn undefined_region_forces_smaller_steps() {
        // dy/dt = 1, undefined for y > 1: the stepper must stop short and underflow.
        let mut f = |_t: f64, y: &[f64; 1]| if y[0] > 1.0 { None } else { Some([1.0]) };
        let mut ctl = StepControl::new(1e-10, 1e-12);
        ctl.h_min = 1e-9;
        let mut st = Dopri5::new(&mut f, 0.0, [0.0], ctl).unwrap();
        loop {
            match st.step(&mut f, 5.0) {
                StepStatus::Accepted => assert!(st.y()[0] <= 1.0),
                StepStatus::Underflow { .. } => break,
            }
        }
        assert!((st.y()[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn fifth_order_convergence() {
        // Fixed steps through h_max with loose tolerance: error ratio ~ 2^5.
        let run = |h: f64| {
            let mut f = |t: f64, y: &[f64; 1]| Some([y[0] * t.cos()]);
            let mut ctl = StepControl::new(1.0, 1.0);
            ctl.h_max = h;
            ctl.h_init = Some(h);
            let y = integrate(&mut f, 0.0, [1.0], 2.0, ctl).unwrap();
            (y[0] - 2f64.sin().exp()).abs()
        };
        let ratio = run(0.1) / run(0.05);
        assert!(ratio > 20.0 && ratio < 80.0, "ratio {ratio}");
    }
}
