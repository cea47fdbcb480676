#![allow(dead_code)]

use thermosep::geodesic::GeodesicSolution;
use thermosep::geometry::geodesic_acceleration;
use thermosep::SystemParams;

/// Largest residual of the geodesic equation along `sol`, with the second
/// derivative replaced by a central difference of spacing `h` in arc length.
/// Evaluated on interior arc lengths away from both ends.
pub fn geodesic_residual(params: &SystemParams, sol: &GeodesicSolution, h: f64) -> f64 {
    let len = sol.length;
    let mut worst: f64 = 0.0;
    for i in 1..10 {
        let r = len * (0.1 + 0.07 * i as f64);
        let (x0, v0) = sol.state_at(r);
        let (xm, _) = sol.state_at(r - h);
        let (xp, _) = sol.state_at(r + h);
        let acc = geodesic_acceleration(params, x0, v0).unwrap();
        let fd = [
            (xp.x_l - 2.0 * x0.x_l + xm.x_l) / (h * h),
            (xp.x_r - 2.0 * x0.x_r + xm.x_r) / (h * h),
        ];
        worst = worst.max((fd[0] - acc[0]).abs()).max((fd[1] - acc[1]).abs());
    }
    worst
}

/// Observed orders `log2(res(h) / res(h / 2))` over successive halvings.
pub fn residual_orders(params: &SystemParams, sol: &GeodesicSolution, h0: f64, levels: usize) -> (Vec<f64>, Vec<f64>) {
    let res: Vec<f64> = (0..levels).map(|k| geodesic_residual(params, sol, h0 / 2f64.powi(k as i32))).collect();
    let orders = res.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    (res, orders)
}
