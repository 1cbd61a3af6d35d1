use crate::error::Result;
use crate::fractional::FractionalPoint;
use crate::instance::{Instance, Solution};

use super::{optimal_x_for, optimal_y_for};

/// RyOx: round `y` by the sign of `d_j + sum_i q_ij x_i`, then choose the
/// optimal `x` for that `y`. The result is never below `f(p)`.
pub fn round_y_optimize_x(inst: &Instance, p: &FractionalPoint) -> Result<Solution> {
    p.check_dims(inst)?;
    let mut gains: Vec<f64> = inst.d().iter().map(|&d| d as f64).collect();
    for (i, &xi) in p.x().iter().enumerate() {
        if xi != 0.0 {
            for (g, &q) in gains.iter_mut().zip(inst.row(i)) {
                *g += q as f64 * xi;
            }
        }
    }
    let y: Vec<bool> = gains.into_iter().map(|g| g > 0.0).collect();
    let x = optimal_x_for(inst, &y);
    Ok(Solution::evaluated(inst, x, y))
}

/// RxOy: round `x` by the sign of `c_i + sum_j q_ij y_j`, then choose the
/// optimal `y` for that `x`. The result is never below `f(p)`.
pub fn round_x_optimize_y(inst: &Instance, p: &FractionalPoint) -> Result<Solution> {
    p.check_dims(inst)?;
    let x: Vec<bool> = (0..inst.m())
        .map(|i| {
            let inner: f64 = inst
                .row(i)
                .iter()
                .zip(p.y())
                .map(|(&q, &yj)| q as f64 * yj)
                .sum();
            inst.c()[i] as f64 + inner > 0.0
        })
        .collect();
    let y = optimal_y_for(inst, &x);
    Ok(Solution::evaluated(inst, x, y))
}

/// The all-halves point, where the bilinear objective equals the average.
pub fn half_start(m: usize, n: usize) -> FractionalPoint {
    FractionalPoint::new(vec![0.5; m], vec![0.5; n]).expect("1/2 is in [0,1]")
}
