//! Closed-form averages over the solution space, the corner-solution bound,
//! and the four-member complement classes.

use num_bigint::BigInt;

use crate::error::Result;
use crate::instance::{Instance, Solution};
use crate::rational::QuarterRational;

/// Mean objective over all `2^(m+n)` solutions:
/// `(1/4) sum q_ij + (1/2) sum c_i + (1/2) sum d_j`.
pub fn average_value(inst: &Instance) -> QuarterRational {
    QuarterRational::new(inst.marginals().four_times_average(), 4)
}

/// Mean objective over the `(2^m - 1)(2^n - 1)` nontrivial solutions.
pub fn average_nontrivial(inst: &Instance) -> QuarterRational {
    let mg = inst.marginals();
    let (m, n) = (inst.m(), inst.n());
    let one = BigInt::from(1);
    let pow = |k: usize| -> BigInt { &one << k };
    // Total over all solutions minus the trivial ones (x = 0 or y = 0):
    //   2^(m+n-2) alpha + 2^(m-1) (2^n - 1) beta + 2^(n-1) (2^m - 1) gamma
    let numer = pow(m + n - 2) * mg.alpha
        + pow(m - 1) * (pow(n) - 1) * mg.beta
        + pow(n - 1) * (pow(m) - 1) * mg.gamma_total;
    let denom = (pow(m) - 1) * (pow(n) - 1);
    QuarterRational::new(numer, denom)
}

/// `max{alpha + beta + gamma, beta, gamma, 0}`, the best corner value.
pub fn average_upper_bound(inst: &Instance) -> i64 {
    let mg = inst.marginals();
    (mg.alpha + mg.beta + mg.gamma_total)
        .max(mg.beta)
        .max(mg.gamma_total)
        .max(0)
}

/// The four corners in the order `(1,1), (1,0), (0,1), (0,0)`.
pub fn corner_solutions(inst: &Instance) -> [Solution; 4] {
    let (m, n) = (inst.m(), inst.n());
    [(true, true), (true, false), (false, true), (false, false)]
        .map(|(xb, yb)| Solution::evaluated(inst, vec![xb; m], vec![yb; n]))
}

/// The corner with the largest objective (first in corner order on ties).
pub fn best_corner_solution(inst: &Instance) -> Solution {
    let corners = corner_solutions(inst);
    let mut best = 0;
    for k in 1..4 {
        if corners[k].value > corners[best].value {
            best = k;
        }
    }
    corners[best].clone()
}

/// Best solution with `x = 0` or `y = 0`.
pub fn best_trivial_solution(inst: &Instance) -> Solution {
    let (m, n) = (inst.m(), inst.n());
    let y: Vec<bool> = inst.d().iter().map(|&d| d > 0).collect();
    let x: Vec<bool> = inst.c().iter().map(|&c| c > 0).collect();
    let via_y = Solution::evaluated(inst, vec![false; m], y);
    let via_x = Solution::evaluated(inst, x, vec![false; n]);
    if via_x.value > via_y.value {
        via_x
    } else {
        via_y
    }
}

/// `P(x,y) = {(x,y), (x,1-y), (1-x,y), (1-x,1-y)}` in that order. The four
/// values always sum to `4 A(Q,c,d)`.
pub fn complement_class(inst: &Instance, x: &[bool], y: &[bool]) -> Result<[Solution; 4]> {
    inst.check_dims(x.len(), y.len())?;
    let flip = |v: &[bool]| v.iter().map(|&b| !b).collect::<Vec<_>>();
    let (xc, yc) = (flip(x), flip(y));
    Ok([
        Solution::evaluated(inst, x.to_vec(), y.to_vec()),
        Solution::evaluated(inst, x.to_vec(), yc.clone()),
        Solution::evaluated(inst, xc.clone(), y.to_vec()),
        Solution::evaluated(inst, xc, yc),
    ])
}
