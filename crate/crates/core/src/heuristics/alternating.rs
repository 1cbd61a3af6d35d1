use crate::error::Result;
use crate::instance::{Instance, Solution};

use super::{optimal_x_for, optimal_y_for, LocalSearchResult};

/// Which side is held fixed in the first half-step.
///
/// `X` ("x-first") keeps the starting `x` and re-optimizes `y` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstSide {
    X,
    Y,
}

pub fn default_alternating_iters(inst: &Instance) -> usize {
    10 * (inst.m() + inst.n())
}

/// The alternating algorithm.
///
/// Each round performs two half-steps; a half-step replaces one side by its
/// optimal response to the other and is kept only if it strictly improves
/// the objective. The run stops after the first round without a strict
/// improvement, at which point both sides are mutual best responses (a local
/// optimum for the neighborhood that re-optimizes one whole side).
pub fn alternating(
    inst: &Instance,
    start: &Solution,
    first: FirstSide,
    max_iters: usize,
) -> Result<LocalSearchResult> {
    inst.check_dims(start.x.len(), start.y.len())?;
    let mut current = Solution::evaluated(inst, start.x.clone(), start.y.clone());
    let order = match first {
        FirstSide::X => [FirstSide::X, FirstSide::Y],
        FirstSide::Y => [FirstSide::Y, FirstSide::X],
    };
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let before = current.value;
        for fixed in order {
            let candidate = match fixed {
                FirstSide::X => {
                    let y = optimal_y_for(inst, &current.x);
                    Solution::evaluated(inst, current.x.clone(), y)
                }
                FirstSide::Y => {
                    let x = optimal_x_for(inst, &current.y);
                    Solution::evaluated(inst, x, current.y.clone())
                }
            };
            if candidate.value > current.value {
                current = candidate;
            }
        }
        if current.value == before {
            return Ok(LocalSearchResult {
                solution: current,
                iterations,
                converged: true,
            });
        }
    }
    Ok(LocalSearchResult {
        solution: current,
        iterations,
        converged: false,
    })
}

/// Best of the x-first alternating runs from `(1^m, 1^n)` and `(0^m, 0^n)`.
/// Never below any corner value, hence never below the average.
pub fn guaranteed_alternating(inst: &Instance) -> Solution {
    let (m, n) = (inst.m(), inst.n());
    let iters = default_alternating_iters(inst);
    let ones = Solution::evaluated(inst, vec![true; m], vec![true; n]);
    let zeros = Solution::evaluated(inst, vec![false; m], vec![false; n]);
    let a = alternating(inst, &ones, FirstSide::X, iters)
        .expect("dimensions match")
        .solution;
    let b = alternating(inst, &zeros, FirstSide::X, iters)
        .expect("dimensions match")
        .solution;
    if b.value > a.value {
        b
    } else {
        a
    }
}
