//! Rounding algorithms, the alternating algorithm, and neighborhood search.
//!
//! Every threshold uses the strict rule "set to 1 iff the gain is > 0", so
//! ties resolve to 0.

mod alternating;
mod neighborhood;
mod rounding;
mod starts;

pub use alternating::{
    alternating, default_alternating_iters, guaranteed_alternating, FirstSide,
};
pub use neighborhood::{
    best_neighbor, best_neighbor_alpha, best_neighbor_alpha_with, best_neighbor_hk,
    best_neighbor_hk_with, flip_sets, local_search, local_search_with, neighborhood_size,
    NeighborhoodSpec, DEFAULT_LOCAL_SEARCH_ITERS,
};
pub use rounding::{half_start, round_x_optimize_y, round_y_optimize_x};
pub use starts::{ran_open_closed, type1_start, type2_start};

use crate::instance::{Instance, Solution};

/// Outcome of an iterative improvement run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSearchResult {
    pub solution: Solution,
    pub iterations: usize,
    /// No neighbor strictly improves on `solution`.
    pub converged: bool,
}

/// The lexicographically smallest optimal `x` for fixed `y`.
pub fn optimal_x_for(inst: &Instance, y: &[bool]) -> Vec<bool> {
    inst.row_gains(y).into_iter().map(|g| g > 0).collect()
}

/// The lexicographically smallest optimal `y` for fixed `x`.
pub fn optimal_y_for(inst: &Instance, x: &[bool]) -> Vec<bool> {
    inst.column_gains(x).into_iter().map(|g| g > 0).collect()
}

/// Larger value wins; equal values go to the lexicographically smaller
/// `(x, y)` bitstring.
pub(crate) fn better(a: Solution, b: Solution) -> Solution {
    use std::cmp::Ordering::*;
    match a.value.cmp(&b.value) {
        Greater => a,
        Less => b,
        Equal => {
            if (&a.x, &a.y) <= (&b.x, &b.y) {
                a
            } else {
                b
            }
        }
    }
}
