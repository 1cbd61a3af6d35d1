//! Flip neighborhoods `N^{h,k}` and `N^alpha = N^{m,alpha} U N^{alpha,n}`.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::instance::{Instance, Solution};

use super::{better, optimal_x_for, optimal_y_for, LocalSearchResult};

pub const DEFAULT_LOCAL_SEARCH_ITERS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighborhoodSpec {
    /// At most `h` flips in `x` and at most `k` flips in `y`.
    HK { h: usize, k: usize },
    /// Any `x` with at most `alpha` flips in `y`, or any `y` with at most
    /// `alpha` flips in `x`.
    Alpha(usize),
}

impl NeighborhoodSpec {
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        match *self {
            NeighborhoodSpec::HK { h, k } if h > inst.m() || k > inst.n() => Err(Error::invalid(
                format!("N^(h,k) needs h <= m and k <= n (h={h}, k={k}, m={}, n={})", inst.m(), inst.n()),
            )),
            NeighborhoodSpec::Alpha(a) if a > inst.m().max(inst.n()) => Err(Error::invalid(
                format!("N^alpha needs alpha <= max(m, n) (alpha={a})"),
            )),
            _ => Ok(()),
        }
    }
}

fn binomial_prefix(len: usize, max: usize) -> u128 {
    let mut total = 0u128;
    let mut term = 1u128;
    for j in 0..=max.min(len) {
        total += term;
        term = term * (len - j) as u128 / (j + 1) as u128;
    }
    total
}

/// `|N|` by the counting identities (saturating for huge spaces).
pub fn neighborhood_size(inst: &Instance, spec: NeighborhoodSpec) -> u128 {
    let (m, n) = (inst.m(), inst.n());
    match spec {
        NeighborhoodSpec::HK { h, k } => binomial_prefix(m, h).saturating_mul(binomial_prefix(n, k)),
        NeighborhoodSpec::Alpha(a) => {
            let pow = |e: usize| if e >= 127 { u128::MAX } else { 1u128 << e };
            let (bm, bn) = (binomial_prefix(m, a), binomial_prefix(n, a));
            pow(m)
                .saturating_mul(bn)
                .saturating_add(pow(n).saturating_mul(bm))
                .saturating_sub(bm * bn)
        }
    }
}

/// All index sets of size `0..=max` drawn from `0..len`, by size and then
/// lexicographically.
pub fn flip_sets(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=max.min(len) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(combo.clone());
            // advance to the next combination
            let mut pos = size;
            while pos > 0 && combo[pos - 1] == len - size + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            combo[pos - 1] += 1;
            for t in pos..size {
                combo[t] = combo[t - 1] + 1;
            }
        }
    }
    out
}

fn flipped(v: &[bool], set: &[usize]) -> Vec<bool> {
    let mut out = v.to_vec();
    for &i in set {
        out[i] = !out[i];
    }
    out
}

/// Best member of `N^{h,k}(s)`; ties go to the lexicographically smallest
/// `(x, y)`.
pub fn best_neighbor_hk(inst: &Instance, s: &Solution, h: usize, k: usize) -> Result<Solution> {
    best_neighbor_hk_with(inst, s, h, k, Exec::default())
}

pub fn best_neighbor_hk_with(
    inst: &Instance,
    s: &Solution,
    h: usize,
    k: usize,
    exec: Exec,
) -> Result<Solution> {
    inst.check_dims(s.x.len(), s.y.len())?;
    NeighborhoodSpec::HK { h, k }.validate(inst)?;
    let x_sets = flip_sets(inst.m(), h);
    let y_sets = flip_sets(inst.n(), k);
    let best = exec::reduce_slice(
        exec,
        &x_sets,
        |fx| best_with_x_flips(inst, s, fx, &y_sets),
        better,
    );
    Ok(best.expect("the empty flip set is always present"))
}

fn best_with_x_flips(inst: &Instance, s: &Solution, fx: &[usize], y_sets: &[Vec<usize>]) -> Solution {
    let x = flipped(&s.x, fx);
    let gains = inst.column_gains(&x);
    let base: i64 = x
        .iter()
        .zip(inst.c())
        .filter(|(&b, _)| b)
        .map(|(_, c)| c)
        .sum::<i64>()
        + gains
            .iter()
            .zip(&s.y)
            .filter(|(_, &b)| b)
            .map(|(g, _)| g)
            .sum::<i64>();
    let mut best_value = i64::MIN;
    let mut best_y: Vec<bool> = Vec::new();
    for fy in y_sets {
        let value = base
            + fy
                .iter()
                .map(|&j| if s.y[j] { -gains[j] } else { gains[j] })
                .sum::<i64>();
        if value > best_value {
            best_value = value;
            best_y = flipped(&s.y, fy);
        } else if value == best_value {
            let y = flipped(&s.y, fy);
            if y < best_y {
                best_y = y;
            }
        }
    }
    Solution {
        x,
        y: best_y,
        value: best_value,
    }
}

/// Best member of `N^alpha(s)`, searched side-exactly: each flip set on the
/// restricted side is completed by the optimal response on the free side.
pub fn best_neighbor_alpha(inst: &Instance, s: &Solution, alpha: usize) -> Result<Solution> {
    best_neighbor_alpha_with(inst, s, alpha, Exec::default())
}

enum AlphaTask<'a> {
    /// `y` within `alpha` flips, `x` free.
    FlipY(&'a [usize]),
    /// `x` within `alpha` flips, `y` free.
    FlipX(&'a [usize]),
}

pub fn best_neighbor_alpha_with(
    inst: &Instance,
    s: &Solution,
    alpha: usize,
    exec: Exec,
) -> Result<Solution> {
    inst.check_dims(s.x.len(), s.y.len())?;
    NeighborhoodSpec::Alpha(alpha).validate(inst)?;
    let y_sets = flip_sets(inst.n(), alpha);
    let x_sets = flip_sets(inst.m(), alpha);
    let tasks: Vec<AlphaTask> = y_sets
        .iter()
        .map(|f| AlphaTask::FlipY(f))
        .chain(x_sets.iter().map(|f| AlphaTask::FlipX(f)))
        .collect();
    let best = exec::reduce_slice(
        exec,
        &tasks,
        |task| match task {
            AlphaTask::FlipY(f) => {
                let y = flipped(&s.y, f);
                let x = optimal_x_for(inst, &y);
                Solution::evaluated(inst, x, y)
            }
            AlphaTask::FlipX(f) => {
                let x = flipped(&s.x, f);
                let y = optimal_y_for(inst, &x);
                Solution::evaluated(inst, x, y)
            }
        },
        better,
    );
    Ok(best.expect("the empty flip set is always present"))
}

/// Best neighbor under `spec`.
pub fn best_neighbor(inst: &Instance, s: &Solution, spec: NeighborhoodSpec, exec: Exec) -> Result<Solution> {
    match spec {
        NeighborhoodSpec::HK { h, k } => best_neighbor_hk_with(inst, s, h, k, exec),
        NeighborhoodSpec::Alpha(a) => best_neighbor_alpha_with(inst, s, a, exec),
    }
}

/// Best-improvement local search. `iterations` counts improving moves.
pub fn local_search(
    inst: &Instance,
    start: &Solution,
    spec: NeighborhoodSpec,
    max_iters: usize,
) -> Result<LocalSearchResult> {
    local_search_with(inst, start, spec, max_iters, Exec::default())
}

pub fn local_search_with(
    inst: &Instance,
    start: &Solution,
    spec: NeighborhoodSpec,
    max_iters: usize,
    exec: Exec,
) -> Result<LocalSearchResult> {
    inst.check_dims(start.x.len(), start.y.len())?;
    spec.validate(inst)?;
    let mut current = Solution::evaluated(inst, start.x.clone(), start.y.clone());
    let mut iterations = 0;
    while iterations < max_iters {
        let next = best_neighbor(inst, &current, spec, exec)?;
        if next.value <= current.value {
            return Ok(LocalSearchResult {
                solution: current,
                iterations,
                converged: true,
            });
        }
        current = next;
        iterations += 1;
    }
    // one more look decides whether the cap cut the run short
    let converged = best_neighbor(inst, &current, spec, exec)?.value <= current.value;
    Ok(LocalSearchResult {
        solution: current,
        iterations,
        converged,
    })
}
