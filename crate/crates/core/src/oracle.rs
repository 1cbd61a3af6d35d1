//! Exhaustive ground truth for small instances.
//!
//! Solutions are indexed by a combined mask `t = (xmask << n) | ymask` where
//! `x_1` is the most significant bit of `xmask` (and likewise for `y`), so
//! numeric order on `t` is lexicographic order on the `(x, y)` bitstrings.
//! The index space is split into blocks of `2^L` consecutive masks; each
//! block is walked in Gray-code order with `O(1)` objective updates per step
//! (a flip of an `x` bit costs `O(n)` but happens in only a `2^-n` fraction
//! of the steps).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::heuristics::{flip_sets, neighborhood_size, NeighborhoodSpec};
use crate::instance::{Instance, Solution};
use crate::rational::QuarterRational;

pub const DEFAULT_ENUMERATION_CAP: usize = 30;
/// Up to `2^GATHER_LIMIT` objective values are collected in memory for the
/// median; beyond that a counting bisection is used.
pub const GATHER_LIMIT: usize = 22;
const BLOCK_BITS: usize = 14;
pub const NEIGHBORHOOD_CAP: u128 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    /// Lexicographically smallest optimal solution.
    pub optimum: Solution,
    pub minimum: i64,
    pub mean: QuarterRational,
    pub nontrivial_mean: QuarterRational,
    /// The `2^(m+n-1)`-th smallest objective value.
    pub theta1: i64,
    /// The `(2^(m+n-1) + 1)`-th smallest objective value.
    pub theta2: i64,
    /// `|{(x,y) : f(x,y) <= A}|`
    pub count_at_most_average: u64,
    pub total_solutions: u64,
}

/// Brute-force enumerator with a cap on `m + n`.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    pub cap: usize,
    pub exec: Exec,
    /// Largest `m + n` for which medians are found by sorting all values.
    pub gather_limit: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator::new(DEFAULT_ENUMERATION_CAP, Exec::default())
    }
}

pub fn enumerate_stats(inst: &Instance) -> Result<EnumerationReport> {
    Enumerator::default().stats(inst)
}

pub fn optimum(inst: &Instance) -> Result<Solution> {
    Enumerator::default().optimum(inst)
}

/// `|{(x,y) : f(x,y) <= f(s)}|`
pub fn dominance_count(inst: &Instance, s: &Solution) -> Result<u64> {
    inst.check_dims(s.x.len(), s.y.len())?;
    Enumerator::default().count_at_most(inst, s.value)
}

#[derive(Clone)]
struct Acc {
    best: (i64, u64),
    min: i64,
    sum: i128,
    at_most_avg: u64,
    nontrivial_sum: i128,
    values: Vec<i64>,
}

impl Enumerator {
    pub fn new(cap: usize, exec: Exec) -> Self {
        Enumerator {
            cap,
            exec,
            gather_limit: GATHER_LIMIT,
        }
    }

    fn check(&self, inst: &Instance) -> Result<usize> {
        let vars = inst.m() + inst.n();
        if vars > self.cap || vars > 62 {
            return Err(Error::EnumerationCap {
                vars,
                cap: self.cap.min(62),
            });
        }
        Ok(vars)
    }

    /// Folds `visit(acc, value, mask)` over every solution.
    fn fold<A, I, V, R>(&self, inst: &Instance, identity: I, visit: V, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, i64, u64) + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let (m, n) = (inst.m(), inst.n());
        let vars = m + n;
        let block = BLOCK_BITS.min(vars);
        let tasks = 1u64 << (vars - block);
        exec::fold_tasks(
            self.exec,
            tasks,
            &identity,
            |mut acc, task| {
                let start = task << block;
                let mut x = mask_bits(start >> n, m);
                let mut y = mask_bits(start & low_mask(n), n);
                let mut gains = inst.column_gains(&x);
                let mut value = inst.evaluate_unchecked(&x, &y);
                let mut mask = start;
                visit(&mut acc, value, mask);
                for step in 1u64..(1u64 << block) {
                    let bit = step.trailing_zeros() as usize;
                    if bit < n {
                        let j = n - 1 - bit;
                        if y[j] {
                            value -= gains[j];
                        } else {
                            value += gains[j];
                        }
                        y[j] = !y[j];
                    } else {
                        let i = m - 1 - (bit - n);
                        let row = inst.row(i);
                        let gain = inst.c()[i]
                            + row
                                .iter()
                                .zip(&y)
                                .filter(|(_, &b)| b)
                                .map(|(q, _)| q)
                                .sum::<i64>();
                        if x[i] {
                            value -= gain;
                            for (g, q) in gains.iter_mut().zip(row) {
                                *g -= q;
                            }
                        } else {
                            value += gain;
                            for (g, q) in gains.iter_mut().zip(row) {
                                *g += q;
                            }
                        }
                        x[i] = !x[i];
                    }
                    mask ^= 1u64 << bit;
                    visit(&mut acc, value, mask);
                }
                acc
            },
            reduce,
        )
    }

    pub fn stats(&self, inst: &Instance) -> Result<EnumerationReport> {
        let vars = self.check(inst)?;
        let n = inst.n();
        let four_avg = inst.marginals().four_times_average();
        let gather = vars <= self.gather_limit;
        let ymask_all = low_mask(n);
        let acc = self.fold(
            inst,
            || Acc {
                best: (i64::MIN, 0),
                min: i64::MAX,
                sum: 0,
                at_most_avg: 0,
                nontrivial_sum: 0,
                values: Vec::new(),
            },
            |acc, value, mask| {
                if value > acc.best.0 || (value == acc.best.0 && mask < acc.best.1) {
                    acc.best = (value, mask);
                }
                acc.min = acc.min.min(value);
                acc.sum += value as i128;
                if 4 * value as i128 <= four_avg {
                    acc.at_most_avg += 1;
                }
                if mask >> n != 0 && mask & ymask_all != 0 {
                    acc.nontrivial_sum += value as i128;
                }
                if gather {
                    acc.values.push(value);
                }
            },
            |mut a, b| {
                if b.best.0 > a.best.0 || (b.best.0 == a.best.0 && b.best.1 < a.best.1) {
                    a.best = b.best;
                }
                a.min = a.min.min(b.min);
                a.sum += b.sum;
                a.at_most_avg += b.at_most_avg;
                a.nontrivial_sum += b.nontrivial_sum;
                a.values.extend(b.values);
                a
            },
        );
        let total = 1u64 << vars;
        let half = total / 2;
        let (theta1, theta2) = if gather {
            let mut values = acc.values;
            values.sort_unstable();
            (values[half as usize - 1], values[half as usize])
        } else {
            (
                self.kth_smallest(inst, half, acc.min, acc.best.0),
                self.kth_smallest(inst, half + 1, acc.min, acc.best.0),
            )
        };
        let nontrivial_count =
            ((BigInt::from(1) << inst.m()) - 1u32) * ((BigInt::from(1) << n) - 1u32);
        Ok(EnumerationReport {
            optimum: solution_from_mask(inst, acc.best.1),
            minimum: acc.min,
            mean: QuarterRational::new(acc.sum, BigInt::from(total)),
            nontrivial_mean: QuarterRational::new(acc.nontrivial_sum, nontrivial_count),
            theta1,
            theta2,
            count_at_most_average: acc.at_most_avg,
            total_solutions: total,
        })
    }

    /// Smallest `v` with `|{f <= v}| >= k`, by bisection on the value range.
    fn kth_smallest(&self, inst: &Instance, k: u64, lo: i64, hi: i64) -> i64 {
        let (mut lo, mut hi) = (lo, hi);
        while lo < hi {
            let mid = ((lo as i128 + hi as i128).div_euclid(2)) as i64;
            if self.count_unchecked(inst, mid) >= k {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    pub fn optimum(&self, inst: &Instance) -> Result<Solution> {
        self.check(inst)?;
        let best = self.fold(
            inst,
            || (i64::MIN, 0u64),
            |acc, value, mask| {
                if value > acc.0 || (value == acc.0 && mask < acc.1) {
                    *acc = (value, mask);
                }
            },
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
        Ok(solution_from_mask(inst, best.1))
    }

    /// `|{(x,y) : f(x,y) <= threshold}|`
    pub fn count_at_most(&self, inst: &Instance, threshold: i64) -> Result<u64> {
        self.check(inst)?;
        Ok(self.count_unchecked(inst, threshold))
    }

    fn count_unchecked(&self, inst: &Instance, threshold: i64) -> u64 {
        self.fold(
            inst,
            || 0u64,
            |acc, value, _| {
                if value <= threshold {
                    *acc += 1;
                }
            },
            |a, b| a + b,
        )
    }

    /// All objective values ordered by combined mask.
    pub fn all_values(&self, inst: &Instance) -> Result<Vec<i64>> {
        let vars = self.check(inst)?;
        if vars > GATHER_LIMIT + 2 {
            return Err(Error::EnumerationCap {
                vars,
                cap: GATHER_LIMIT + 2,
            });
        }
        let mut pairs = self.fold(
            inst,
            Vec::new,
            |acc: &mut Vec<(u64, i64)>, value, mask| acc.push((mask, value)),
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        pairs.sort_unstable_by_key(|p| p.0);
        Ok(pairs.into_iter().map(|p| p.1).collect())
    }

    /// Exhaustive check that no member of the neighborhood of `s` is strictly
    /// better. Members are generated literally and evaluated directly.
    pub fn is_local_optimum(&self, inst: &Instance, s: &Solution, spec: NeighborhoodSpec) -> Result<bool> {
        inst.check_dims(s.x.len(), s.y.len())?;
        spec.validate(inst)?;
        let size = neighborhood_size(inst, spec);
        if size > NEIGHBORHOOD_CAP {
            return Err(Error::NeighborhoodCap {
                size,
                cap: NEIGHBORHOOD_CAP,
            });
        }
        let value = inst.evaluate_unchecked(&s.x, &s.y);
        let (m, n) = (inst.m(), inst.n());
        let flip = |v: &[bool], set: &[usize]| {
            let mut out = v.to_vec();
            for &i in set {
                out[i] = !out[i];
            }
            out
        };
        let no_better = |xs: &[Vec<bool>], ys: &[Vec<bool>]| -> bool {
            exec::reduce_slice(
                self.exec,
                xs,
                |x| ys.iter().all(|y| inst.evaluate_unchecked(x, y) <= value),
                |a, b| a && b,
            )
            .unwrap_or(true)
        };
        let ok = match spec {
            NeighborhoodSpec::HK { h, k } => {
                let xs: Vec<Vec<bool>> = flip_sets(m, h).iter().map(|f| flip(&s.x, f)).collect();
                let ys: Vec<Vec<bool>> = flip_sets(n, k).iter().map(|f| flip(&s.y, f)).collect();
                no_better(&xs, &ys)
            }
            NeighborhoodSpec::Alpha(a) => {
                let all_x: Vec<Vec<bool>> = (0..1u64 << m).map(|t| mask_bits(t, m)).collect();
                let all_y: Vec<Vec<bool>> = (0..1u64 << n).map(|t| mask_bits(t, n)).collect();
                let near_x: Vec<Vec<bool>> = flip_sets(m, a).iter().map(|f| flip(&s.x, f)).collect();
                let near_y: Vec<Vec<bool>> = flip_sets(n, a).iter().map(|f| flip(&s.y, f)).collect();
                no_better(&all_x, &near_y) && no_better(&near_x, &all_y)
            }
        };
        Ok(ok)
    }
}

pub fn is_local_optimum(inst: &Instance, s: &Solution, spec: NeighborhoodSpec) -> Result<bool> {
    Enumerator::default().is_local_optimum(inst, s, spec)
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Bits of `mask` as a vector, most significant first.
pub fn mask_bits(mask: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> (len - 1 - i) & 1 == 1).collect()
}

fn solution_from_mask(inst: &Instance, mask: u64) -> Solution {
    let n = inst.n();
    let x = mask_bits(mask >> n, inst.m());
    let y = mask_bits(mask & low_mask(n), n);
    Solution::evaluated(inst, x, y)
}

/// Does some subset of `a` sum to exactly half the total?
pub fn brute_force_partition_check(a: &[u64]) -> Result<bool> {
    if a.len() > 24 {
        return Err(Error::invalid(format!(
            "partition check supports at most 24 items (got {})",
            a.len()
        )));
    }
    let total: u128 = a.iter().map(|&v| v as u128).sum();
    if total % 2 == 1 {
        return Ok(false);
    }
    let target = total / 2;
    let mut sum = 0u128;
    let mut chosen = vec![false; a.len()];
    if target == 0 {
        return Ok(true);
    }
    for step in 1u64..(1u64 << a.len()) {
        let bit = step.trailing_zeros() as usize;
        if chosen[bit] {
            sum -= a[bit] as u128;
        } else {
            sum += a[bit] as u128;
        }
        chosen[bit] = !chosen[bit];
        if sum == target {
            return Ok(true);
        }
    }
    Ok(false)
}
