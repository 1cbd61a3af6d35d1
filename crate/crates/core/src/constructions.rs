//! Adversarial instances and reductions: the tight dominance instance, trap
//! instances for the alternating algorithm and for `N^alpha` local search,
//! the PARTITION reduction for medians, the BQP reduction, and zero padding.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::rational::QuarterRational;

/// Padded instances may hold at most this many matrix entries.
pub const MAX_PADDED_ENTRIES: usize = 1 << 26;

/// An instance embedded in the top-left corner of an `ab*m x ab*n` zero
/// instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedInstance {
    pub inner: Instance,
    pub original_m: usize,
    pub original_n: usize,
    pub a: usize,
    pub b: usize,
}

impl PaddedInstance {
    /// The leading `original_m x original_n` block as an instance.
    pub fn original(&self) -> Instance {
        let (m, n) = (self.original_m, self.original_n);
        let rows: Vec<Vec<i64>> = (0..m).map(|i| self.inner.row(i)[..n].to_vec()).collect();
        Instance::from_rows(&rows, self.inner.c()[..m].to_vec(), self.inner.d()[..n].to_vec())
            .expect("a block of a valid instance is valid")
    }
}

fn positive(what: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::invalid(format!("{what} must be positive")));
    }
    Ok(())
}

/// `q_mn = -1`, every other entry zero. Exactly `2^(m+n-2)` solutions have
/// value at most the average.
pub fn tight_instance(m: usize, n: usize) -> Result<Instance> {
    positive("m", m)?;
    positive("n", n)?;
    let mut q = vec![0; m * n];
    q[m * n - 1] = -1;
    Instance::new(m, n, q, vec![0; m], vec![0; n])
}

/// `n x n` with `q_11 = 1`, `q_nn = big_m`. From `x = e_1` (and `y = 0`) the
/// x-first alternating algorithm stops at value 1 while the optimum is
/// `big_m + 1`.
pub fn alternating_trap(n: usize, big_m: i64) -> Result<(Instance, Solution)> {
    if n < 2 {
        return Err(Error::invalid("alternating trap needs n >= 2"));
    }
    if big_m < 1 {
        return Err(Error::invalid("alternating trap needs M >= 1"));
    }
    let mut q = vec![0; n * n];
    q[0] = 1;
    q[n * n - 1] = big_m;
    let inst = Instance::new(n, n, q, vec![0; n], vec![0; n])?;
    let mut x = vec![false; n];
    x[0] = true;
    let start = Solution::evaluated(&inst, x, vec![false; n]);
    Ok((inst, start))
}

/// The `N^alpha` trap with `alpha = n/5`, scaled by `n` so all entries are
/// integers: `6` inside, `-n` on the last row and column, and
/// `(alpha-1)(n-1)*6` in the corner. The start `(e_n, e_n)` is locally
/// optimal for `N^alpha` yet below the average.
pub fn local_search_trap(n: usize) -> Result<(Instance, Solution, usize)> {
    if n < 10 || !n.is_multiple_of(5) {
        return Err(Error::invalid(format!(
            "local search trap needs n a multiple of 5 with n >= 10 (got {n})"
        )));
    }
    let alpha = n / 5;
    let border = -(n as i64);
    let corner = 6 * (alpha as i64 - 1) * (n as i64 - 1);
    let mut q = vec![6; n * n];
    for k in 0..n {
        q[(n - 1) * n + k] = border;
        q[k * n + n - 1] = border;
    }
    q[n * n - 1] = corner;
    let inst = Instance::new(n, n, q, vec![0; n], vec![0; n])?;
    let mut e = vec![false; n];
    e[n - 1] = true;
    let start = Solution::evaluated(&inst, e.clone(), e);
    Ok((inst, start, alpha))
}

/// Closed form of `A - f(start)` for [`local_search_trap`]: the unscaled gap
/// `(0.4n^2 + 11.6n - 12) / 4n` times the scale `n`.
pub fn local_search_trap_gap(n: usize) -> QuarterRational {
    let n = n as i64;
    QuarterRational::new(2 * n * n + 58 * n - 60, 20)
}

/// The PARTITION reduction for medians, scaled by `scale = 1/eps`:
/// `c = 0`, `d_j = scale * a_j`, `q_1j = a_j`, `q_2j = -a_j`. Both medians
/// equal `scale/2 * sum(a)` iff `a` has an equal-sum partition.
///
/// Requires `scale > sum(a)`, which keeps the value blocks of different
/// `y` apart.
pub fn partition_median_instance(a: &[u64], scale: u64) -> Result<Instance> {
    if a.is_empty() {
        return Err(Error::invalid("partition instance needs at least one item"));
    }
    if a.contains(&0) {
        return Err(Error::invalid("partition items must be positive"));
    }
    let total: u128 = a.iter().map(|&v| v as u128).sum();
    if (scale as u128) <= total {
        return Err(Error::invalid(format!(
            "scale {scale} must exceed the item total {total}"
        )));
    }
    let to_i64 = |v: u128| i64::try_from(v).map_err(|_| Error::Overflow);
    let plus: Vec<i64> = a.iter().map(|&v| to_i64(v as u128)).collect::<Result<_>>()?;
    let d: Vec<i64> = a
        .iter()
        .map(|&v| to_i64(v as u128 * scale as u128))
        .collect::<Result<_>>()?;
    let minus: Vec<i64> = plus.iter().map(|v| -v).collect();
    Instance::from_rows(&[plus, minus], vec![0, 0], d)
}

/// The smallest valid `big_m` for [`bqp_to_bbqp`].
pub fn bqp_threshold(qp: &[Vec<i64>], cp: &[i64]) -> i128 {
    let q: i128 = qp.iter().flatten().map(|&v| (v as i128).abs()).sum();
    let c: i128 = cp.iter().map(|&v| (v as i128).abs()).sum();
    1 + q + c
}

/// Reduces `max x'Q'x + c'x` to a bipartite instance representing twice the
/// objective: `Q = 2Q' + 4M I`, `c = d = c' - 2M`. On the diagonal `x = y`
/// the value is `2 (x'Q'x + c'x)`, and a large `M` makes every `x != y`
/// strictly worse than some diagonal solution.
pub fn bqp_to_bbqp(qp: &[Vec<i64>], cp: &[i64], big_m: i64) -> Result<Instance> {
    let n = cp.len();
    if n == 0 {
        return Err(Error::EmptyDimension { m: qp.len(), n });
    }
    if qp.len() != n {
        return Err(Error::DimensionMismatch {
            what: "BQP matrix rows",
            expected: n,
            found: qp.len(),
        });
    }
    let threshold = bqp_threshold(qp, cp);
    if (big_m as i128) < threshold {
        return Err(Error::invalid(format!(
            "M = {big_m} is below the threshold {threshold}"
        )));
    }
    let big = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow);
    let mut rows = Vec::with_capacity(n);
    for (i, row) in qp.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                what: "BQP matrix columns",
                expected: n,
                found: row.len(),
            });
        }
        let out: Vec<i64> = row
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let diag = if i == j { 4 * big_m as i128 } else { 0 };
                big(2 * v as i128 + diag)
            })
            .collect::<Result<_>>()?;
        rows.push(out);
    }
    let linear: Vec<i64> = cp
        .iter()
        .map(|&v| big(v as i128 - 2 * big_m as i128))
        .collect::<Result<_>>()?;
    Instance::from_rows(&rows, linear.clone(), linear)
}

/// Embeds `inst` in an `ab*m x ab*n` instance that is zero outside the
/// leading block. Requires `a > b >= 1` coprime.
pub fn pad_instance(inst: &Instance, a: usize, b: usize) -> Result<PaddedInstance> {
    if b == 0 || a <= b || a.gcd(&b) != 1 {
        return Err(Error::invalid(format!(
            "padding needs coprime a > b >= 1 (got a = {a}, b = {b})"
        )));
    }
    let (m, n) = (inst.m(), inst.n());
    let factor = a.checked_mul(b).ok_or(Error::Overflow)?;
    let big_m = m.checked_mul(factor).ok_or(Error::Overflow)?;
    let big_n = n.checked_mul(factor).ok_or(Error::Overflow)?;
    match big_m.checked_mul(big_n) {
        Some(entries) if entries <= MAX_PADDED_ENTRIES => {}
        _ => {
            return Err(Error::invalid(format!(
                "padded instance {big_m}x{big_n} exceeds {MAX_PADDED_ENTRIES} entries"
            )))
        }
    }
    let mut q = vec![0; big_m * big_n];
    for i in 0..m {
        q[i * big_n..i * big_n + n].copy_from_slice(inst.row(i));
    }
    let mut c = vec![0; big_m];
    c[..m].copy_from_slice(inst.c());
    let mut d = vec![0; big_n];
    d[..n].copy_from_slice(inst.d());
    Ok(PaddedInstance {
        inner: Instance::new(big_m, big_n, q, c, d)?,
        original_m: m,
        original_n: n,
        a,
        b,
    })
}

/// The first `original_m` / `original_n` components of `s`, valued on the
/// original instance.
pub fn recover_solution(p: &PaddedInstance, s: &Solution) -> Result<Solution> {
    if s.x.len() != p.inner.m() {
        return Err(Error::DimensionMismatch {
            what: "x",
            expected: p.inner.m(),
            found: s.x.len(),
        });
    }
    if s.y.len() != p.inner.n() {
        return Err(Error::DimensionMismatch {
            what: "y",
            expected: p.inner.n(),
            found: s.y.len(),
        });
    }
    Solution::new(
        &p.original(),
        s.x[..p.original_m].to_vec(),
        s.y[..p.original_n].to_vec(),
    )
}
