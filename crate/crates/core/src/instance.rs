//! Problem data, solutions and exact objective evaluation.
//!
//! An instance is the triple `(Q, c, d)` with objective
//! `f(x, y) = x^T Q y + c x + d y` over binary `x` (length `m`) and `y`
//! (length `n`). Every coefficient is an `i64`, and construction rejects data
//! whose total absolute mass does not fit in 64 bits, so every objective
//! value and every row/column marginal is exact in `i64`.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    m: usize,
    n: usize,
    /// Row-major `m x n`.
    q: Vec<i64>,
    c: Vec<i64>,
    d: Vec<i64>,
    name: Option<String>,
}

impl Instance {
    pub fn new(m: usize, n: usize, q: Vec<i64>, c: Vec<i64>, d: Vec<i64>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyDimension { m, n });
        }
        if q.len() != m * n {
            return Err(Error::DimensionMismatch {
                what: "Q",
                expected: m * n,
                found: q.len(),
            });
        }
        if c.len() != m {
            return Err(Error::DimensionMismatch {
                what: "c",
                expected: m,
                found: c.len(),
            });
        }
        if d.len() != n {
            return Err(Error::DimensionMismatch {
                what: "d",
                expected: n,
                found: d.len(),
            });
        }
        let mass: i128 = q
            .iter()
            .chain(c.iter())
            .chain(d.iter())
            .map(|v| (*v as i128).abs())
            .sum();
        if mass > i64::MAX as i128 {
            return Err(Error::Overflow);
        }
        Ok(Instance {
            m,
            n,
            q,
            c,
            d,
            name: None,
        })
    }

    /// Builds an instance from a list of rows.
    pub fn from_rows(rows: &[Vec<i64>], c: Vec<i64>, d: Vec<i64>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "Q row",
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Instance::new(m, n, rows.concat(), c, d)
    }

    /// The homogeneous instance `(Q, 0, 0)`.
    pub fn homogeneous(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        Instance::from_rows(rows, vec![0; m], vec![0; n])
    }

    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        Instance::new(m, n, vec![0; m * n], vec![0; m], vec![0; n])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn q(&self, i: usize, j: usize) -> i64 {
        self.q[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[i64] {
        &self.q[i * self.n..(i + 1) * self.n]
    }

    pub fn q_entries(&self) -> &[i64] {
        &self.q
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub(crate) fn check_dims(&self, x_len: usize, y_len: usize) -> Result<()> {
        if x_len != self.m {
            return Err(Error::DimensionMismatch {
                what: "x",
                expected: self.m,
                found: x_len,
            });
        }
        if y_len != self.n {
            return Err(Error::DimensionMismatch {
                what: "y",
                expected: self.n,
                found: y_len,
            });
        }
        Ok(())
    }

    /// `f(x, y)`. Fails only on a dimension mismatch.
    pub fn evaluate(&self, x: &[bool], y: &[bool]) -> Result<i64> {
        self.check_dims(x.len(), y.len())?;
        Ok(self.evaluate_unchecked(x, y))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[bool], y: &[bool]) -> i64 {
        let mut value = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if !xi {
                continue;
            }
            value += self.c[i];
            for (q, &yj) in self.row(i).iter().zip(y) {
                if yj {
                    value += q;
                }
            }
        }
        for (dj, &yj) in self.d.iter().zip(y) {
            if yj {
                value += dj;
            }
        }
        value
    }

    /// `d_j + sum_i q_ij x_i` for every column: the gain of setting `y_j = 1`
    /// with `x` fixed.
    pub fn column_gains(&self, x: &[bool]) -> Vec<i64> {
        let mut gains = self.d.clone();
        for (i, &xi) in x.iter().enumerate() {
            if xi {
                for (g, q) in gains.iter_mut().zip(self.row(i)) {
                    *g += q;
                }
            }
        }
        gains
    }

    /// `c_i + sum_j q_ij y_j` for every row.
    pub fn row_gains(&self, y: &[bool]) -> Vec<i64> {
        (0..self.m)
            .map(|i| {
                self.c[i]
                    + self
                        .row(i)
                        .iter()
                        .zip(y)
                        .filter(|(_, &yj)| yj)
                        .map(|(q, _)| q)
                        .sum::<i64>()
            })
            .collect()
    }

    pub fn marginals(&self) -> Marginals {
        let gamma: Vec<i64> = (0..self.m)
            .map(|i| self.c[i] + self.row(i).iter().sum::<i64>())
            .collect();
        let mut delta = self.d.clone();
        for i in 0..self.m {
            for (dj, q) in delta.iter_mut().zip(self.row(i)) {
                *dj += q;
            }
        }
        Marginals {
            gamma,
            delta,
            alpha: self.q.iter().sum(),
            beta: self.c.iter().sum(),
            gamma_total: self.d.iter().sum(),
        }
    }

    /// The transpose instance `(Q^T, d, c)`, with `f^T(y, x) = f(x, y)`.
    pub fn transpose(&self) -> Instance {
        let mut q = Vec::with_capacity(self.q.len());
        for j in 0..self.n {
            for i in 0..self.m {
                q.push(self.q(i, j));
            }
        }
        Instance {
            m: self.n,
            n: self.m,
            q,
            c: self.d.clone(),
            d: self.c.clone(),
            name: self.name.clone(),
        }
    }

    /// Parses the whitespace-separated text format (`#` starts a comment).
    pub fn parse(text: &str) -> Result<Instance> {
        let mut tokens = text.lines().enumerate().flat_map(|(ln, line)| {
            let content = line.split('#').next().unwrap_or("");
            content.split_whitespace().map(move |tok| (ln + 1, tok))
        });
        let mut last_line = 0usize;
        let mut next_int = |what: &str| -> Result<i64> {
            match tokens.next() {
                Some((ln, tok)) => {
                    last_line = ln;
                    tok.parse::<i64>()
                        .map_err(|_| Error::parse(ln, format!("expected integer for {what}, found `{tok}`")))
                }
                None => Err(Error::parse(last_line, format!("unexpected end of input reading {what}"))),
            }
        };
        let m = next_int("m")?;
        let n = next_int("n")?;
        if m <= 0 || n <= 0 {
            return Err(Error::EmptyDimension {
                m: m.max(0) as usize,
                n: n.max(0) as usize,
            });
        }
        let (m, n) = (m as usize, n as usize);
        let mut q = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                q.push(next_int(&format!("q[{}][{}]", i + 1, j + 1))?);
            }
        }
        let c = (0..m)
            .map(|i| next_int(&format!("c[{}]", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let d = (0..n)
            .map(|j| next_int(&format!("d[{}]", j + 1)))
            .collect::<Result<Vec<_>>>()?;
        if let Some((ln, tok)) = tokens.next() {
            return Err(Error::parse(ln, format!("trailing token `{tok}` after d")));
        }
        Instance::new(m, n, q, c, d)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Instance> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        let inst = Instance::parse(&text)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(inst.with_name(name))
    }

    /// Renders the text format, preceded by `header` lines as `#` comments.
    pub fn to_text(&self, header: &[String]) -> String {
        let mut out = String::new();
        for line in header {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", self.m, self.n));
        for i in 0..self.m {
            out.push_str(&join(self.row(i)));
            out.push('\n');
        }
        out.push_str(&join(&self.c));
        out.push('\n');
        out.push_str(&join(&self.d));
        out.push('\n');
        out
    }
}

fn join(values: &[i64]) -> String {
    values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Row/column sums of the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marginals {
    /// `c_i + sum_j q_ij`
    pub gamma: Vec<i64>,
    /// `d_j + sum_i q_ij`
    pub delta: Vec<i64>,
    /// `sum_ij q_ij`
    pub alpha: i64,
    /// `sum_i c_i`
    pub beta: i64,
    /// `sum_j d_j`
    pub gamma_total: i64,
}

impl Marginals {
    /// `4 A(Q, c, d) = alpha + 2 beta + 2 gamma`.
    pub fn four_times_average(&self) -> i128 {
        self.alpha as i128 + 2 * self.beta as i128 + 2 * self.gamma_total as i128
    }
}

/// A binary pair with its cached objective value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    pub x: Vec<bool>,
    pub y: Vec<bool>,
    pub value: i64,
}

impl Solution {
    pub fn new(inst: &Instance, x: Vec<bool>, y: Vec<bool>) -> Result<Self> {
        let value = inst.evaluate(&x, &y)?;
        Ok(Solution { x, y, value })
    }

    pub(crate) fn evaluated(inst: &Instance, x: Vec<bool>, y: Vec<bool>) -> Self {
        let value = inst.evaluate_unchecked(&x, &y);
        Solution { x, y, value }
    }

    pub fn zeros(inst: &Instance) -> Self {
        Solution::evaluated(inst, vec![false; inst.m()], vec![false; inst.n()])
    }

    /// Trivial iff `x` or `y` is all-zero (the quadratic term vanishes).
    pub fn is_trivial(&self) -> bool {
        !self.x.iter().any(|&b| b) || !self.y.iter().any(|&b| b)
    }

    /// Parses `x:<bits> y:<bits> [value:<int>]` and evaluates against
    /// `inst`. A supplied value must match.
    pub fn parse(inst: &Instance, text: &str) -> Result<Self> {
        let mut x = None;
        let mut y = None;
        let mut value = None;
        for field in text.split_whitespace() {
            let (key, body) = field
                .split_once(':')
                .ok_or_else(|| Error::parse(1, format!("expected key:value, found `{field}`")))?;
            match key {
                "x" => x = Some(parse_bits(body)?),
                "y" => y = Some(parse_bits(body)?),
                "value" => {
                    value = Some(body.parse::<i64>().map_err(|_| {
                        Error::parse(1, format!("invalid value `{body}`"))
                    })?)
                }
                other => return Err(Error::parse(1, format!("unknown field `{other}`"))),
            }
        }
        let x = x.ok_or_else(|| Error::parse(1, "missing x:"))?;
        let y = y.ok_or_else(|| Error::parse(1, "missing y:"))?;
        let sol = Solution::new(inst, x, y)?;
        if let Some(v) = value {
            if v != sol.value {
                return Err(Error::invalid(format!(
                    "stated value {v} differs from evaluated value {}",
                    sol.value
                )));
            }
        }
        Ok(sol)
    }
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::parse(1, format!("invalid bit `{other}`"))),
        })
        .collect()
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x:{} y:{} value:{}",
            bits_to_string(&self.x),
            bits_to_string(&self.y),
            self.value
        )
    }
}
