//! Seeded instance families: uniform random data plus graph-derived
//! encodings (biclique, bipartite max-cut, induced subgraph, rank-one
//! factorization).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Biclique,
    MaxCut,
    InducedSubgraph,
    Factorization,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Random,
        Family::Biclique,
        Family::MaxCut,
        Family::InducedSubgraph,
        Family::Factorization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Biclique => "biclique",
            Family::MaxCut => "maxcut",
            Family::InducedSubgraph => "induced-subgraph",
            Family::Factorization => "factorization",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    /// Inclusive range for entries (random family) or edge weights.
    pub value_range: (i64, i64),
    /// Edge probability for graph families, `1`-probability for factorization.
    pub density: f64,
    /// Biclique non-edge penalty; defaults to `1 + m*n*max|weight|`.
    pub penalty: Option<i64>,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(family: Family, m: usize, n: usize, seed: u64) -> Self {
        let value_range = match family {
            Family::Random => (-100, 100),
            Family::InducedSubgraph => (-10, 10),
            _ => (1, 10),
        };
        GeneratorConfig {
            family,
            m,
            n,
            value_range,
            density: 0.5,
            penalty: None,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::EmptyDimension {
                m: self.m,
                n: self.n,
            });
        }
        let (lo, hi) = self.value_range;
        if lo > hi {
            return Err(Error::invalid(format!("empty value range [{lo}, {hi}]")));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::invalid(format!(
                "density {} is outside [0, 1]",
                self.density
            )));
        }
        Ok(())
    }

    fn max_abs_weight(&self) -> i64 {
        self.value_range.0.abs().max(self.value_range.1.abs())
    }

    /// Smallest penalty that keeps every non-edge out of an optimal biclique.
    pub fn default_penalty(&self) -> Result<i64> {
        (self.m as i64)
            .checked_mul(self.n as i64)
            .and_then(|mn| mn.checked_mul(self.max_abs_weight()))
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::Overflow)
    }

    /// Parameters as `key=value` pairs, for instance file headers.
    pub fn describe(&self) -> String {
        let mut out = format!(
            "family={} m={} n={} range={}..{} density={} seed={}",
            self.family, self.m, self.n, self.value_range.0, self.value_range.1, self.density, self.seed
        );
        if let Some(p) = self.penalty {
            out.push_str(&format!(" penalty={p}"));
        }
        out
    }
}

/// Dispatches on the family.
pub fn generate(cfg: &GeneratorConfig) -> Result<Instance> {
    match cfg.family {
        Family::Random => random_instance(cfg),
        _ => structured_instance(cfg),
    }
}

/// `q`, `c`, `d` i.i.d. uniform over the value range, drawn in that order
/// (`q` row-major).
pub fn random_instance(cfg: &GeneratorConfig) -> Result<Instance> {
    if cfg.family != Family::Random {
        return Err(Error::invalid(format!(
            "random_instance called with family {}",
            cfg.family
        )));
    }
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.value_range;
    let mut draw = |len: usize| -> Vec<i64> { (0..len).map(|_| rng.random_range(lo..=hi)).collect() };
    let q = draw(cfg.m * cfg.n);
    let c = draw(cfg.m);
    let d = draw(cfg.n);
    Instance::new(cfg.m, cfg.n, q, c, d)
}

/// A random bipartite graph as an `m x n` weight matrix; absent edges are
/// `None`.
fn sample_graph(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Vec<Vec<Option<i64>>> {
    let (lo, hi) = cfg.value_range;
    (0..cfg.m)
        .map(|_| {
            (0..cfg.n)
                .map(|_| {
                    // always draw both so the stream does not depend on density
                    let edge = rng.random_bool(cfg.density);
                    let w = rng.random_range(lo..=hi);
                    edge.then_some(w)
                })
                .collect()
        })
        .collect()
}

pub fn structured_instance(cfg: &GeneratorConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.family {
        Family::Random => Err(Error::invalid(
            "structured_instance called with the random family",
        )),
        Family::Biclique => {
            let penalty = match cfg.penalty {
                Some(p) if p < 1 => return Err(Error::invalid("penalty must be positive")),
                Some(p) => p,
                None => cfg.default_penalty()?,
            };
            biclique_from_graph(&sample_graph(cfg, &mut rng), penalty)
        }
        Family::MaxCut => {
            if cfg.value_range.0 < 0 {
                return Err(Error::invalid("max-cut weights must be nonnegative"));
            }
            let w: Vec<Vec<i64>> = sample_graph(cfg, &mut rng)
                .into_iter()
                .map(|row| row.into_iter().map(|e| e.unwrap_or(0)).collect())
                .collect();
            maxcut_from_weights(&w)
        }
        Family::InducedSubgraph => {
            let rows: Vec<Vec<i64>> = sample_graph(cfg, &mut rng)
                .into_iter()
                .map(|row| row.into_iter().map(|e| e.unwrap_or(0)).collect())
                .collect();
            Instance::homogeneous(&rows)
        }
        Family::Factorization => {
            let h: Vec<Vec<bool>> = (0..cfg.m)
                .map(|_| (0..cfg.n).map(|_| rng.random_bool(cfg.density)).collect())
                .collect();
            factorization_from_matrix(&h)
        }
    }
}

/// `q_ij` is the edge weight, or `-penalty` for a non-edge; `c = d = 0`.
pub fn biclique_from_graph(graph: &[Vec<Option<i64>>], penalty: i64) -> Result<Instance> {
    let rows: Vec<Vec<i64>> = graph
        .iter()
        .map(|row| row.iter().map(|e| e.unwrap_or(-penalty)).collect())
        .collect();
    Instance::homogeneous(&rows)
}

/// `Q = -2W`, `c_i = sum_j w_ij`, `d_j = sum_i w_ij`, so that `f(x, y)` is
/// the weight of edges `(i, j)` with `x_i != y_j`: the cut between
/// `{i : x_i = 1} + {j : y_j = 1}` and the rest.
pub fn maxcut_from_weights(w: &[Vec<i64>]) -> Result<Instance> {
    let n = w.first().map_or(0, Vec::len);
    if w.iter().flatten().any(|&v| v < 0) {
        return Err(Error::invalid("max-cut weights must be nonnegative"));
    }
    let rows: Vec<Vec<i64>> = w
        .iter()
        .map(|row| row.iter().map(|&v| v.checked_mul(-2).ok_or(Error::Overflow)).collect())
        .collect::<Result<_>>()?;
    let c: Vec<i64> = w.iter().map(|row| row.iter().sum()).collect();
    let d: Vec<i64> = (0..n).map(|j| w.iter().map(|row| row[j]).sum()).collect();
    Instance::from_rows(&rows, c, d)
}

/// `Q = 2H - 1` for a binary matrix `H`.
pub fn factorization_from_matrix(h: &[Vec<bool>]) -> Result<Instance> {
    let rows: Vec<Vec<i64>> = h
        .iter()
        .map(|row| row.iter().map(|&b| if b { 1 } else { -1 }).collect())
        .collect();
    Instance::homogeneous(&rows)
}
