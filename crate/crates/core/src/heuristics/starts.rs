//! Seeded random fractional starting points.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fractional::FractionalPoint;
use crate::instance::Instance;

const TWO_POW_52: f64 = 4_503_599_627_370_496.0;

/// A uniform draw from the half-open interval `(lo, hi]`.
///
/// Uses 52 random bits: `hi - (hi - lo) * k / 2^52`. For the two intervals
/// used here, `(0, 0.5]` and `(0.5, 1]`, every result is exactly
/// representable, so the open endpoint is never produced by rounding.
pub fn ran_open_closed(rng: &mut impl RngCore, lo: f64, hi: f64) -> f64 {
    let k = (rng.next_u64() >> 12) as f64;
    hi - (hi - lo) * (k / TWO_POW_52)
}

fn type1_component(rng: &mut impl RngCore, weight: i64) -> f64 {
    if weight < 0 {
        ran_open_closed(rng, 0.0, 0.5)
    } else {
        ran_open_closed(rng, 0.5, 1.0)
    }
}

/// Type 1: components in `(0, 0.5]` where the row (column) marginal is
/// negative, else in `(0.5, 1]`.
pub fn type1_start(inst: &Instance, seed: u64) -> FractionalPoint {
    let mg = inst.marginals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = mg.gamma.iter().map(|&g| type1_component(&mut rng, g)).collect();
    let y = mg.delta.iter().map(|&g| type1_component(&mut rng, g)).collect();
    FractionalPoint::new(x, y).expect("type 1 components lie in (0, 1]")
}

fn type2_side(rng: &mut impl RngCore, weights: &[i64]) -> Vec<f64> {
    let max = weights.iter().map(|w| w.unsigned_abs()).max().unwrap_or(0);
    if max == 0 {
        return vec![0.5; weights.len()];
    }
    let max = max as f64;
    weights
        .iter()
        .map(|&w| {
            let scale = w.unsigned_abs() as f64 / max;
            let v = if w < 0 {
                0.5 - scale * ran_open_closed(rng, 0.0, 0.5)
            } else {
                scale * ran_open_closed(rng, 0.5, 1.0)
            };
            v.clamp(0.0, 1.0)
        })
        .collect()
}

/// Type 2: type-1 draws weighted by `|gamma_i| / max |gamma|` (resp. delta).
/// A side whose marginals are all zero is set to 1/2.
pub fn type2_start(inst: &Instance, seed: u64) -> FractionalPoint {
    let mg = inst.marginals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = type2_side(&mut rng, &mg.gamma);
    let y = type2_side(&mut rng, &mg.delta);
    FractionalPoint::new(x, y).expect("type 2 components lie in [0, 1]")
}
