//! Points of the unit box `[0,1]^m x [0,1]^n` and the bilinear extension of
//! the objective to them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalPoint {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl FractionalPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_unit("x", &x)?;
        check_unit("y", &y)?;
        Ok(FractionalPoint { x, y })
    }

    /// The binary point itself.
    pub fn from_binary(x: &[bool], y: &[bool]) -> Self {
        let conv = |v: &[bool]| v.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        FractionalPoint {
            x: conv(x),
            y: conv(y),
        }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub(crate) fn check_dims(&self, inst: &Instance) -> Result<()> {
        inst.check_dims(self.x.len(), self.y.len())
    }
}

fn check_unit(what: &'static str, v: &[f64]) -> Result<()> {
    for (index, &value) in v.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::OutOfUnitInterval { what, index, value });
        }
    }
    Ok(())
}

/// `f(x, y)` for real `x, y`, in floating point.
pub fn evaluate_fractional(inst: &Instance, p: &FractionalPoint) -> Result<f64> {
    p.check_dims(inst)?;
    let mut value = 0.0;
    for (i, &xi) in p.x.iter().enumerate() {
        let inner: f64 = inst
            .row(i)
            .iter()
            .zip(&p.y)
            .map(|(&q, &yj)| q as f64 * yj)
            .sum();
        value += xi * (inst.c()[i] as f64 + inner);
    }
    value += inst
        .d()
        .iter()
        .zip(&p.y)
        .map(|(&d, &yj)| d as f64 * yj)
        .sum::<f64>();
    Ok(value)
}

/// `f(x, y)` evaluated exactly. Every finite `f64` is a dyadic rational, so
/// the result is the true value of the bilinear form at the given point.
pub fn evaluate_fractional_exact(inst: &Instance, p: &FractionalPoint) -> Result<BigRational> {
    p.check_dims(inst)?;
    let (xs, kx) = to_dyadic(&p.x);
    let (ys, ky) = to_dyadic(&p.y);
    // f * 2^(kx+ky) = sum q a_i b_j + 2^ky sum c a_i + 2^kx sum d b_j
    let mut total = BigInt::zero();
    for (i, a) in xs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut inner = BigInt::zero();
        for (q, b) in inst.row(i).iter().zip(&ys) {
            if *q != 0 && !b.is_zero() {
                inner += b * q;
            }
        }
        inner += (BigInt::from(inst.c()[i])) << ky;
        total += inner * a;
    }
    let mut lin = BigInt::zero();
    for (d, b) in inst.d().iter().zip(&ys) {
        lin += b * d;
    }
    total += lin << kx;
    Ok(BigRational::new(total, BigInt::one() << (kx + ky)))
}

/// Writes each value as `a_k / 2^e` with a common exponent `e`.
fn to_dyadic(values: &[f64]) -> (Vec<BigInt>, usize) {
    let parts: Vec<(u64, i32)> = values.iter().map(|&v| decompose(v)).collect();
    let exp = parts
        .iter()
        .filter(|(mant, _)| *mant != 0)
        .map(|&(_, e)| (-e).max(0) as usize)
        .max()
        .unwrap_or(0);
    let ints = parts
        .into_iter()
        .map(|(mant, e)| {
            if mant == 0 {
                BigInt::zero()
            } else {
                BigInt::from(mant) << ((exp as i64 + e as i64) as usize)
            }
        })
        .collect();
    (ints, exp)
}

/// Nonnegative finite `v = mant * 2^e`.
fn decompose(v: f64) -> (u64, i32) {
    if v == 0.0 {
        return (0, 0);
    }
    let bits = v.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut e) = if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    };
    let tz = mant.trailing_zeros();
    mant >>= tz;
    e += tz as i32;
    (mant, e)
}
