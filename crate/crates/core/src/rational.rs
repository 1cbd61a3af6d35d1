//! Exact rationals for average values.
//!
//! Averages over the solution space have power-of-two denominators (times
//! `(2^m - 1)(2^n - 1)` for the nontrivial mean), so they are carried as
//! reduced big rationals and compared against integer objectives exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A reduced rational with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuarterRational(BigRational);

impl QuarterRational {
    /// Builds `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        QuarterRational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        QuarterRational(BigRational::from_integer(value.into()))
    }

    pub fn from_ratio(ratio: BigRational) -> Self {
        QuarterRational(ratio)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact comparison against an integer objective value.
    pub fn cmp_int(&self, value: i64) -> Ordering {
        // numer/denom vs value  <=>  numer vs value*denom (denom > 0)
        let scaled = self.denom() * BigInt::from(value);
        self.numer().cmp(&scaled)
    }

    /// `value >= self`, exactly.
    pub fn is_at_most(&self, value: i64) -> bool {
        self.cmp_int(value) != Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.0.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Decimal rendering. Exact when the denominator has only factors 2
    /// and 5; otherwise rounded to `max_places`.
    pub fn to_decimal_string(&self, max_places: usize) -> String {
        let mut denom = self.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let mut places = 0usize;
        let (mut twos, mut fives) = (0usize, 0usize);
        while (&denom % &two).is_zero() {
            denom /= &two;
            twos += 1;
        }
        while (&denom % &five).is_zero() {
            denom /= &five;
            fives += 1;
        }
        if denom.is_one() {
            places = twos.max(fives);
        }
        if !denom.is_one() || places > max_places {
            return format!("{:.*}", max_places, self.to_f64());
        }
        let scale = num_traits::pow(BigInt::from(10), places);
        let scaled = self.numer() * &scale / self.denom();
        let negative = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let body = if places == 0 {
            digits
        } else {
            let padded = format!("{:0>width$}", digits, width = places + 1);
            let (int_part, frac_part) = padded.split_at(padded.len() - places);
            format!("{int_part}.{frac_part}")
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl fmt::Display for QuarterRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl From<i64> for QuarterRational {
    fn from(value: i64) -> Self {
        QuarterRational::from_integer(value)
    }
}
