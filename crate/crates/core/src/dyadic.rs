//! Exact probabilities with a power-of-two denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// The value `numerator / 2^exponent`.
///
/// Inside one solver run every probability shares the exponent `n` (the
/// declared variable count), so sums are plain big-integer additions. Values
/// with different exponents are still compared and added correctly by
/// rescaling to the larger exponent.
#[derive(Clone, Debug)]
pub struct DyadicProbability {
    numerator: BigInt,
    exponent: u32,
}

impl DyadicProbability {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        Self {
            numerator: numerator.into(),
            exponent,
        }
    }

    pub fn zero(exponent: u32) -> Self {
        Self::new(0, exponent)
    }

    pub fn one(exponent: u32) -> Self {
        Self::new(BigInt::one() << exponent, exponent)
    }

    /// `2^-bits`, written over the denominator `2^exponent`.
    ///
    /// Panics if `bits > exponent`.
    pub fn pow2_neg(bits: u32, exponent: u32) -> Self {
        assert!(bits <= exponent, "2^-{bits} is not a multiple of 2^-{exponent}");
        Self::new(BigInt::one() << (exponent - bits), exponent)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `self >= 1`, decided as `numerator >= 2^exponent`.
    pub fn is_at_least_one(&self) -> bool {
        self.numerator >= BigInt::one() << self.exponent
    }

    /// `self < 1`.
    pub fn is_below_one(&self) -> bool {
        !self.is_at_least_one()
    }

    /// Rewrites the value over `2^exponent`. Panics when that would lose
    /// precision (the target exponent is smaller than the reduced one).
    pub fn with_exponent(&self, exponent: u32) -> Self {
        if exponent >= self.exponent {
            Self::new(&self.numerator << (exponent - self.exponent), exponent)
        } else {
            let shift = self.exponent - exponent;
            let shifted = &self.numerator >> shift;
            assert!(
                &shifted << shift == self.numerator,
                "{self} is not representable over 2^{exponent}"
            );
            Self::new(shifted, exponent)
        }
    }

    /// Smallest-exponent representation of the same value.
    pub fn reduced(&self) -> Self {
        if self.numerator.is_zero() {
            return Self::zero(0);
        }
        let twos = self
            .numerator
            .trailing_zeros()
            .map_or(0, |z| z.min(u64::from(self.exponent)) as u32);
        Self::new(&self.numerator >> twos, self.exponent - twos)
    }

    /// Lossy conversion for reporting.
    pub fn to_f64(&self) -> f64 {
        let r = self.reduced();
        match (r.numerator.to_f64(), 2f64.powi(r.exponent.min(i32::MAX as u32) as i32)) {
            (Some(num), den) if num.is_finite() && den.is_finite() => num / den,
            _ => {
                // Very large exponents: drop low bits first.
                let excess = r.exponent.saturating_sub(1000);
                let num = (&r.numerator >> excess).to_f64().unwrap_or(f64::NAN);
                num / 2f64.powi((r.exponent - excess) as i32)
            }
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }
}

impl PartialEq for DyadicProbability {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DyadicProbability {}

impl PartialOrd for DyadicProbability {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicProbability {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.exponent == other.exponent {
            return self.numerator.cmp(&other.numerator);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Add for &DyadicProbability {
    type Output = DyadicProbability;

    fn add(self, rhs: Self) -> DyadicProbability {
        if self.exponent == rhs.exponent {
            return DyadicProbability::new(&self.numerator + &rhs.numerator, self.exponent);
        }
        let (a, b, e) = self.aligned(rhs);
        DyadicProbability::new(a + b, e)
    }
}

impl Sub for &DyadicProbability {
    type Output = DyadicProbability;

    fn sub(self, rhs: Self) -> DyadicProbability {
        if self.exponent == rhs.exponent {
            return DyadicProbability::new(&self.numerator - &rhs.numerator, self.exponent);
        }
        let (a, b, e) = self.aligned(rhs);
        DyadicProbability::new(a - b, e)
    }
}

impl Add for DyadicProbability {
    type Output = DyadicProbability;

    fn add(self, rhs: Self) -> DyadicProbability {
        &self + &rhs
    }
}

impl Sub for DyadicProbability {
    type Output = DyadicProbability;

    fn sub(self, rhs: Self) -> DyadicProbability {
        &self - &rhs
    }
}

impl Neg for DyadicProbability {
    type Output = DyadicProbability;

    fn neg(self) -> DyadicProbability {
        DyadicProbability::new(-self.numerator, self.exponent)
    }
}

impl fmt::Display for DyadicProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.exponent == 0 {
            write!(f, "{}", r.numerator)
        } else if r.numerator.is_negative() {
            write!(f, "-{}/2^{}", -r.numerator, r.exponent)
        } else {
            write!(f, "{}/2^{}", r.numerator, r.exponent)
        }
    }
}

/// Serialized as `{"numerator": "<decimal>", "exponent": e}`.
impl Serialize for DyadicProbability {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("DyadicProbability", 2)?;
        s.serialize_field("numerator", &self.numerator.to_string())?;
        s.serialize_field("exponent", &self.exponent)?;
        s.end()
    }
}
