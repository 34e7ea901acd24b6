//! Arithmetic shared by the exact-rational and floating flavors.

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers backed by arbitrary-precision integers.
pub type Rational = BigRational;

/// Tolerance for floating simplex membership (negative coordinates and
/// coordinate sums above one).
pub const SIMPLEX_TOL: f64 = 1e-12;

/// A number type the basis can be evaluated in.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Zero
    + One
{
    /// `true` for exact arithmetic; exact values compare with `==`.
    const EXACT: bool;

    fn from_u64(n: u64) -> Self;
    fn from_biguint(n: &BigUint) -> Self;
    fn from_rational(r: &Rational) -> Self;

    /// `self / d` for a positive integer `d`.
    fn div_u64(&self, d: u64) -> Self;

    /// `self^e` with `0^0 = 1`.
    fn pow_u32(&self, e: u32) -> Self;

    fn to_f64(&self) -> f64;

    /// Admits a coordinate into the simplex: `None` if it is negative (beyond
    /// the float tolerance) or not finite. Float values within tolerance of
    /// zero are clamped to zero.
    fn admit_coordinate(self) -> Option<Self>;

    /// Admits `1 - |x|`: `None` if the coordinate sum exceeds one (beyond
    /// the float tolerance); otherwise the clamped complement.
    fn admit_complement(complement: Self) -> Option<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn from_biguint(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn div_u64(&self, d: u64) -> Self {
        self / d as f64
    }

    fn pow_u32(&self, e: u32) -> Self {
        // repeated squaring; powi's rounding is not specified
        let mut base = *self;
        let mut e = e;
        let mut acc = 1.0;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn admit_coordinate(self) -> Option<Self> {
        if !self.is_finite() || self < -SIMPLEX_TOL {
            None
        } else {
            Some(self.max(0.0))
        }
    }

    fn admit_complement(complement: Self) -> Option<Self> {
        if !complement.is_finite() || complement < -SIMPLEX_TOL {
            None
        } else {
            Some(complement.max(0.0))
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_biguint(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn div_u64(&self, d: u64) -> Self {
        self / BigRational::from_integer(BigInt::from(d))
    }

    fn pow_u32(&self, e: u32) -> Self {
        num_traits::Pow::pow(self, e)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn admit_coordinate(self) -> Option<Self> {
        if self.is_negative() {
            None
        } else {
            Some(self)
        }
    }

    fn admit_complement(complement: Self) -> Option<Self> {
        Self::admit_coordinate(complement)
    }
}

/// Builds the rational `num/den`.
///
/// # Panics
/// If `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
