//! Scalar abstraction shared by the exact kernels.
//!
//! Dimension formulas, characters of `S_m`, class-function convolution and
//! Weingarten values are written once over [`Scalar`]. The exact carrier is
//! [`BigRational`](num_rational::BigRational); `f64` and `f32` are available
//! for quick floating-point evaluation of the same formulas.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Lossy conversion used for reporting and floating comparisons.
    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f32(v).unwrap_or(f32::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

/// `base^exp` by repeated multiplication, for any scalar.
pub(crate) fn pow_int<T: Scalar>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

pub(crate) fn factorial<T: Scalar>(m: u32) -> T {
    (1..=m as i64).fold(T::one(), |acc, k| acc * T::from_int(k))
}

/// Returns the integer value if `q` has denominator one.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}
