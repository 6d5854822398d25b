//! Coefficient fields.
//!
//! Every algebraic type in this crate is generic over a [`Field`]. The only
//! fields that make sense here are exact ones; the crate root fixes the
//! default to arbitrary-precision rationals.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// An exact field of coefficients.
pub trait Field:
    Num
    + Signed
    + Clone
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Builds `num / den`, or `None` when the value does not fit.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// Numerator and (positive) denominator in lowest terms.
    fn to_ratio(&self) -> (BigInt, BigInt);

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(&BigInt::from(n), &BigInt::from(1)).expect("small integers fit")
    }
}

impl Field for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den == &BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(num.clone(), den.clone()))
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
}

macro_rules! machine_ratio {
    ($int:ty, $to:ident) => {
        impl Field for Ratio<$int> {
            fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
                let n = num.$to()?;
                let d = den.$to()?;
                if d == 0 {
                    return None;
                }
                Some(Ratio::new(n, d))
            }

            fn to_ratio(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    };
}

machine_ratio!(i64, to_i64);
machine_ratio!(i128, to_i128);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        let q = BigRational::from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(q.to_ratio(), (BigInt::from(-3), BigInt::from(2)));
        assert!(BigRational::from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
        let r = Ratio::<i64>::from_ratio(&BigInt::from(2), &BigInt::from(8)).unwrap();
        assert_eq!(r, Ratio::new(1, 4));
    }
}
