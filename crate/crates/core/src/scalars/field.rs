use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring with identity, as used for matrix entries.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// A field. `inv` returns `None` exactly on zero.
///
/// Every identity the library checks is polynomial in its inputs, so with an
/// exact field (`GaussQ`, `BigRational`) equality tests are exact. `f64` is
/// supported for exploratory use, where `==` is bitwise and round-off makes
/// the checks meaningless.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

macro_rules! int_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }
    )*};
}

int_ring!(i64, i128);

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {}

macro_rules! float_field {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }

        impl Field for $t {}
    )*};
}

float_field!(f32, f64);
