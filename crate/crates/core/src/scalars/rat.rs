//! Rationals that stay on machine words until an operation overflows.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Bound on numerator and denominator of the small form, leaving headroom so
/// negation and the checked operations never see `i64::MIN`.
const LIMIT: u64 = 1 << 62;

/// A rational number. Values that fit are always stored `Small`, so the
/// derived equality and hash agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

fn fits(r: &Ratio<i64>) -> bool {
    r.numer().unsigned_abs() < LIMIT && r.denom().unsigned_abs() < LIMIT
}

fn widen(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Rat {
    pub fn int(n: i64) -> Self {
        Rat::small(Ratio::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Rat::small(Ratio::new(num, den))
    }

    fn small(r: Ratio<i64>) -> Self {
        if fits(&r) {
            Rat::Small(r)
        } else {
            Rat::Big(widen(&r))
        }
    }

    pub fn big(&self) -> BigRational {
        match self {
            Rat::Small(r) => widen(r),
            Rat::Big(b) => b.clone(),
        }
    }

    fn op(
        self,
        rhs: Rat,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (&self, &rhs) {
            if let Some(r) = small(a, b) {
                return Rat::small(r);
            }
        }
        Rat::from(big(self.big(), rhs.big()))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_negative(),
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl From<BigRational> for Rat {
    fn from(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n.unsigned_abs() < LIMIT && d.unsigned_abs() < LIMIT => {
                Rat::Small(Ratio::new_raw(n, d))
            }
            _ => Rat::Big(b),
        }
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::int(0)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(r) if r.is_zero())
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::int(1)
    }
    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(r) if r.is_one())
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        if rhs.is_zero() {
            return self;
        }
        if self.is_zero() {
            return rhs;
        }
        self.op(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self.op(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        if self.is_zero() || rhs.is_zero() {
            return Rat::zero();
        }
        self.op(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl Div for Rat {
    type Output = Rat;
    /// Panics on division by zero.
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        self.op(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(r) => Rat::Small(-r),
            Rat::Big(b) => Rat::Big(-b),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => write!(f, "{r}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn promotes_and_demotes() {
        let huge = Rat::int(1 << 61);
        let sq = huge.clone() * huge.clone();
        assert!(matches!(sq, Rat::Big(_)));
        let back = sq / huge.clone();
        assert_eq!(back, huge);
        assert!(matches!(back, Rat::Small(_)));
        assert_eq!(Rat::from(big(6, 4)), Rat::ratio(3, 2));
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(
            a in -(1i64 << 40)..(1i64 << 40), b in 1i64..(1 << 30),
            c in -(1i64 << 40)..(1i64 << 40), d in 1i64..(1 << 30),
        ) {
            let (x, y) = (Rat::ratio(a, b), Rat::ratio(c, d));
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!((x.clone() + y.clone()).big(), &bx + &by);
            prop_assert_eq!((x.clone() - y.clone()).big(), &bx - &by);
            let p = x.clone() * y.clone();
            prop_assert_eq!(p.big(), &bx * &by);
            prop_assert_eq!(p.clone() * p.clone() * p.clone(), Rat::from(&bx * &by * &bx * &by * &bx * &by));
            if c != 0 {
                prop_assert_eq!((x / y).big(), bx / by);
            }
        }
    }
}
