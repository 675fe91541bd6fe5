use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Ring};
use super::rat::Rat;
use crate::error::Error;

/// Gaussian rational `re + im·i`. Parts stay on machine words until they
/// outgrow them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussQ {
    re: Rat,
    im: Rat,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re: Rat::from(re), im: Rat::from(im) }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussQ { re: Rat::int(re), im: Rat::int(im) }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        GaussQ { re: Rat::ratio(num, den), im: Rat::zero() }
    }

    pub fn i() -> Self {
        GaussQ::from_ints(0, 1)
    }

    pub fn re(&self) -> BigRational {
        self.re.big()
    }

    pub fn im(&self) -> BigRational {
        self.im.big()
    }

    pub fn conj(&self) -> Self {
        GaussQ { re: self.re.clone(), im: -self.im.clone() }
    }

    fn norm_sqr(&self) -> Rat {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl Zero for GaussQ {
    fn zero() -> Self {
        GaussQ { re: Rat::zero(), im: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussQ {
    fn one() -> Self {
        GaussQ { re: Rat::one(), im: Rat::zero() }
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, rhs: GaussQ) -> GaussQ {
        GaussQ { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: GaussQ) -> GaussQ {
        GaussQ { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: GaussQ) -> GaussQ {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussQ { re: self.re * rhs.re, im: Rat::zero() };
        }
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        GaussQ { re, im }
    }
}

impl Div for GaussQ {
    type Output = GaussQ;
    /// Panics on division by zero, like the rational parts do.
    fn div(self, rhs: GaussQ) -> GaussQ {
        if rhs.im.is_zero() {
            return GaussQ { re: self.re / rhs.re.clone(), im: self.im / rhs.re };
        }
        let n = rhs.norm_sqr();
        let q = self * rhs.conj();
        GaussQ { re: q.re / n.clone(), im: q.im / n }
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ { re: -self.re, im: -self.im }
    }
}

impl Ring for GaussQ {
    fn from_i64(n: i64) -> Self {
        GaussQ::from_ints(n, 0)
    }
}

impl Field for GaussQ {}

impl From<i64> for GaussQ {
    fn from(n: i64) -> Self {
        GaussQ::from_ints(n, 0)
    }
}

impl From<BigRational> for GaussQ {
    fn from(r: BigRational) -> Self {
        GaussQ::new(r, BigRational::zero())
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        debug_assert!(!im_abs.is_zero());
        let im_txt = if im_abs.is_one() { String::new() } else { im_abs.to_string() };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{im_txt}i")
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{im_txt}i", self.re)
        }
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational, Error> {
    let bad = || Error::BadScalar(whole.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for GaussQ {
    type Err = Error;

    /// Accepts `a`, `a/b`, `a/b+c/di`, `c/di`, `i`, `-i`, with optional whitespace.
    fn from_str(text: &str) -> Result<Self, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::BadScalar(text.to_string()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussQ::from(parse_rational(&s, text)?));
        };
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re = parse_rational(re_txt, text)?;
        let im = match im_txt {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t), text)?,
        };
        Ok(GaussQ::new(re, im))
    }
}

impl Serialize for GaussQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussQ {
        s.parse().unwrap()
    }

    #[test]
    fn text_forms() {
        assert_eq!(q("3"), GaussQ::from(3));
        assert_eq!(q("-1/2"), GaussQ::ratio(-1, 2));
        assert_eq!(q("1/2+3/4i").im(), BigRational::new(3.into(), 4.into()));
        assert_eq!(q("1-i"), GaussQ::from_ints(1, -1));
        assert_eq!(q("-i"), GaussQ::from_ints(0, -1));
        assert_eq!(q("2i"), GaussQ::from_ints(0, 2));
        assert_eq!(q("-1/2i").im(), BigRational::new((-1).into(), 2.into()));
        for s in ["0", "7", "-2/3", "i", "-i", "1/2+3/4i", "5-2i", "-3/7i"] {
            assert_eq!(q(s).to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x", "1/0", "1+", "1/2/3", "ii"] {
            assert!(s.parse::<GaussQ>().is_err(), "{s}");
        }
    }

    #[test]
    fn field_ops() {
        let a = GaussQ::from_ints(1, 2);
        let b = GaussQ::from_ints(3, -1);
        assert_eq!(a.clone() * b.clone(), GaussQ::from_ints(5, 5));
        assert_eq!((a.clone() / b.clone()) * b, a);
        assert_eq!(GaussQ::i() * GaussQ::i(), -GaussQ::one());
        assert!(GaussQ::zero().inv().is_none());
    }
}
