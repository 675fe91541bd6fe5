use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::field::{Field, Ring};
use crate::error::{Error, Result};

/// Element of the truncated polynomial ring `R_d = F[ε]/(ε^d)`.
///
/// `coeffs[k]` is the coefficient of `ε^k`; the order `d` is `coeffs.len()`
/// and is never zero.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncScalar<F> {
    coeffs: Vec<F>,
}

impl<F: Ring> TruncScalar<F> {
    /// Builds an element from `coeffs`, which must be non-empty.
    pub fn new(coeffs: Vec<F>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ShapeMismatch("truncation order must be positive".into()));
        }
        Ok(TruncScalar { coeffs })
    }

    pub fn zero(d: usize) -> Self {
        assert!(d > 0, "truncation order must be positive");
        TruncScalar { coeffs: vec![F::zero(); d] }
    }

    pub fn constant(c: F, d: usize) -> Self {
        let mut t = Self::zero(d);
        t.coeffs[0] = c;
        t
    }

    pub fn one(d: usize) -> Self {
        Self::constant(F::one(), d)
    }

    /// `ε^k` in `R_d` (zero when `k >= d`).
    pub fn eps_pow(k: usize, d: usize) -> Self {
        let mut t = Self::zero(d);
        if k < d {
            t.coeffs[k] = F::one();
        }
        t
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        TruncScalar { coeffs: coeffs.iter().map(|&c| F::from_i64(c)).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::MismatchedOrder(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(TruncScalar { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(TruncScalar { coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncScalar { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        TruncScalar { coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect() }
    }

    /// Product in `R_d`: the coefficient convolution cut off at degree `d`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.order();
        let mut out = vec![F::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..d - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(TruncScalar { coeffs: out })
    }

    /// Residue pairing `⟨f, g⟩_d`: the coefficient of `ε^{d-1}` in `fg`.
    pub fn residue_pair(&self, other: &Self) -> Result<F> {
        self.check(other)?;
        let d = self.order();
        let mut acc = F::zero();
        for k in 0..d {
            acc = acc + self.coeffs[k].clone() * other.coeffs[d - 1 - k].clone();
        }
        Ok(acc)
    }

    /// Residue of `f dε/ε^d`, i.e. `⟨f, 1⟩_d`.
    pub fn residue(&self) -> F {
        self.coeffs[self.order() - 1].clone()
    }

    /// Image under `R_c → R_d, ε_c ↦ ε_d^{d/c}` where `c` is `self.order()`.
    pub fn embed(&self, d: usize) -> Result<Self> {
        let c = self.order();
        if d == 0 || !d.is_multiple_of(c) {
            return Err(Error::NotDivisible(c, d));
        }
        let step = d / c;
        let mut out = Self::zero(d);
        for (k, a) in self.coeffs.iter().enumerate() {
            out.coeffs[k * step] = a.clone();
        }
        Ok(out)
    }
}

impl<F: Field> TruncScalar<F> {
    /// Inverse of a unit, by the recursion `b_k = -a_0^{-1} Σ_{j≥1} a_j b_{k-j}`.
    pub fn inv(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].inv().ok_or(Error::NotAUnit)?;
        let d = self.order();
        let mut b: Vec<F> = Vec::with_capacity(d);
        b.push(a0_inv.clone());
        for k in 1..d {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * b[k - j].clone();
            }
            b.push(-(a0_inv.clone() * acc));
        }
        Ok(TruncScalar { coeffs: b })
    }
}

impl<F: Ring + One> TruncScalar<F> {
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl<F: fmt::Display> fmt::Display for TruncScalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<F: Ring + FromStr> FromStr for TruncScalar<F> {
    type Err = Error;

    /// Parses the list form `[c0, c1, ...]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::BadScalar(s.to_string()))?;
        let coeffs = inner
            .split(',')
            .map(|c| c.trim().parse::<F>().map_err(|_| Error::BadScalar(c.trim().to_string())))
            .collect::<Result<Vec<_>>>()?;
        TruncScalar::new(coeffs)
    }
}
