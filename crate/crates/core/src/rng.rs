//! Deterministic sampling of test data.
//!
//! All generators draw from SplitMix64, seeded explicitly, so any failing
//! trial is reproducible from its seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::linalg::Matrix;
use crate::quiver::QuiverMult;
use crate::rmatrix::{ModShape, RMap};
use crate::scalars::{Field, GaussQ, TruncScalar};
use crate::weyl::ParamVector;

pub type Rng = SplitMix64;

pub fn rng(seed: u64) -> Rng {
    SplitMix64::seed_from_u64(seed)
}

/// Scalars that can be drawn at random. Values are small integers so that
/// exact arithmetic stays cheap.
pub trait Sample: Field {
    fn sample(rng: &mut Rng) -> Self;
}

impl Sample for GaussQ {
    fn sample(rng: &mut Rng) -> Self {
        GaussQ::from_ints(rng.random_range(-2..=2), rng.random_range(-2..=2))
    }
}

impl Sample for BigRational {
    fn sample(rng: &mut Rng) -> Self {
        BigRational::from_integer(BigInt::from(rng.random_range(-3..=3)))
    }
}

impl Sample for f64 {
    fn sample(rng: &mut Rng) -> Self {
        f64::from(rng.random_range(-3..=3))
    }
}

pub fn random_matrix<F: Sample>(rng: &mut Rng, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| F::sample(rng))
}

/// Invertible square matrix, drawn until the determinant is nonzero.
pub fn random_invertible<F: Sample>(rng: &mut Rng, n: usize) -> Matrix<F> {
    loop {
        let m = random_matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_trunc<F: Sample>(rng: &mut Rng, d: usize) -> TruncScalar<F> {
    TruncScalar::new((0..d).map(|_| F::sample(rng)).collect()).expect("positive order")
}

pub fn random_unit<F: Sample>(rng: &mut Rng, d: usize) -> TruncScalar<F> {
    loop {
        let t = random_trunc(rng, d);
        if t.is_unit() {
            return t;
        }
    }
}

pub fn random_params<F: Sample>(rng: &mut Rng, q: &QuiverMult) -> ParamVector<F> {
    q.mults().into_iter().map(|d| random_trunc(rng, d)).collect()
}

/// Random `R_c`-linear map, drawn in the matrix-polynomial parametrization.
pub fn random_map<F: Sample>(rng: &mut Rng, src: ModShape, dst: ModShape, c: usize) -> RMap<F> {
    let qs = src.order / c;
    let qd = dst.order / c;
    let coeffs: Vec<Matrix<F>> = (0..c).map(|_| random_matrix(rng, dst.rank * qd, src.rank * qs)).collect();
    RMap::from_poly(src, dst, c, &coeffs).expect("c divides both orders")
}

/// Random element of `G_d(V) = GL_{R_d}(V ⊗ R_d)`.
pub fn random_gauge<F: Sample>(rng: &mut Rng, rank: usize, d: usize) -> RMap<F> {
    let shape = ModShape::new(rank, d);
    let mut coeffs = vec![random_invertible(rng, rank)];
    coeffs.extend((1..d).map(|_| random_matrix(rng, rank, rank)));
    RMap::from_poly(shape, shape, d, &coeffs).expect("well formed")
}
