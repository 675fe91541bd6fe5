//! Homomorphisms between free modules `V ⊗ R_d` that are linear over a common
//! subring `R_c`, stored as matrices over the base field.
//!
//! The basis of `V ⊗ R_d` is `{v_j ε^k}`, ordered vertex-major and then by
//! ascending power of ε, so `(j, k)` sits at flat index `j·d + k`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::{Field, TruncScalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct ModShape {
    pub rank: usize,
    pub order: usize,
}

impl ModShape {
    pub fn new(rank: usize, order: usize) -> Self {
        assert!(order > 0, "module order must be positive");
        ModShape { rank, order }
    }

    /// Dimension over the base field.
    pub fn dim(&self) -> usize {
        self.rank * self.order
    }

    pub fn index(&self, j: usize, k: usize) -> usize {
        j * self.order + k
    }
}

/// Matrix of multiplication by `ε^k` on a module of the given shape.
pub fn eps_power<F: Field>(shape: ModShape, k: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(shape.dim(), shape.dim());
    for j in 0..shape.rank {
        for p in 0..shape.order.saturating_sub(k) {
            m[(shape.index(j, p + k), shape.index(j, p))] = F::one();
        }
    }
    m
}

/// An `R_c`-linear map `src → dst`.
///
/// An endomorphism with `base == order` is an element of `gl(V) ⊗ R_d`; the
/// methods that need this form (`trace_r`, `inverse`) check it.
#[derive(Clone, PartialEq, Debug)]
pub struct RMap<F> {
    src: ModShape,
    dst: ModShape,
    base: usize,
    flat: Matrix<F>,
}

fn check_divides(c: usize, d: usize) -> Result<()> {
    if c == 0 || !d.is_multiple_of(c) {
        return Err(Error::NotDivisible(c, d));
    }
    Ok(())
}

fn flat_commutes<F: Field>(flat: &Matrix<F>, src: ModShape, dst: ModShape, c: usize) -> bool {
    let qs = src.order / c;
    let qd = dst.order / c;
    for a in 0..dst.rank {
        for p in 0..dst.order {
            let r = dst.index(a, p);
            for j in 0..src.rank {
                for l in 0..src.order {
                    // (flat · N_src^qs)[r, (j,l)] against (N_dst^qd · flat)[r, (j,l)]
                    let lhs = if l + qs < src.order { Some(&flat[(r, src.index(j, l + qs))]) } else { None };
                    let rhs = if p >= qd { Some(&flat[(dst.index(a, p - qd), src.index(j, l))]) } else { None };
                    let ok = match (lhs, rhs) {
                        (Some(x), Some(y)) => x == y,
                        (Some(x), None) | (None, Some(x)) => x.is_zero(),
                        (None, None) => true,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

impl<F: Field> RMap<F> {
    /// Validating constructor: `base` must divide both orders and `flat` must
    /// intertwine the appropriate powers of ε.
    pub fn new(src: ModShape, dst: ModShape, base: usize, flat: Matrix<F>) -> Result<Self> {
        check_divides(base, src.order)?;
        check_divides(base, dst.order)?;
        if flat.shape() != (dst.dim(), src.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "flat matrix is {}x{}, expected {}x{}",
                flat.rows(),
                flat.cols(),
                dst.dim(),
                src.dim()
            )));
        }
        if !flat_commutes(&flat, src, dst, base) {
            return Err(Error::NotLinearOverBase(base));
        }
        Ok(RMap { src, dst, base, flat })
    }

    pub fn zero(src: ModShape, dst: ModShape, base: usize) -> Result<Self> {
        check_divides(base, src.order)?;
        check_divides(base, dst.order)?;
        Ok(RMap { src, dst, base, flat: Matrix::zeros(dst.dim(), src.dim()) })
    }

    pub fn identity(shape: ModShape) -> Self {
        RMap { src: shape, dst: shape, base: shape.order, flat: Matrix::identity(shape.dim()) }
    }

    /// `λ · Id` on `V ⊗ R_d` where `d` is the order of `λ`.
    pub fn scalar(rank: usize, lambda: &TruncScalar<F>) -> Self {
        let d = lambda.order();
        let shape = ModShape::new(rank, d);
        let coeffs: Vec<Matrix<F>> = lambda.coeffs().iter().map(|c| Matrix::scalar(rank, c.clone())).collect();
        Self::from_poly(shape, shape, d, &coeffs).expect("scalar map is well formed")
    }

    /// Multiplication by ε on `V ⊗ R_d`.
    pub fn eps(shape: ModShape) -> Self {
        RMap { src: shape, dst: shape, base: shape.order, flat: eps_power(shape, 1) }
    }

    /// Builds an `R_c`-linear map from its matrix polynomial `Σ_k ξ_k ε_c^k`.
    ///
    /// Over `R_c` the source is free on `{v_j ε^l : l < src.order/c}` and the
    /// target on `{v_a ε^p : p < dst.order/c}`; `coeffs[k]` is a matrix in
    /// those bases, indexed `(a·qd + p, j·qs + l)`. Missing high coefficients
    /// are zero.
    pub fn from_poly(src: ModShape, dst: ModShape, c: usize, coeffs: &[Matrix<F>]) -> Result<Self> {
        check_divides(c, src.order)?;
        check_divides(c, dst.order)?;
        let qs = src.order / c;
        let qd = dst.order / c;
        let (rows, cols) = (dst.rank * qd, src.rank * qs);
        if coeffs.len() > c || coeffs.iter().any(|m| m.shape() != (rows, cols)) {
            return Err(Error::ShapeMismatch(format!(
                "expected at most {c} coefficient matrices of size {rows}x{cols}"
            )));
        }
        let mut flat = Matrix::zeros(dst.dim(), src.dim());
        for (k, xi) in coeffs.iter().enumerate() {
            for a in 0..dst.rank {
                for p in 0..qd {
                    for j in 0..src.rank {
                        for l in 0..qs {
                            let x = &xi[(a * qd + p, j * qs + l)];
                            if x.is_zero() {
                                continue;
                            }
                            for m in 0..c - k {
                                let r = dst.index(a, p + (k + m) * qd);
                                flat[(r, src.index(j, l + m * qs))] = x.clone();
                            }
                        }
                    }
                }
            }
        }
        Ok(RMap { src, dst, base: c, flat })
    }

    /// Inverse of `from_poly` at the map's own base.
    pub fn poly(&self) -> Vec<Matrix<F>> {
        let c = self.base;
        let qs = self.src.order / c;
        let qd = self.dst.order / c;
        (0..c)
            .map(|k| {
                Matrix::from_fn(self.dst.rank * qd, self.src.rank * qs, |r, col| {
                    let (a, p) = (r / qd, r % qd);
                    let (j, l) = (col / qs, col % qs);
                    self.flat[(self.dst.index(a, p + k * qd), self.src.index(j, l))].clone()
                })
            })
            .collect()
    }

    pub fn src(&self) -> ModShape {
        self.src
    }

    pub fn dst(&self) -> ModShape {
        self.dst
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn flat(&self) -> &Matrix<F> {
        &self.flat
    }

    pub fn into_flat(self) -> Matrix<F> {
        self.flat
    }

    pub fn is_zero(&self) -> bool {
        self.flat.is_zero()
    }

    /// Whether the flat matrix is `R_c`-linear, independent of the declared base.
    pub fn is_linear_over(&self, c: usize) -> bool {
        c > 0
            && self.src.order.is_multiple_of(c)
            && self.dst.order.is_multiple_of(c)
            && flat_commutes(&self.flat, self.src, self.dst, c)
    }

    /// Same map, declared over a different base. Fails if not linear over it.
    pub fn with_base(&self, c: usize) -> Result<Self> {
        check_divides(c, self.src.order)?;
        check_divides(c, self.dst.order)?;
        if !self.is_linear_over(c) {
            return Err(Error::NotLinearOverBase(c));
        }
        Ok(RMap { base: c, ..self.clone() })
    }

    pub fn is_rend(&self) -> bool {
        self.src == self.dst && self.base == self.src.order
    }

    fn require_rend(&self) -> Result<()> {
        if self.is_rend() {
            Ok(())
        } else {
            Err(Error::NotEndomorphism)
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::ShapeMismatch("maps have different source or target".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(RMap { base: self.base.gcd(&other.base), flat: self.flat.add(&other.flat), ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(RMap { base: self.base.gcd(&other.base), flat: self.flat.sub(&other.flat), ..*self })
    }

    pub fn neg(&self) -> Self {
        RMap { flat: self.flat.neg(), ..*self }
    }

    pub fn scale(&self, c: &F) -> Self {
        RMap { flat: self.flat.scale(c), ..*self }
    }

    /// `self ∘ other`, linear over `R_gcd` of the two bases.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.dst != self.src {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: inner target {:?} differs from outer source {:?}",
                other.dst, self.src
            )));
        }
        let base = self.base.gcd(&other.base);
        let flat = self.flat.mul(&other.flat);
        debug_assert!(flat_commutes(&flat, other.src, self.dst, base));
        Ok(RMap { src: other.src, dst: self.dst, base, flat })
    }

    /// `tr_{R_d}`: the sum of traces of the coefficient matrices.
    pub fn trace_r(&self) -> Result<TruncScalar<F>> {
        self.require_rend()?;
        self.trace_over(self.base)
    }

    /// Trace over `R_c` of an `R_c`-linear endomorphism.
    pub fn trace_over(&self, c: usize) -> Result<TruncScalar<F>> {
        if self.src != self.dst {
            return Err(Error::NotEndomorphism);
        }
        if !self.is_linear_over(c) {
            return Err(Error::NotLinearOverBase(c));
        }
        let shape = self.src;
        let q = shape.order / c;
        let coeffs = (0..c)
            .map(|m| {
                let mut acc = F::zero();
                for i in 0..shape.rank {
                    for k in 0..q {
                        acc = acc + self.flat[(shape.index(i, k + m * q), shape.index(i, k))].clone();
                    }
                }
                acc
            })
            .collect();
        TruncScalar::new(coeffs)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_rend()?;
        let flat = self.flat.inverse().ok_or(Error::NotInvertible)?;
        Ok(RMap { flat, ..*self })
    }

    /// Coefficient of `ε^0` of an endomorphism in `gl(V) ⊗ R_d`, i.e. its
    /// reduction mod ε. For a general map, the block `flat[(a,0),(j,0)]`.
    pub fn residue_matrix(&self) -> Matrix<F> {
        let rows: Vec<usize> = (0..self.dst.rank).map(|a| self.dst.index(a, 0)).collect();
        let cols: Vec<usize> = (0..self.src.rank).map(|j| self.src.index(j, 0)).collect();
        self.flat.select(&rows, &cols)
    }
}

/// `⟨X, Y⟩_c`: the residue at order `c` of the `R_c`-trace of `X ∘ Y`.
pub fn pair<F: Field>(x: &RMap<F>, y: &RMap<F>, c: usize) -> Result<F> {
    let xy = x.compose(y)?;
    Ok(xy.trace_over(c)?.residue())
}

/// The adjoint of `End_{R_d} ⊂ End_{R_c}`: `Σ_{k<d/c} N^k Z N^{d/c-1-k}`.
pub fn pr_cd<F: Field>(z: &RMap<F>, c: usize) -> Result<RMap<F>> {
    if z.src != z.dst {
        return Err(Error::ShapeMismatch("pr_cd needs an endomorphism".into()));
    }
    let shape = z.src;
    check_divides(c, shape.order)?;
    if !z.is_linear_over(c) {
        return Err(Error::NotLinearOverBase(c));
    }
    let q = shape.order / c;
    let mut acc = Matrix::zeros(shape.dim(), shape.dim());
    for k in 0..q {
        let term = eps_power(shape, k).mul(&z.flat).mul(&eps_power(shape, q - 1 - k));
        acc = acc.add(&term);
    }
    RMap::new(shape, shape, shape.order, acc)
}

/// `X ↦ X^{R_d}` for `X: W⊗R_c → V⊗R_d`, giving an `R_d`-linear map
/// `W⊗R_d → V⊗R_d` (the induced module has the same rank as `W`).
pub fn extend_scalars<F: Field>(x: &RMap<F>) -> Result<RMap<F>> {
    let c = x.src.order;
    let d = x.dst.order;
    check_divides(c, d)?;
    if !x.is_linear_over(c) {
        return Err(Error::NotLinearOverBase(c));
    }
    let src = ModShape::new(x.src.rank, d);
    let n = eps_power::<F>(x.dst, 1);
    let mut flat = Matrix::zeros(x.dst.dim(), src.dim());
    for j in 0..x.src.rank {
        let mut col = x.flat.select(&(0..x.dst.dim()).collect::<Vec<_>>(), &[x.src.index(j, 0)]);
        for k in 0..d {
            flat.set_block(0, src.index(j, k), &col);
            col = n.mul(&col);
        }
    }
    Ok(RMap { src, dst: x.dst, base: d, flat })
}

/// `Y ↦ Y^{R_d}` for `Y: V⊗R_d → W⊗R_c`, given by
/// `v ↦ Σ_k Y(ε^{d/c-1-k} v) ⊗ ε^k`.
pub fn extend_scalars_rev<F: Field>(y: &RMap<F>) -> Result<RMap<F>> {
    let c = y.dst.order;
    let d = y.src.order;
    check_divides(c, d)?;
    if !y.is_linear_over(c) {
        return Err(Error::NotLinearOverBase(c));
    }
    let q = d / c;
    let dst = ModShape::new(y.dst.rank, d);
    let mut flat = Matrix::zeros(dst.dim(), y.src.dim());
    for k in 0..q {
        let shifted = y.flat.mul(&eps_power(y.src, q - 1 - k));
        for j in 0..y.dst.rank {
            for m in 0..c {
                for col in 0..y.src.dim() {
                    flat[(dst.index(j, m * q + k), col)] = shifted[(y.dst.index(j, m), col)].clone();
                }
            }
        }
    }
    Ok(RMap { src: y.src, dst, base: d, flat })
}

/// Inverse of `extend_scalars`: restricts `F: W⊗R_d → V⊗R_d` to `W⊗R_c`.
pub fn restrict_scalars<F: Field>(f: &RMap<F>, c: usize) -> Result<RMap<F>> {
    let d = f.src.order;
    check_divides(c, d)?;
    if f.dst.order != d || !f.is_linear_over(d) {
        return Err(Error::NotLinearOverBase(d));
    }
    let q = d / c;
    let src = ModShape::new(f.src.rank, c);
    let cols: Vec<usize> = (0..f.src.rank).flat_map(|j| (0..c).map(move |m| j * d + m * q)).collect();
    let rows: Vec<usize> = (0..f.dst.dim()).collect();
    Ok(RMap { src, dst: f.dst, base: c, flat: f.flat.select(&rows, &cols) })
}

/// Inverse of `extend_scalars_rev`: projects `V⊗R_d → W⊗R_d` onto the
/// `ε^{d/c-1}` slice of each `R_c`-block, landing in `W⊗R_c`.
pub fn restrict_scalars_rev<F: Field>(f: &RMap<F>, c: usize) -> Result<RMap<F>> {
    let d = f.dst.order;
    check_divides(c, d)?;
    if f.src.order != d || !f.is_linear_over(d) {
        return Err(Error::NotLinearOverBase(d));
    }
    let q = d / c;
    let dst = ModShape::new(f.dst.rank, c);
    let rows: Vec<usize> = (0..f.dst.rank).flat_map(|j| (0..c).map(move |m| j * d + m * q + q - 1)).collect();
    let cols: Vec<usize> = (0..f.src.dim()).collect();
    Ok(RMap { src: f.src, dst, base: c, flat: f.flat.select(&rows, &cols) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussQ;

    type M = Matrix<GaussQ>;
    type Map = RMap<GaussQ>;

    fn q(n: i64) -> GaussQ {
        GaussQ::from(n)
    }

    fn trunc(c: &[i64]) -> TruncScalar<GaussQ> {
        TruncScalar::from_ints(c)
    }

    fn scalar(c: &[i64]) -> Map {
        Map::scalar(1, &trunc(c))
    }

    #[test]
    fn constructor_rejects_nonlinear() {
        let s = ModShape::new(1, 2);
        let bad = M::from_i64(&[&[1, 0], &[0, 2]]);
        assert!(matches!(Map::new(s, s, 2, bad.clone()), Err(Error::NotLinearOverBase(2))));
        assert!(Map::new(s, s, 1, bad).is_ok());
        assert!(matches!(Map::new(s, s, 3, M::zeros(2, 2)), Err(Error::NotDivisible(3, 2))));
    }

    #[test]
    fn compose_examples() {
        let f = scalar(&[1, 2]);
        let id = Map::identity(ModShape::new(1, 2));
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);
        let g = scalar(&[3, -1]);
        let expect = trunc(&[1, 2]).mul(&trunc(&[3, -1])).unwrap();
        assert_eq!(f.compose(&g).unwrap(), Map::scalar(1, &expect));
    }

    #[test]
    fn trace_examples() {
        let s = ModShape::new(3, 2);
        assert_eq!(Map::identity(s).trace_r().unwrap(), trunc(&[3, 0]));
        assert_eq!(Map::eps(ModShape::new(1, 2)).trace_r().unwrap(), trunc(&[0, 1]));
        let xi0 = M::from_i64(&[&[1, 0], &[0, 2]]);
        let xi1 = M::from_i64(&[&[1, 0], &[0, 0]]);
        let s2 = ModShape::new(2, 2);
        let diag = Map::from_poly(s2, s2, 2, &[xi0, xi1]).unwrap();
        assert_eq!(diag.trace_r().unwrap(), trunc(&[3, 1]));
        let not_end = Map::zero(ModShape::new(1, 2), ModShape::new(2, 2), 2).unwrap();
        assert!(matches!(not_end.trace_r(), Err(Error::NotEndomorphism)));
    }

    #[test]
    fn pair_examples() {
        for d in 1..4 {
            let id = Map::identity(ModShape::new(2, d));
            let expect = if d == 1 { q(2) } else { q(0) };
            assert_eq!(pair(&id, &id, d).unwrap(), expect);
            let top = Map::new(ModShape::new(1, d), ModShape::new(1, d), d, eps_power(ModShape::new(1, d), d - 1)).unwrap();
            assert_eq!(pair(&top, &Map::identity(ModShape::new(1, d)), d).unwrap(), q(1));
        }
        assert_eq!(pair(&scalar(&[1, 2]), &scalar(&[3, 1]), 2).unwrap(), q(7));
    }

    #[test]
    fn pr_examples() {
        let s = ModShape::new(1, 2);
        let z = Map::new(s, s, 1, M::from_i64(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(pr_cd(&z, 1).unwrap(), scalar(&[2, 5]));
        assert_eq!(pr_cd(&Map::identity(s).with_base(1).unwrap(), 1).unwrap(), scalar(&[0, 2]));
        let w = scalar(&[4, 7]);
        assert_eq!(pr_cd(&w, 2).unwrap(), w);
    }

    #[test]
    fn extend_examples() {
        // X: C -> R_2 given by the column (x0, x1)
        let x = Map::new(ModShape::new(1, 1), ModShape::new(1, 2), 1, M::from_i64(&[&[5], &[7]])).unwrap();
        let xr = extend_scalars(&x).unwrap();
        assert_eq!(xr, scalar(&[5, 7]));
        assert_eq!(restrict_scalars(&xr, 1).unwrap(), x);

        let y = Map::new(ModShape::new(1, 2), ModShape::new(1, 1), 1, M::from_i64(&[&[5, 7]])).unwrap();
        let yr = extend_scalars_rev(&y).unwrap();
        assert_eq!(yr, scalar(&[7, 5]));
        assert_eq!(restrict_scalars_rev(&yr, 1).unwrap(), y);

        let ab = restrict_scalars_rev(&scalar(&[2, 9]), 1).unwrap();
        assert_eq!(ab.flat(), &M::from_i64(&[&[9, 2]]));

        let same = scalar(&[1, 3]);
        assert_eq!(extend_scalars(&same).unwrap(), same);
        assert_eq!(extend_scalars_rev(&same).unwrap(), same);
        let zero = Map::zero(ModShape::new(2, 1), ModShape::new(3, 3), 1).unwrap();
        assert!(extend_scalars(&zero).unwrap().is_zero());
    }

    #[test]
    fn poly_round_trip() {
        let src = ModShape::new(1, 4);
        let dst = ModShape::new(2, 2);
        let xi0 = M::from_i64(&[&[1, 2], &[3, 4]]);
        let xi1 = M::from_i64(&[&[0, 1], &[-1, 5]]);
        let m = Map::from_poly(src, dst, 2, &[xi0.clone(), xi1.clone()]).unwrap();
        assert_eq!(m.poly(), vec![xi0, xi1]);
        assert!(m.is_linear_over(2));
        assert!(m.is_linear_over(1));
    }
}
