//! Semisimple coadjoint orbits `𝒪_Θ ⊂ g_d(V)` and their presentation through
//! a `d`-leg, plus the shifting-trick decomposition `A = ε^{d-1}A_{d-1} + A⁰`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rmatrix::{extend_scalars, extend_scalars_rev, restrict_scalars, restrict_scalars_rev, ModShape, RMap};
use crate::rng::{self, Rng, Sample};
use crate::scalars::{Field, TruncScalar};

/// `Θ = ⊕_i θ_i Id_{W_i ⊗ R_d}` with `θ_i − θ_j` a unit for `i ≠ j`.
#[derive(Clone, PartialEq, Debug)]
pub struct OrbitSpec<F> {
    d: usize,
    blocks: Vec<(usize, TruncScalar<F>)>,
}

impl<F: Field> OrbitSpec<F> {
    pub fn new(d: usize, blocks: Vec<(usize, TruncScalar<F>)>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSpec("order must be positive".into()));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("at least one block is required".into()));
        }
        for (k, (_, t)) in blocks.iter().enumerate() {
            if t.order() != d {
                return Err(Error::InvalidSpec(format!("theta #{k} has order {}, expected {d}", t.order())));
            }
        }
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                if !blocks[a].1.sub(&blocks[b].1)?.is_unit() {
                    return Err(Error::InvalidSpec(format!("theta #{a} - theta #{b} is not a unit")));
                }
            }
        }
        Ok(OrbitSpec { d, blocks })
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[(usize, TruncScalar<F>)] {
        &self.blocks
    }

    pub fn theta(&self, i: usize) -> &TruncScalar<F> {
        &self.blocks[i].1
    }

    /// Length `l` of the leg; there are `l + 1` blocks.
    pub fn leg_length(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.0).sum()
    }

    /// `dim V_i = Σ_{j≥i} dim W_j`, for `i = 0..=l`.
    pub fn leg_dims(&self) -> Vec<usize> {
        (0..self.blocks.len()).map(|i| self.blocks[i..].iter().map(|b| b.0).sum()).collect()
    }

    pub fn shape(&self) -> ModShape {
        ModShape::new(self.rank(), self.d)
    }

    /// The matrix `Θ`.
    pub fn theta_matrix(&self) -> RMap<F> {
        let n = self.rank();
        let mut coeffs = vec![Matrix::zeros(n, n); self.d];
        let mut at = 0;
        for (w, t) in &self.blocks {
            for (k, c) in t.coeffs().iter().enumerate() {
                for r in at..at + w {
                    coeffs[k][(r, r)] = c.clone();
                }
            }
            at += w;
        }
        RMap::from_poly(self.shape(), self.shape(), self.d, &coeffs).expect("well formed")
    }

    /// `λ_i = θ_i − θ_{i−1}` for `i = 1..=l`.
    pub fn leg_params(&self) -> Vec<TruncScalar<F>> {
        (1..self.blocks.len()).map(|i| self.blocks[i].1.sub(&self.blocks[i - 1].1).expect("same order")).collect()
    }

    fn scalar(&self, t: &TruncScalar<F>) -> RMap<F> {
        RMap::scalar(self.rank(), t)
    }
}

/// Outcome of an orbit membership test, with the idempotents `π_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct Membership<F> {
    pub member: bool,
    pub projectors: Vec<RMap<F>>,
    /// First condition that failed, if any.
    pub failure: Option<String>,
}

fn check_rend<F: Field>(spec: &OrbitSpec<F>, a: &RMap<F>) -> Result<()> {
    if a.src() != spec.shape() || !a.is_rend() {
        return Err(Error::ShapeMismatch(format!(
            "expected an endomorphism of rank {} over R_{}",
            spec.rank(),
            spec.order()
        )));
    }
    Ok(())
}

/// `π_i = Π_{j≠i}(θ_i − θ_j)⁻¹ Π_{j≠i}(A − θ_j)`.
pub fn idempotents<F: Field>(spec: &OrbitSpec<F>, a: &RMap<F>) -> Result<Vec<RMap<F>>> {
    check_rend(spec, a)?;
    let l1 = spec.blocks.len();
    let mut out = Vec::with_capacity(l1);
    for i in 0..l1 {
        let mut p = RMap::identity(spec.shape());
        let mut coeff = TruncScalar::one(spec.d);
        for j in 0..l1 {
            if j == i {
                continue;
            }
            p = p.compose(&a.sub(&spec.scalar(spec.theta(j)))?)?;
            coeff = coeff.mul(&spec.theta(i).sub(spec.theta(j))?.inv()?)?;
        }
        out.push(spec.scalar(&coeff).compose(&p)?);
    }
    Ok(out)
}

/// Tests `A ∈ 𝒪_Θ`: `Π_j(A − θ_j) = 0`, the `π_i` are orthogonal idempotents
/// summing to the identity, `A π_i = θ_i π_i`, and `π_i` has residue rank `dim W_i`.
pub fn orbit_membership<F: Field>(spec: &OrbitSpec<F>, a: &RMap<F>) -> Result<Membership<F>> {
    check_rend(spec, a)?;
    let fail = |projectors: Vec<RMap<F>>, msg: String| Ok(Membership { member: false, projectors, failure: Some(msg) });
    let mut prod = RMap::identity(spec.shape());
    for (_, t) in &spec.blocks {
        prod = prod.compose(&a.sub(&spec.scalar(t))?)?;
    }
    let pis = idempotents(spec, a)?;
    if !prod.is_zero() {
        return fail(pis, "product of (A - theta_j) is not zero".into());
    }
    let mut sum = RMap::zero(spec.shape(), spec.shape(), spec.d)?;
    for (i, p) in pis.iter().enumerate() {
        for (j, q) in pis.iter().enumerate() {
            let pq = p.compose(q)?;
            let ok = if i == j { pq == *p } else { pq.is_zero() };
            if !ok {
                return fail(pis.clone(), format!("pi_{i} pi_{j} violates orthogonal idempotence"));
            }
        }
        sum = sum.add(p)?;
        if a.compose(p)? != spec.scalar(spec.theta(i)).compose(p)? {
            return fail(pis.clone(), format!("A pi_{i} != theta_{i} pi_{i}"));
        }
        let r = p.residue_matrix().rank();
        if r != spec.blocks[i].0 {
            return fail(pis.clone(), format!("pi_{i} has residue rank {r}, expected {}", spec.blocks[i].0));
        }
    }
    if sum != RMap::identity(spec.shape()) {
        return fail(pis, "projectors do not sum to the identity".into());
    }
    Ok(Membership { member: true, projectors: pis, failure: None })
}

/// A point of the leg space: `R_d`-maps `B_{i+1,i}: V_i → V_{i+1}` and
/// `B_{i,i+1}: V_{i+1} → V_i` for `i = 0..l`, with `V_0 = V`, together with
/// the base-field maps `a: V → V_1 ⊗ R_d`, `b: V_1 ⊗ R_d → V` whose scalar
/// extensions are `B_{1,0}`, `B_{0,1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct LegPoint<F> {
    /// `down[i] = B_{i+1,i}`.
    pub down: Vec<RMap<F>>,
    /// `up[i] = B_{i,i+1}`.
    pub up: Vec<RMap<F>>,
    pub a: RMap<F>,
    pub b: RMap<F>,
}

impl<F: Field> LegPoint<F> {
    /// Builds the point from its `R_d`-linear maps, deriving `a` and `b`.
    pub fn from_maps(down: Vec<RMap<F>>, up: Vec<RMap<F>>) -> Result<Self> {
        if down.is_empty() || down.len() != up.len() {
            return Err(Error::ShapeMismatch("leg needs matching nonempty down/up lists".into()));
        }
        let a = restrict_scalars(&down[0], 1)?;
        let b = restrict_scalars_rev(&up[0], 1)?;
        Ok(LegPoint { down, up, a, b })
    }

    /// Builds the point from `a`, `b` and the maps at vertices `≥ 1`.
    pub fn from_ab(a: RMap<F>, b: RMap<F>, down_rest: Vec<RMap<F>>, up_rest: Vec<RMap<F>>) -> Result<Self> {
        let mut down = vec![extend_scalars(&a)?];
        down.extend(down_rest);
        let mut up = vec![extend_scalars_rev(&b)?];
        up.extend(up_rest);
        if down.len() != up.len() {
            return Err(Error::ShapeMismatch("leg needs matching down/up lists".into()));
        }
        Ok(LegPoint { down, up, a, b })
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    /// `ν(B) = −B_{0,1} B_{1,0} + θ_0 Id`.
    pub fn nu(&self, theta0: &TruncScalar<F>) -> Result<RMap<F>> {
        let bb = self.up[0].compose(&self.down[0])?;
        bb.neg().add(&RMap::scalar(bb.src().rank, theta0))
    }

    /// `μ̃_i(B) = B_{i,i−1}B_{i−1,i} − B_{i,i+1}B_{i+1,i}` for `i = 1..=l`.
    pub fn leg_moment(&self) -> Result<Vec<RMap<F>>> {
        let l = self.len();
        (1..=l)
            .map(|i| {
                let inn = self.down[i - 1].compose(&self.up[i - 1])?;
                if i < l {
                    inn.sub(&self.up[i].compose(&self.down[i])?)
                } else {
                    Ok(inn)
                }
            })
            .collect()
    }

    /// `μ̃_i(B) + λ_i Id` at each leg vertex.
    pub fn leg_residuals(&self, spec: &OrbitSpec<F>) -> Result<Vec<RMap<F>>> {
        let lam = spec.leg_params();
        self.leg_moment()?
            .into_iter()
            .zip(&lam)
            .map(|(m, l)| m.add(&RMap::scalar(m.src().rank, l)))
            .collect()
    }

    /// Residue-rank check that every `B_{i,i+1}` is injective and every
    /// `B_{i+1,i}` surjective.
    pub fn ranks_ok(&self) -> bool {
        self.down.iter().zip(&self.up).all(|(dn, up)| {
            let target = dn.dst().rank;
            dn.residue_matrix().rank() == target && up.residue_matrix().rank() == target
        })
    }
}

/// Inclusion of the last `rank` coordinates of a rank-`big` module.
fn tail_inclusion<F: Field>(big: usize, rank: usize, d: usize) -> RMap<F> {
    let m = Matrix::from_fn(big, rank, |r, c| if r == c + big - rank { F::one() } else { F::zero() });
    RMap::from_poly(ModShape::new(rank, d), ModShape::new(big, d), d, &[m]).expect("well formed")
}

fn tail_projection<F: Field>(big: usize, rank: usize, d: usize) -> RMap<F> {
    let m = Matrix::from_fn(rank, big, |r, c| if c == r + big - rank { F::one() } else { F::zero() });
    RMap::from_poly(ModShape::new(big, d), ModShape::new(rank, d), d, &[m]).expect("well formed")
}

/// The point `B⁰` with inclusions `B⁰_{i,i+1}` and `B⁰_{i+1,i} = (−Θ + θ_i)|`.
pub fn canonical_leg_point<F: Field>(spec: &OrbitSpec<F>) -> Result<LegPoint<F>> {
    let dims = spec.leg_dims();
    let d = spec.d;
    let theta = spec.theta_matrix();
    let n = spec.rank();
    let mut down = Vec::new();
    let mut up = Vec::new();
    for i in 0..spec.leg_length() {
        let shift = spec.scalar(spec.theta(i)).sub(&theta)?;
        let into_vi = tail_inclusion::<F>(n, dims[i], d);
        let onto = tail_projection::<F>(n, dims[i + 1], d);
        down.push(onto.compose(&shift)?.compose(&into_vi)?);
        up.push(tail_inclusion(dims[i], dims[i + 1], d));
    }
    LegPoint::from_maps(down, up)
}

/// `R_d`-linear map whose columns are the given `R_d`-columns of `m`.
fn columns_of<F: Field>(m: &RMap<F>, cols: &[usize]) -> Result<RMap<F>> {
    let d = m.src().order;
    let flat_cols: Vec<usize> = cols.iter().flat_map(|&p| (0..d).map(move |k| p * d + k)).collect();
    let rows: Vec<usize> = (0..m.dst().dim()).collect();
    RMap::new(ModShape::new(cols.len(), d), m.dst(), d, m.flat().select(&rows, &flat_cols))
}

/// `R_d`-linear map selecting the given `R_d`-rows.
fn row_selection<F: Field>(rank: usize, rows: &[usize], d: usize) -> RMap<F> {
    let m = Matrix::from_fn(rows.len(), rank, |r, c| if rows[r] == c { F::one() } else { F::zero() });
    RMap::from_poly(ModShape::new(rank, d), ModShape::new(rows.len(), d), d, &[m]).expect("well formed")
}

/// Free basis of the image of an idempotent `e` over the local ring `R_d`.
///
/// Returns `U` (injective, image `Im e`) and a left inverse `L` with `LU = Id`.
/// The basis is the set of columns of `e` at the lexicographically first pivot
/// columns of `e mod ε`, which is a basis by Nakayama's lemma.
pub fn free_basis<F: Field>(e: &RMap<F>) -> Result<(RMap<F>, RMap<F>)> {
    let d = e.src().order;
    let cols = e.residue_matrix().pivot_columns();
    let u = columns_of(e, &cols)?;
    let rows = u.residue_matrix().pivot_rows();
    let sel = row_selection::<F>(u.dst().rank, &rows, d);
    let square = sel.compose(&u)?;
    let left = square.inverse()?.compose(&sel)?;
    Ok((u, left))
}

/// Factors `A ∈ 𝒪_Θ` through the leg: returns `B` with `ν(B) = A` and
/// `μ̃(B) = −λ Id`, pinned by the lexicographic basis rule of [`free_basis`].
pub fn leg_factorize<F: Field>(spec: &OrbitSpec<F>, a: &RMap<F>) -> Result<LegPoint<F>> {
    let mem = orbit_membership(spec, a)?;
    if !mem.member {
        return Err(Error::NotInOrbit);
    }
    if spec.leg_length() == 0 {
        return Err(Error::InvalidSpec("a leg needs at least two blocks".into()));
    }
    let dims = spec.leg_dims();
    let pis = mem.projectors;
    let l = spec.leg_length();
    // U_i: V_i ⊗ R_d ≅ 𝕍_i = Im Σ_{j≥i} π_j, with left inverses L_i
    let mut us = vec![RMap::identity(spec.shape())];
    let mut ls = vec![RMap::identity(spec.shape())];
    for i in 1..=l {
        let mut e = pis[i].clone();
        for p in &pis[i + 1..] {
            e = e.add(p)?;
        }
        let (u, left) = free_basis(&e)?;
        if u.src().rank != dims[i] {
            return Err(Error::NotInOrbit);
        }
        us.push(u);
        ls.push(left);
    }
    let mut down = Vec::with_capacity(l);
    let mut up = Vec::with_capacity(l);
    for i in 0..l {
        let shift = spec.scalar(spec.theta(i)).sub(a)?;
        down.push(ls[i + 1].compose(&shift)?.compose(&us[i])?);
        up.push(ls[i].compose(&us[i + 1])?);
    }
    LegPoint::from_maps(down, up)
}

/// Random element `g Θ g⁻¹` of the orbit.
pub fn random_conjugate<F: Sample>(spec: &OrbitSpec<F>, r: &mut Rng) -> RMap<F> {
    let g = rng::random_gauge::<F>(r, spec.rank(), spec.d);
    let gi = g.inverse().expect("gauge is invertible");
    g.compose(&spec.theta_matrix()).and_then(|x| x.compose(&gi)).expect("shapes agree")
}

/// Random `g (Θ + P) g⁻¹` with `P` chosen so the result leaves the orbit:
/// either a nilpotent inside a block of size ≥ 2, or `c ε^k E_11`.
pub fn random_non_member<F: Sample>(spec: &OrbitSpec<F>, r: &mut Rng) -> RMap<F> {
    use rand::RngExt;
    let n = spec.rank();
    let d = spec.d;
    let mut coeffs = vec![Matrix::zeros(n, n); d];
    let mut at = 0;
    let mut big = None;
    for (w, _) in &spec.blocks {
        if *w >= 2 {
            big = Some(at);
        }
        at += w;
    }
    match big {
        Some(start) if r.random_bool(0.5) => {
            let k = r.random_range(0..d);
            coeffs[k][(start, start + 1)] = F::one();
        }
        _ => {
            let k = r.random_range(0..d);
            let first = spec.blocks.iter().scan(0, |s, b| {
                let cur = *s;
                *s += b.0;
                Some((cur, b.0))
            });
            let row = first.filter(|b| b.1 > 0).map(|b| b.0).next().unwrap_or(0);
            let mut c = F::sample(r);
            while c.is_zero() {
                c = F::sample(r);
            }
            coeffs[k][(row, row)] = c;
        }
    }
    let p = RMap::from_poly(spec.shape(), spec.shape(), d, &coeffs).expect("well formed");
    let g = rng::random_gauge::<F>(r, n, d);
    let gi = g.inverse().expect("gauge is invertible");
    g.compose(&spec.theta_matrix().add(&p).expect("same shape"))
        .and_then(|x| x.compose(&gi))
        .expect("shapes agree")
}

/// Base-field dimension of `𝒪_Θ`, computed as `d n² − dim ker ad_Θ` on
/// `gl(V) ⊗ R_d`, next to the closed form `d (n² − Σ (dim W_i)²)`.
pub fn orbit_dimension<F: Field>(spec: &OrbitSpec<F>) -> (usize, usize) {
    let n = spec.rank();
    let d = spec.d;
    let theta = spec.theta_matrix();
    let shape = spec.shape();
    let total = d * n * n;
    let mut cols = Vec::with_capacity(total);
    for k in 0..d {
        for a in 0..n {
            for b in 0..n {
                let mut coeffs = vec![Matrix::zeros(n, n); d];
                coeffs[k][(a, b)] = F::one();
                let x = RMap::from_poly(shape, shape, d, &coeffs).expect("well formed");
                let ad = theta.compose(&x).and_then(|tx| tx.sub(&x.compose(&theta)?)).expect("same shape");
                cols.push(ad.poly().into_iter().flat_map(|m| m.to_rows().into_iter().flatten()).collect::<Vec<F>>());
            }
        }
    }
    let m = Matrix::from_rows(cols, total).expect("uniform length").transpose();
    let computed = m.rank();
    let formula = d * (n * n - spec.blocks.iter().map(|b| b.0 * b.0).sum::<usize>());
    (computed, formula)
}

/// Splits an endomorphism into its top slice `A_{d−1}` and the rest `A⁰`.
pub fn shift_decompose<F: Field>(a: &RMap<F>) -> Result<(Matrix<F>, RMap<F>)> {
    if !a.is_rend() {
        return Err(Error::NotEndomorphism);
    }
    let mut poly = a.poly();
    let top = poly.pop().expect("order is positive");
    let n = a.src().rank;
    poly.push(Matrix::zeros(n, n));
    let rest = RMap::from_poly(a.src(), a.dst(), a.base(), &poly)?;
    Ok((top, rest))
}

/// `B ↦ B − ε^{d−1}(m + ζ Id)` on elements with zero top slice.
pub fn shift_map<F: Field>(b: &RMap<F>, m: &Matrix<F>, zeta: &F) -> Result<RMap<F>> {
    let (top, _) = shift_decompose(b)?;
    if !top.is_zero() {
        return Err(Error::TopSliceNotZero);
    }
    let n = b.src().rank;
    if m.shape() != (n, n) {
        return Err(Error::ShapeMismatch(format!("shift matrix must be {n}x{n}")));
    }
    let d = b.src().order;
    let mut coeffs = vec![Matrix::zeros(n, n); d];
    coeffs[d - 1] = m.add(&Matrix::scalar(n, zeta.clone()));
    let shift = RMap::from_poly(b.src(), b.dst(), d, &coeffs)?;
    b.sub(&shift)
}
