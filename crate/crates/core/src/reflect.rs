//! The reflection functor `F_i` on representation points.
//!
//! At a vertex `i` a point `B` is split into `B_{i←}: Ṽ_i → V_i ⊗ R_{d_i}`,
//! `B_{←i}: V_i ⊗ R_{d_i} → Ṽ_i` and the maps `B_{≠i}` away from `i`, where
//! `Ṽ_i = ⊕_{t(h)=i} V_h` and `V_h` is spanned by `v ε^l`, `v` in a basis of
//! `V_{s(h)}`, `l < f_h̄`. Inside `Ṽ_i`, block `h` has basis index `j f_h̄ + l`.

use crate::error::{Error, Result};
use crate::orbit::{canonical_leg_point, free_basis, OrbitSpec};
use crate::quiver::{DoubleQuiver, QuiverMult};
use crate::repn::{arrow_shapes, dims_from_i64, moment_map, Representation};
use crate::rmatrix::{eps_power, extend_scalars, extend_scalars_rev, restrict_scalars, restrict_scalars_rev, ModShape, RMap};
use crate::rng::{self, Sample};
use crate::linalg::Matrix;
use crate::scalars::{Field, TruncScalar};
use crate::weyl::{check_params, check_vertex, coxeter_order, reflect_dim, reflect_param};

/// The summand `V_h` of `Ṽ_i` coming from half-arrow `half` with `t(half) = i`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Block {
    pub half: usize,
    pub src: usize,
    /// `f_h̄`, the number of `ε`-powers per basis vector of `V_{s(h)}`.
    pub fbar: usize,
    pub rank: usize,
}

/// Half-arrows into `i` and the blocks of `Ṽ_i` they contribute.
pub fn blocks(q: &QuiverMult, i: usize, v: &[usize]) -> Vec<Block> {
    q.double()
        .halves
        .iter()
        .enumerate()
        .filter(|(_, h)| h.dst == i)
        .map(|(k, h)| {
            let fbar = q.mult(h.src) / h.d;
            Block { half: k, src: h.src, fbar, rank: v[h.src] * fbar }
        })
        .collect()
}

/// `dim Ṽ_i = Σ_{t(h)=i} f_h̄ v_{s(h)}`.
pub fn tilde_rank(q: &QuiverMult, i: usize, v: &[usize]) -> usize {
    blocks(q, i, v).iter().map(|b| b.rank).sum()
}

/// A point written as `(B_{i←}, B_{←i}, B_{≠i})`.
#[derive(Clone, PartialEq, Debug)]
pub struct SplitAtVertex<F> {
    pub vertex: usize,
    pub dims: Vec<usize>,
    pub blocks: Vec<Block>,
    /// `B_{i←} = (sgn(h) α_h⁻¹(B_h))_h`, base-field linear `Ṽ_i → V_i ⊗ R_{d_i}`.
    pub into: RMap<F>,
    /// `B_{←i} = (β_h̄⁻¹(B_h̄))_h`, base-field linear `V_i ⊗ R_{d_i} → Ṽ_i`.
    pub out: RMap<F>,
    /// Maps of half-arrows not touching `i`, by half-arrow index.
    pub rest: Vec<(usize, RMap<F>)>,
}

fn signed<F: Field>(m: Matrix<F>, sgn: i64) -> Matrix<F> {
    if sgn > 0 {
        m
    } else {
        m.neg()
    }
}

pub fn split<F: Field>(q: &QuiverMult, rep: &Representation<F>, i: usize) -> Result<SplitAtVertex<F>> {
    check_vertex(q, i)?;
    let v = rep.dims();
    let dq = q.double();
    let di = q.mult(i);
    let vi = ModShape::new(v[i], di);
    let bs = blocks(q, i, v);
    let mut into_parts = Vec::with_capacity(bs.len());
    let mut out_parts = Vec::with_capacity(bs.len());
    for b in &bs {
        let h = &dq.halves[b.half];
        let ds = q.mult(b.src);
        let idx: Vec<(usize, usize)> = (0..v[b.src]).flat_map(|j| (0..b.fbar).map(move |l| (j, l))).collect();
        let cols: Vec<usize> = idx.iter().map(|&(j, l)| j * ds + l).collect();
        let all_i: Vec<usize> = (0..vi.dim()).collect();
        into_parts.push(signed(rep.map(b.half).flat().select(&all_i, &cols), h.sgn));
        let top = (h.d - 1) * b.fbar;
        let rows: Vec<usize> = idx.iter().map(|&(j, l)| j * ds + l + top).collect();
        out_parts.push(rep.map(DoubleQuiver::bar(b.half)).flat().select(&rows, &all_i));
    }
    let tr = bs.iter().map(|b| b.rank).sum();
    let tilde = ModShape::new(tr, 1);
    let into = RMap::new(tilde, vi, 1, Matrix::hstack(&into_parts, vi.dim()))?;
    let out = RMap::new(vi, tilde, 1, Matrix::vstack(&out_parts, vi.dim()))?;
    let rest = dq
        .halves
        .iter()
        .enumerate()
        .filter(|(_, h)| h.src != i && h.dst != i)
        .map(|(k, _)| (k, rep.map(k).clone()))
        .collect();
    Ok(SplitAtVertex { vertex: i, dims: v.to_vec(), blocks: bs, into, out, rest })
}

/// Reassembles a point; the dimension at the split vertex is read off `into`.
pub fn unsplit<F: Field>(q: &QuiverMult, s: &SplitAtVertex<F>) -> Result<Representation<F>> {
    let i = s.vertex;
    let mut v = s.dims.clone();
    v[i] = s.into.dst().rank;
    if s.out.src().rank != v[i] || s.into.src().rank != s.out.dst().rank {
        return Err(Error::ShapeMismatch("split maps disagree on dimensions".into()));
    }
    let dq = q.double();
    let di = q.mult(i);
    let vi = ModShape::new(v[i], di);
    let shapes = arrow_shapes(q, &v);
    let mut maps: Vec<Option<RMap<F>>> = vec![None; dq.len()];
    for (k, m) in &s.rest {
        maps[*k] = Some(m.clone());
    }
    let mut at = 0;
    for b in &s.blocks {
        let h = &dq.halves[b.half];
        let ds = q.mult(b.src);
        let src = ModShape::new(v[b.src], ds);
        let all_i: Vec<usize> = (0..vi.dim()).collect();
        let block_cols: Vec<usize> = (at..at + b.rank).collect();
        let x = signed(s.into.flat().select(&all_i, &block_cols), h.sgn);
        let y = s.out.flat().select(&block_cols, &all_i);
        let mut bh = Matrix::zeros(vi.dim(), src.dim());
        let mut bbar = Matrix::zeros(src.dim(), vi.dim());
        for m in 0..h.d {
            let xm = eps_power::<F>(vi, m * h.f).mul(&x);
            let ym = y.mul(&eps_power(vi, h.f * (h.d - 1 - m)));
            for j in 0..v[b.src] {
                for l in 0..b.fbar {
                    let flat_idx = j * ds + l + m * b.fbar;
                    let block_idx = j * b.fbar + l;
                    for r in 0..vi.dim() {
                        bh[(r, flat_idx)] = xm[(r, block_idx)].clone();
                        bbar[(flat_idx, r)] = ym[(block_idx, r)].clone();
                    }
                }
            }
        }
        let (s1, t1, c1) = shapes[b.half];
        maps[b.half] = Some(RMap::new(s1, t1, c1, bh)?);
        let bar = DoubleQuiver::bar(b.half);
        let (s2, t2, c2) = shapes[bar];
        maps[bar] = Some(RMap::new(s2, t2, c2, bbar)?);
        at += b.rank;
    }
    let maps = maps.into_iter().map(|m| m.expect("every half-arrow is covered")).collect();
    Representation::new(q, v, maps)
}

/// `(B_{i←}^{R}, B_{←i}^{R})`, the `R_{d_i}`-linear extensions.
pub fn extended<F: Field>(s: &SplitAtVertex<F>) -> Result<(RMap<F>, RMap<F>)> {
    Ok((extend_scalars(&s.into)?, extend_scalars_rev(&s.out)?))
}

/// `Φ_i(B) = (−B_{←i}^{R} B_{i←}^{R}, B_{≠i})`.
#[derive(Clone, PartialEq, Debug)]
pub struct PhiImage<F> {
    pub a: RMap<F>,
    pub rest: Vec<(usize, RMap<F>)>,
}

pub fn phi_of_split<F: Field>(s: &SplitAtVertex<F>) -> Result<PhiImage<F>> {
    let (into, out) = extended(s)?;
    Ok(PhiImage { a: out.compose(&into)?.neg(), rest: s.rest.clone() })
}

pub fn phi<F: Field>(q: &QuiverMult, rep: &Representation<F>, i: usize) -> Result<PhiImage<F>> {
    phi_of_split(&split(q, rep, i)?)
}

fn new_dim(q: &QuiverMult, i: usize, v: &[usize]) -> Result<usize> {
    let vi: Vec<i64> = v.iter().map(|&x| x as i64).collect();
    let s = reflect_dim(q, i, &vi)?[i];
    usize::try_from(s).map_err(|_| Error::EmptyLevelSet(s))
}

/// `F_i(B)` on `s_i(v)`, for `B` with `μ_{V,i}(B) = −λ_i Id` and `λ_i` a unit.
///
/// `V′_i` is realized as `Im e` for `e = −λ_i⁻¹(A − λ_i)`, with the basis
/// picked by [`free_basis`]; the output is one representative of its gauge class.
pub fn reflection_functor<F: Field>(
    q: &QuiverMult,
    rep: &Representation<F>,
    i: usize,
    lambda: &[TruncScalar<F>],
) -> Result<Representation<F>> {
    check_vertex(q, i)?;
    check_params(q, lambda)?;
    let li = &lambda[i];
    if !li.is_unit() {
        return Err(Error::NotAUnit);
    }
    let target = new_dim(q, i, rep.dims())?;
    let mu = &moment_map(q, rep)?[i];
    if *mu != RMap::scalar(rep.dims()[i], &li.neg()) {
        return Err(Error::NotInLevelSet);
    }
    let s = split(q, rep, i)?;
    let a = phi_of_split(&s)?.a;
    let tr = a.src().rank;
    let shifted = a.sub(&RMap::scalar(tr, li))?;
    let e = RMap::scalar(tr, &li.inv()?.neg()).compose(&shifted)?;
    let (u, left) = free_basis(&e)?;
    if u.src().rank != target {
        return Err(Error::NotInLevelSet);
    }
    let new_into = RMap::scalar(target, li).compose(&left)?.compose(&e)?;
    let out = SplitAtVertex {
        into: restrict_scalars(&new_into, 1)?,
        out: restrict_scalars_rev(&u, 1)?,
        ..s
    };
    unsplit(q, &out)
}

/// Outcome of comparing the two alternating words `F_i F_j F_i ⋯` and
/// `F_j F_i F_j ⋯` of length `m_ij`. Experimental: the braid relations for
/// the `F_i` are not known to hold, so nothing here is asserted.
#[derive(Clone, PartialEq, Debug)]
pub struct BraidReport {
    pub m: u32,
    pub left_dims: Vec<i64>,
    pub right_dims: Vec<i64>,
    /// `tr(B_h̄ B_h)` over `R_{d_h}` for every half-arrow, compared between the words.
    pub invariants: Vec<(String, bool)>,
}

impl BraidReport {
    pub fn agrees(&self) -> bool {
        self.left_dims == self.right_dims && self.invariants.iter().all(|c| c.1)
    }
}

fn alternate<F: Field>(
    q: &QuiverMult,
    rep: &Representation<F>,
    lambda: &[TruncScalar<F>],
    first: usize,
    second: usize,
    m: u32,
) -> Result<Representation<F>> {
    let (mut b, mut lam) = (rep.clone(), lambda.to_vec());
    for step in 0..m {
        let k = if step % 2 == 0 { first } else { second };
        b = reflection_functor(q, &b, k, &lam)?;
        lam = reflect_param(q, k, &lam)?;
    }
    Ok(b)
}

fn cycle_traces<F: Field>(q: &QuiverMult, rep: &Representation<F>) -> Result<Vec<TruncScalar<F>>> {
    let dq = q.double();
    (0..dq.len())
        .map(|h| rep.map(DoubleQuiver::bar(h)).compose(rep.map(h))?.trace_over(dq.halves[h].d))
        .collect()
}

/// Applies both alternating words of length `m_ij` to a point of the full
/// level set for `λ`; `None` when `m_ij = ∞`.
pub fn braid_experiment<F: Field>(
    q: &QuiverMult,
    rep: &Representation<F>,
    i: usize,
    j: usize,
    lambda: &[TruncScalar<F>],
) -> Result<Option<BraidReport>> {
    let Some(m) = coxeter_order(q, i, j)? else {
        return Ok(None);
    };
    let left = alternate(q, rep, lambda, i, j, m)?;
    let right = alternate(q, rep, lambda, j, i, m)?;
    let dq = q.double();
    let same_dims = left.dims() == right.dims();
    let invariants = if same_dims {
        let (a, b) = (cycle_traces(q, &left)?, cycle_traces(q, &right)?);
        (0..dq.len())
            .map(|h| {
                let name = format!("tr B_{} B_{}", dq.halves[DoubleQuiver::bar(h)].name, dq.halves[h].name);
                (name, a[h] == b[h])
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(Some(BraidReport { m, left_dims: left.dims_i64(), right_dims: right.dims_i64(), invariants }))
}

/// Pseudo-random `B` with `μ_{V,i}(B) = −λ_i Id`.
///
/// `(B_{i←}, B_{←i})` is the canonical point of the one-step leg with
/// `W_0 = V′_i`, `θ_0 = 0` and `W_1 = V_i`, `θ_1 = λ_i`, moved by random
/// `g ∈ G_{d_i}(Ṽ_i)` and `h ∈ G_{d_i}(V_i)`; the maps away from `i` are random.
pub fn random_level_point<F: Sample>(
    q: &QuiverMult,
    lambda: &[TruncScalar<F>],
    v: &[i64],
    i: usize,
    seed: u64,
) -> Result<Representation<F>> {
    check_vertex(q, i)?;
    check_params(q, lambda)?;
    let li = &lambda[i];
    if !li.is_unit() {
        return Err(Error::NotAUnit);
    }
    let s = reflect_dim(q, i, v)?[i];
    let dims = dims_from_i64(v)?;
    let complement = usize::try_from(s).map_err(|_| Error::EmptyLevelSet(s))?;
    let d = q.mult(i);
    let mut r = rng::rng(seed);
    let base = crate::repn::random_rep_with(q, dims.clone(), &mut r);
    let spec = OrbitSpec::new(d, vec![(complement, TruncScalar::zero(d)), (dims[i], li.clone())])?;
    let b0 = canonical_leg_point(&spec)?;
    let g = rng::random_gauge::<F>(&mut r, spec.rank(), d);
    let h = rng::random_gauge::<F>(&mut r, dims[i], d);
    let into = h.compose(&b0.down[0])?.compose(&g.inverse()?)?;
    let out = g.compose(&b0.up[0])?.compose(&h.inverse()?)?;
    let mut sp = split(q, &base, i)?;
    sp.into = restrict_scalars(&into, 1)?;
    sp.out = restrict_scalars_rev(&out, 1)?;
    unsplit(q, &sp)
}

/// The automorphism of `Ṽ_i ⊗ R_{d_i}` induced by a gauge element `g`, so that
/// `Φ_i(g·B)` has first component `g̃ A g̃⁻¹` when `Φ_i(B)` has `A`.
pub fn induced_gauge<F: Field>(q: &QuiverMult, i: usize, v: &[usize], g: &[RMap<F>]) -> Result<RMap<F>> {
    check_vertex(q, i)?;
    q.check_len(g.len())?;
    let di = q.mult(i);
    let dq = q.double();
    let mut parts = Vec::new();
    for b in blocks(q, i, v) {
        let h = &dq.halves[b.half];
        let ds = q.mult(b.src);
        let gs = &g[b.src];
        if gs.src() != ModShape::new(v[b.src], ds) || !gs.is_rend() {
            return Err(Error::ShapeMismatch(format!("gauge at vertex {} has the wrong shape", q.name(b.src))));
        }
        let dst = ModShape::new(b.rank, di);
        let mut x = Matrix::zeros(dst.dim(), b.rank);
        for j in 0..v[b.src] {
            for l in 0..b.fbar {
                for j2 in 0..v[b.src] {
                    for l2 in 0..b.fbar {
                        for m in 0..h.d {
                            let val = gs.flat()[(j2 * ds + l2 + m * b.fbar, j * ds + l)].clone();
                            x[(dst.index(j2 * b.fbar + l2, m * h.f), j * b.fbar + l)] = val;
                        }
                    }
                }
            }
        }
        parts.push(extend_scalars(&RMap::new(ModShape::new(b.rank, 1), dst, 1, x)?)?.into_flat());
    }
    let tr = tilde_rank(q, i, v);
    let shape = ModShape::new(tr, di);
    RMap::new(shape, shape, di, Matrix::block_diag(&parts))
}

/// Parameters and dimensions after reflecting at `i`.
pub fn reflected_data<F: Field>(
    q: &QuiverMult,
    i: usize,
    lambda: &[TruncScalar<F>],
    v: &[i64],
) -> Result<(Vec<TruncScalar<F>>, Vec<i64>)> {
    Ok((reflect_param(q, i, lambda)?, reflect_dim(q, i, v)?))
}
