//! Locally free representations of the GLS preprojective algebra and the
//! moment map of the gauge action.

use crate::error::{Error, Result};
use crate::quiver::{DoubleQuiver, QuiverMult};
use crate::rmatrix::{pair, pr_cd, ModShape, RMap};
use crate::rng::{self, Sample};
use crate::scalars::{Field, TruncScalar};
use crate::weyl::check_params;

/// A point `B = (B_h)_{h∈H}` of `M_{Q,d}(V)`: one `R_{d_h}`-linear map
/// `V_{s(h)} ⊗ R_{d_{s(h)}} → V_{t(h)} ⊗ R_{d_{t(h)}}` per arrow of the double,
/// indexed as in [`DoubleQuiver`]. Tangent vectors use the same container.
#[derive(Clone, PartialEq, Debug)]
pub struct Representation<F> {
    v: Vec<usize>,
    maps: Vec<RMap<F>>,
}

/// Expected source, target and base of each half-arrow map.
pub fn arrow_shapes(q: &QuiverMult, v: &[usize]) -> Vec<(ModShape, ModShape, usize)> {
    q.double()
        .halves
        .iter()
        .map(|h| (ModShape::new(v[h.src], q.mult(h.src)), ModShape::new(v[h.dst], q.mult(h.dst)), h.d))
        .collect()
}

pub fn dims_from_i64(v: &[i64]) -> Result<Vec<usize>> {
    v.iter().map(|&x| usize::try_from(x).map_err(|_| Error::NegativeDimension)).collect()
}

impl<F: Field> Representation<F> {
    pub fn new(q: &QuiverMult, v: Vec<usize>, maps: Vec<RMap<F>>) -> Result<Self> {
        q.check_len(v.len())?;
        let shapes = arrow_shapes(q, &v);
        if maps.len() != shapes.len() {
            return Err(Error::LengthMismatch { expected: shapes.len(), got: maps.len() });
        }
        let dq = q.double();
        let mut checked = Vec::with_capacity(maps.len());
        for ((m, (src, dst, base)), h) in maps.into_iter().zip(shapes).zip(&dq.halves) {
            if m.src() != src || m.dst() != dst {
                return Err(Error::ShapeMismatch(format!("map for arrow `{}` has the wrong shape", h.name)));
            }
            checked.push(if m.base() == base { m } else { m.with_base(base)? });
        }
        Ok(Representation { v, maps: checked })
    }

    pub fn zero(q: &QuiverMult, v: Vec<usize>) -> Result<Self> {
        q.check_len(v.len())?;
        let maps = arrow_shapes(q, &v)
            .into_iter()
            .map(|(s, t, c)| RMap::zero(s, t, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation { v, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.v
    }

    pub fn dims_i64(&self) -> Vec<i64> {
        self.v.iter().map(|&x| x as i64).collect()
    }

    pub fn maps(&self) -> &[RMap<F>] {
        &self.maps
    }

    pub fn map(&self, h: usize) -> &RMap<F> {
        &self.maps[h]
    }

    pub fn into_maps(self) -> Vec<RMap<F>> {
        self.maps
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&RMap<F>, &RMap<F>) -> Result<RMap<F>>) -> Result<Self> {
        if self.v != other.v {
            return Err(Error::ShapeMismatch("dimension vectors differ".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(Representation { v: self.v.clone(), maps })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub(b))
    }
}

fn check_rep<F: Field>(q: &QuiverMult, rep: &Representation<F>) -> Result<()> {
    q.check_len(rep.v.len())?;
    if rep.maps.len() != 2 * q.arrows().len() {
        return Err(Error::LengthMismatch { expected: 2 * q.arrows().len(), got: rep.maps.len() });
    }
    Ok(())
}

/// `μ_i(B) = Σ_{t(h)=i} sgn(h) Σ_{k<f_h} N_i^k B_h B_h̄ N_i^{f_h−1−k}`.
pub fn moment_map<F: Field>(q: &QuiverMult, rep: &Representation<F>) -> Result<Vec<RMap<F>>> {
    check_rep(q, rep)?;
    let mut mu: Vec<RMap<F>> =
        (0..q.vertex_count()).map(|i| RMap::zero(ModShape::new(rep.v[i], q.mult(i)), ModShape::new(rep.v[i], q.mult(i)), q.mult(i))).collect::<Result<_>>()?;
    for (k, h) in q.double().halves.iter().enumerate() {
        let bb = rep.maps[k].compose(&rep.maps[DoubleQuiver::bar(k)])?;
        let term = pr_cd(&bb, h.d)?;
        let term = if h.sgn > 0 { term } else { term.neg() };
        mu[h.dst] = mu[h.dst].add(&term)?.with_base(q.mult(h.dst))?;
    }
    Ok(mu)
}

/// `μ_i(B) + λ_i Id` at every vertex; all zero iff `B ∈ μ⁻¹(−λ Id)`.
pub fn mesh_check<F: Field>(q: &QuiverMult, rep: &Representation<F>, lambda: &[TruncScalar<F>]) -> Result<Vec<RMap<F>>> {
    check_params(q, lambda)?;
    let mu = moment_map(q, rep)?;
    mu.iter()
        .enumerate()
        .map(|(i, m)| m.add(&RMap::scalar(rep.v[i], &lambda[i])))
        .collect()
}

/// `Σ_i v_i res(λ_i dε/ε^{d_i}) = 0`, necessary for the level set to be nonempty.
pub fn level_check<F: Field>(q: &QuiverMult, lambda: &[TruncScalar<F>], v: &[i64]) -> Result<bool> {
    Ok(level_sum(q, lambda, v)?.is_zero())
}

/// `Σ_i v_i res(λ_i dε/ε^{d_i})`.
pub fn level_sum<F: Field>(q: &QuiverMult, lambda: &[TruncScalar<F>], v: &[i64]) -> Result<F> {
    check_params(q, lambda)?;
    q.check_len(v.len())?;
    Ok(lambda.iter().zip(v).fold(F::zero(), |acc, (l, &vi)| acc + F::from_i64(vi) * l.residue()))
}

/// `Σ_i ⟨tr_{R_{d_i}} μ_i, 1⟩_{d_i}`, which vanishes for every value of the moment map.
pub fn perpendicularity<F: Field>(values: &[RMap<F>]) -> Result<F> {
    values.iter().try_fold(F::zero(), |acc, m| Ok(acc + m.trace_r()?.residue()))
}

/// `ω(t1, t2) = Σ_{h∈Ω} (⟨t1_h, t2_h̄⟩_{d_h} − ⟨t2_h, t1_h̄⟩_{d_h})`.
pub fn symplectic_form<F: Field>(q: &QuiverMult, t1: &Representation<F>, t2: &Representation<F>) -> Result<F> {
    check_rep(q, t1)?;
    check_rep(q, t2)?;
    if t1.v != t2.v {
        return Err(Error::ShapeMismatch("tangent vectors have different dimension vectors".into()));
    }
    let dq = q.double();
    let mut acc = F::zero();
    for a in 0..q.arrows().len() {
        let (h, hb) = (2 * a, 2 * a + 1);
        let d = dq.halves[h].d;
        acc = acc + pair(&t1.maps[h], &t2.maps[hb], d)? - pair(&t2.maps[h], &t1.maps[hb], d)?;
    }
    Ok(acc)
}

/// Infinitesimal action `ξ*_B`: `(ξ*_B)_h = ξ_{t(h)} B_h − B_h ξ_{s(h)}`.
pub fn infinitesimal_action<F: Field>(q: &QuiverMult, rep: &Representation<F>, xi: &[RMap<F>]) -> Result<Representation<F>> {
    check_rep(q, rep)?;
    q.check_len(xi.len())?;
    let maps = q
        .double()
        .halves
        .iter()
        .zip(&rep.maps)
        .map(|(h, b)| xi[h.dst].compose(b)?.sub(&b.compose(&xi[h.src])?)?.with_base(h.d))
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation { v: rep.v.clone(), maps })
}

/// Checks `⟨Dμ(B)[δ], ξ⟩ = ω(ξ*_B, δ)`, with the derivative of the quadratic
/// map `μ` computed by polarization `μ(B+δ) − μ(B) − μ(δ)`.
pub fn moment_derivative_check<F: Field>(
    q: &QuiverMult,
    rep: &Representation<F>,
    delta: &Representation<F>,
    xi: &[RMap<F>],
) -> Result<bool> {
    let (lhs, rhs) = moment_derivative_sides(q, rep, delta, xi)?;
    Ok(lhs == rhs)
}

/// Both sides of [`moment_derivative_check`].
pub fn moment_derivative_sides<F: Field>(
    q: &QuiverMult,
    rep: &Representation<F>,
    delta: &Representation<F>,
    xi: &[RMap<F>],
) -> Result<(F, F)> {
    q.check_len(xi.len())?;
    for (i, x) in xi.iter().enumerate() {
        if x.src() != ModShape::new(rep.v[i], q.mult(i)) || !x.is_rend() {
            return Err(Error::ShapeMismatch(format!("ξ at vertex {} has the wrong shape", q.name(i))));
        }
    }
    let sum = moment_map(q, &rep.add(delta)?)?;
    let base = moment_map(q, rep)?;
    let quad = moment_map(q, delta)?;
    let mut lhs = F::zero();
    for i in 0..q.vertex_count() {
        let dmu = sum[i].sub(&base[i])?.sub(&quad[i])?;
        lhs = lhs + pair(&dmu, &xi[i], q.mult(i))?;
    }
    let rhs = symplectic_form(q, &infinitesimal_action(q, rep, xi)?, delta)?;
    Ok((lhs, rhs))
}

/// `B_h ↦ g_{t(h)} B_h g_{s(h)}⁻¹`.
pub fn gauge<F: Field>(q: &QuiverMult, rep: &Representation<F>, g: &[RMap<F>]) -> Result<Representation<F>> {
    check_rep(q, rep)?;
    q.check_len(g.len())?;
    let mut inv = Vec::with_capacity(g.len());
    for (i, gi) in g.iter().enumerate() {
        let shape = ModShape::new(rep.v[i], q.mult(i));
        if gi.src() != shape || !gi.is_rend() {
            return Err(Error::ShapeMismatch(format!("gauge at vertex {} has the wrong shape", q.name(i))));
        }
        inv.push(gi.inverse()?);
    }
    let maps = q
        .double()
        .halves
        .iter()
        .zip(&rep.maps)
        .map(|(h, b)| g[h.dst].compose(b)?.compose(&inv[h.src])?.with_base(h.d))
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation { v: rep.v.clone(), maps })
}

/// Pseudo-random representation with small integer entries.
pub fn random_rep<F: Sample>(q: &QuiverMult, v: &[i64], seed: u64) -> Result<Representation<F>> {
    let v = dims_from_i64(v)?;
    q.check_len(v.len())?;
    let mut r = rng::rng(seed);
    Ok(random_rep_with(q, v, &mut r))
}

pub fn random_rep_with<F: Sample>(q: &QuiverMult, v: Vec<usize>, r: &mut rng::Rng) -> Representation<F> {
    let maps = arrow_shapes(q, &v).into_iter().map(|(s, t, c)| rng::random_map(r, s, t, c)).collect();
    Representation { v, maps }
}

/// Random element of `g_𝐝(V) = ⊕ gl(V_i) ⊗ R_{d_i}`.
pub fn random_lie<F: Sample>(q: &QuiverMult, v: &[usize], r: &mut rng::Rng) -> Vec<RMap<F>> {
    (0..q.vertex_count())
        .map(|i| {
            let s = ModShape::new(v[i], q.mult(i));
            rng::random_map(r, s, s, q.mult(i))
        })
        .collect()
}

/// Random element of `G_𝐝(V)`.
pub fn random_group<F: Sample>(q: &QuiverMult, v: &[usize], r: &mut rng::Rng) -> Vec<RMap<F>> {
    (0..q.vertex_count()).map(|i| rng::random_gauge(r, v[i], q.mult(i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::quiver::parse_quiver;
    use crate::rmatrix::eps_power;
    use crate::scalars::GaussQ;

    type T = TruncScalar<GaussQ>;
    type Map = RMap<GaussQ>;
    type Rep = Representation<GaussQ>;

    fn a2(d1: usize, d2: usize) -> QuiverMult {
        parse_quiver(&format!("quiver {{ vertex a mult {d1} vertex b mult {d2} arrow h : a -> b }}")).unwrap()
    }

    fn rep_from(q: &QuiverMult, v: Vec<usize>, flats: Vec<Matrix<GaussQ>>) -> Rep {
        let maps = arrow_shapes(q, &v)
            .into_iter()
            .zip(flats)
            .map(|((s, t, c), f)| Map::new(s, t, c, f).unwrap())
            .collect();
        Rep::new(q, v, maps).unwrap()
    }

    #[test]
    fn moment_examples() {
        let q = a2(1, 1);
        let zero = Rep::zero(&q, vec![1, 1]).unwrap();
        assert!(moment_map(&q, &zero).unwrap().iter().all(Map::is_zero));

        let rep = rep_from(&q, vec![1, 1], vec![Matrix::from_i64(&[&[2]]), Matrix::from_i64(&[&[3]])]);
        let mu = moment_map(&q, &rep).unwrap();
        assert_eq!(mu[0], Map::scalar(1, &T::from_ints(&[-6])));
        assert_eq!(mu[1], Map::scalar(1, &T::from_ints(&[6])));
        let lam = vec![T::from_ints(&[6]), T::from_ints(&[-6])];
        assert!(mesh_check(&q, &rep, &lam).unwrap().iter().all(Map::is_zero));

        let q = a2(1, 2);
        let rep = rep_from(&q, vec![1, 1], vec![Matrix::from_i64(&[&[1], &[2]]), Matrix::from_i64(&[&[3, 4]])]);
        let mu = moment_map(&q, &rep).unwrap();
        assert_eq!(mu[0], Map::scalar(1, &T::from_ints(&[-11])));
        assert_eq!(mu[1], Map::scalar(1, &T::from_ints(&[4, 11])));
    }

    #[test]
    fn level_examples() {
        let q = a2(1, 1);
        let l = |a, b| vec![T::from_ints(&[a]), T::from_ints(&[b])];
        assert!(level_check(&q, &l(0, 0), &[3, 4]).unwrap());
        assert!(level_check(&q, &l(6, 2), &[0, 0]).unwrap());
        assert!(level_check(&q, &l(6, -6), &[1, 1]).unwrap());
        assert!(!level_check(&q, &l(6, -5), &[1, 1]).unwrap());
        // off-level parameters leave a nonzero residual
        let rep: Rep = random_rep(&q, &[1, 1], 4).unwrap();
        assert!(!mesh_check(&q, &rep, &l(6, -5)).unwrap().iter().all(Map::is_zero));
    }

    #[test]
    fn omega_examples() {
        let q = a2(1, 1);
        let x = rep_from(&q, vec![1, 1], vec![Matrix::from_i64(&[&[5]]), Matrix::from_i64(&[&[0]])]);
        let y = rep_from(&q, vec![1, 1], vec![Matrix::from_i64(&[&[0]]), Matrix::from_i64(&[&[7]])]);
        assert_eq!(symplectic_form(&q, &x, &y).unwrap(), GaussQ::from(35));
        assert_eq!(symplectic_form(&q, &y, &x).unwrap(), GaussQ::from(-35));
        assert_eq!(symplectic_form(&q, &x, &x).unwrap(), GaussQ::from(0));
    }

    /// `μ` straight from the N-power sum, without `pr_cd`.
    fn moment_oracle(q: &QuiverMult, rep: &Rep) -> Vec<Matrix<GaussQ>> {
        let mut out: Vec<Matrix<GaussQ>> =
            (0..q.vertex_count()).map(|i| Matrix::zeros(rep.dims()[i] * q.mult(i), rep.dims()[i] * q.mult(i))).collect();
        for (k, h) in q.double().halves.iter().enumerate() {
            let shape = ModShape::new(rep.dims()[h.dst], q.mult(h.dst));
            let bb = rep.map(k).flat().mul(rep.map(k ^ 1).flat());
            for p in 0..h.f {
                let t = eps_power(shape, p).mul(&bb).mul(&eps_power(shape, h.f - 1 - p));
                out[h.dst] = if h.sgn > 0 { out[h.dst].add(&t) } else { out[h.dst].sub(&t) };
            }
        }
        out
    }

    #[test]
    fn random_invariants() {
        let q = parse_quiver("quiver { vertex a mult 2 vertex b mult 3 vertex c mult 1 arrow x : a -> b arrow y : c -> a arrow z : b -> c }").unwrap();
        let v = vec![2, 1, 2];
        let mut r = rng::rng(11);
        for _ in 0..5 {
            let rep: Rep = random_rep_with(&q, v.clone(), &mut r);
            let mu = moment_map(&q, &rep).unwrap();
            let oracle = moment_oracle(&q, &rep);
            for i in 0..3 {
                assert_eq!(mu[i].flat(), &oracle[i]);
                assert!(mu[i].is_rend());
            }
            assert_eq!(perpendicularity(&mu).unwrap(), GaussQ::from(0));

            let g: Vec<Map> = random_group(&q, &v, &mut r);
            let mu_g = moment_map(&q, &gauge(&q, &rep, &g).unwrap()).unwrap();
            for i in 0..3 {
                let conj = g[i].compose(&mu[i]).unwrap().compose(&g[i].inverse().unwrap()).unwrap();
                assert_eq!(mu_g[i].flat(), conj.flat());
            }

            let delta: Rep = random_rep_with(&q, v.clone(), &mut r);
            let xi: Vec<Map> = random_lie(&q, &v, &mut r);
            assert!(moment_derivative_check(&q, &rep, &delta, &xi).unwrap());
        }
    }

    #[test]
    fn omega_half_sum_and_gauge_invariance() {
        let q = parse_quiver("quiver { vertex a mult 2 vertex b mult 4 arrow x : a -> b arrow y : b -> a }").unwrap();
        let v = vec![2, 1];
        let mut r = rng::rng(5);
        let t1: Rep = random_rep_with(&q, v.clone(), &mut r);
        let t2: Rep = random_rep_with(&q, v.clone(), &mut r);
        let dq = q.double();
        let mut half = GaussQ::from(0);
        for (k, h) in dq.halves.iter().enumerate() {
            let term = pair(t1.map(k), t2.map(k ^ 1), h.d).unwrap() - pair(t2.map(k), t1.map(k ^ 1), h.d).unwrap();
            half = half + GaussQ::from(h.sgn) * term;
        }
        let omega = symplectic_form(&q, &t1, &t2).unwrap();
        assert_eq!(half, GaussQ::from(2) * omega.clone());

        let g: Vec<Map> = random_group(&q, &v, &mut r);
        let w = symplectic_form(&q, &gauge(&q, &t1, &g).unwrap(), &gauge(&q, &t2, &g).unwrap()).unwrap();
        assert_eq!(w, omega);
    }

    #[test]
    fn gauge_trivial_cases() {
        let q = a2(2, 2);
        let rep: Rep = random_rep(&q, &[2, 1], 9).unwrap();
        let id = vec![Map::identity(ModShape::new(2, 2)), Map::identity(ModShape::new(1, 2))];
        assert_eq!(gauge(&q, &rep, &id).unwrap(), rep);
        let c = T::from_ints(&[3, 0]);
        let scal = vec![Map::scalar(2, &c), Map::scalar(1, &c)];
        assert_eq!(gauge(&q, &rep, &scal).unwrap(), rep);
        let sing = vec![Map::scalar(2, &T::from_ints(&[0, 1])), Map::scalar(1, &c)];
        assert!(matches!(gauge(&q, &rep, &sing), Err(Error::NotInvertible)));
    }

    #[test]
    fn random_rep_determinism() {
        let q = a2(1, 1);
        let a: Rep = random_rep(&q, &[1, 1], 7).unwrap();
        let b: Rep = random_rep(&q, &[1, 1], 7).unwrap();
        assert_eq!(a, b);
        let empty: Rep = random_rep(&q, &[0, 0], 7).unwrap();
        assert!(empty.maps().iter().all(|m| m.flat().shape() == (0, 0)));
        assert!(matches!(random_rep::<GaussQ>(&q, &[-1, 0], 1), Err(Error::NegativeDimension)));
    }

    #[test]
    fn derivative_trivial_cases() {
        let q = a2(1, 2);
        let v = vec![2, 1];
        let mut r = rng::rng(1);
        let rep: Rep = random_rep_with(&q, v.clone(), &mut r);
        let zero = Rep::zero(&q, v.clone()).unwrap();
        let xi: Vec<Map> = random_lie(&q, &v, &mut r);
        let (l, rr) = moment_derivative_sides(&q, &rep, &zero, &xi).unwrap();
        assert_eq!((l, rr), (GaussQ::from(0), GaussQ::from(0)));
        let central = vec![Map::scalar(2, &T::from_ints(&[5])), Map::scalar(1, &T::from_ints(&[5, 0]))];
        let delta: Rep = random_rep_with(&q, v.clone(), &mut r);
        assert!(moment_derivative_check(&q, &rep, &delta, &central).unwrap());
    }
}
