//! Irregular legs and the regularization `(Q, d) ↦ (Q̌, ď)`.
//!
//! A leg is a vertex sequence `0, 1, …, l` (base first) with `d_0 = 1`,
//! `d_1 = ⋯ = d_l = d > 1`, consecutive vertices joined by exactly one arrow
//! in either direction, no other arrows inside `[0, l]`, and no arrows between
//! `[1, l]` and the rest of the quiver.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Arrow, DimVector, QuiverMult, Vertex};
use crate::scalars::{Field, TruncScalar};
use crate::weyl::{check_params, dim_matrix, flatten_params, param_matrix, param_offsets, reflect_dim, reflect_param, unflatten_params, ParamVector, RelationCheck};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegDescriptor {
    /// Vertex indices `0, 1, …, l`, base first.
    pub vertices: Vec<usize>,
    pub d: usize,
}

impl LegDescriptor {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn base(&self) -> usize {
        self.vertices[0]
    }

    /// Position of vertex `i` along the leg.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.vertices.iter().position(|&v| v == i)
    }

    pub fn names(&self, q: &QuiverMult) -> Vec<String> {
        self.vertices.iter().map(|&i| q.name(i).to_string()).collect()
    }
}

fn arrows_between(q: &QuiverMult, a: usize, b: usize) -> usize {
    q.arrows().iter().filter(|h| (h.src == a && h.dst == b) || (h.src == b && h.dst == a)).count()
}

/// Checks the leg conditions for an explicit vertex sequence.
pub fn validate_leg(q: &QuiverMult, vertices: &[usize]) -> Result<LegDescriptor> {
    let bad = |msg: String| Err(Error::InvalidLeg(msg));
    if vertices.len() < 2 {
        return bad("a leg needs a base and at least one more vertex".into());
    }
    if let Some(&i) = vertices.iter().find(|&&i| i >= q.vertex_count()) {
        return Err(Error::UnknownVertex(format!("#{i}")));
    }
    if vertices.iter().collect::<BTreeSet<_>>().len() != vertices.len() {
        return bad("leg vertices must be distinct".into());
    }
    if q.mult(vertices[0]) != 1 {
        return bad(format!("base `{}` must have multiplicity 1", q.name(vertices[0])));
    }
    let d = q.mult(vertices[1]);
    if d < 2 {
        return bad("leg multiplicity must exceed 1".into());
    }
    if let Some(&i) = vertices[1..].iter().find(|&&i| q.mult(i) != d) {
        return bad(format!("vertex `{}` does not have multiplicity {d}", q.name(i)));
    }
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let n = arrows_between(q, vertices[a], vertices[b]);
            let want = usize::from(b == a + 1);
            if n != want {
                return bad(format!("`{}` and `{}` are joined by {n} arrows, expected {want}", q.name(vertices[a]), q.name(vertices[b])));
            }
        }
    }
    let inner: BTreeSet<usize> = vertices[1..].iter().copied().collect();
    for h in q.arrows() {
        let outside = |x: usize| !vertices.contains(&x);
        if (inner.contains(&h.src) && outside(h.dst)) || (inner.contains(&h.dst) && outside(h.src)) {
            return bad(format!("arrow `{}` joins the leg to the rest of the quiver", h.name));
        }
    }
    Ok(LegDescriptor { vertices: vertices.to_vec(), d })
}

/// Resolves a list of vertex names to a validated leg.
pub fn leg_by_names(q: &QuiverMult, names: &[&str]) -> Result<LegDescriptor> {
    let idx = names.iter().map(|n| q.vertex_index(n)).collect::<Result<Vec<_>>>()?;
    validate_leg(q, &idx)
}

/// All irregular legs, ordered by base vertex and then by first leg vertex.
///
/// For a base `0`, the leg `[1, l]` must be a whole connected component of the
/// quiver with `0` removed, so each component is tested once.
pub fn find_legs(q: &QuiverMult) -> Vec<LegDescriptor> {
    let n = q.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for h in q.arrows() {
        adj[h.src].push(h.dst);
        adj[h.dst].push(h.src);
    }
    let mut legs = Vec::new();
    for base in (0..n).filter(|&b| q.mult(b) == 1) {
        let mut seen = vec![false; n];
        seen[base] = true;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                for &w in &adj[comp[k]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            let touching: Vec<usize> = comp.iter().copied().filter(|&c| arrows_between(q, base, c) > 0).collect();
            let [first] = touching[..] else { continue };
            let mut path = vec![base, first];
            while path.len() <= comp.len() {
                let last = *path.last().expect("nonempty");
                let next: Vec<usize> = adj[last].iter().copied().filter(|w| !path.contains(w)).collect();
                match next[..] {
                    [w] if comp.contains(&w) => path.push(w),
                    _ => break,
                }
            }
            if path.len() == comp.len() + 1 {
                if let Ok(leg) = validate_leg(q, &path) {
                    legs.push(leg);
                }
            }
        }
    }
    legs
}

/// `(Q̌, ď)`: leg arrows removed, arrows at the base copied to every leg
/// vertex (named `<arrow>_to_<vertex>`), and `d − 2` arrows `i → j` for each
/// pair `i < j` in `[0, l]` (named `reg_<i>_<j>_<k>`).
pub fn regularize_quiver(q: &QuiverMult, leg: &LegDescriptor) -> Result<QuiverMult> {
    let leg = validate_leg(q, &leg.vertices)?;
    let base = leg.base();
    let inner = &leg.vertices[1..];
    let vertices: Vec<Vertex> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| Vertex { name: v.name.clone(), mult: if inner.contains(&i) { 1 } else { v.mult } })
        .collect();
    let in_leg = |x: usize| leg.vertices.contains(&x);
    let mut arrows = Vec::new();
    for h in q.arrows() {
        if in_leg(h.src) && in_leg(h.dst) {
            continue;
        }
        arrows.push(h.clone());
        if h.dst == base {
            for &i in inner {
                arrows.push(Arrow { name: format!("{}_to_{}", h.name, q.name(i)), src: h.src, dst: i });
            }
        } else if h.src == base {
            for &i in inner {
                arrows.push(Arrow { name: format!("{}_to_{}", h.name, q.name(i)), src: i, dst: h.dst });
            }
        }
    }
    for (a, &i) in leg.vertices.iter().enumerate() {
        for &j in &leg.vertices[a + 1..] {
            for k in 0..leg.d - 2 {
                arrows.push(Arrow { name: format!("reg_{}_{}_{k}", q.name(i), q.name(j)), src: i, dst: j });
            }
        }
    }
    QuiverMult::new(vertices, arrows)
}

/// `v̌_i = v_i − v_{i+1}` on `[0, l−1]`, `v̌ = v` elsewhere.
pub fn regularize_dims(leg: &LegDescriptor, v: &[i64]) -> DimVector {
    let mut out = v.to_vec();
    for w in leg.vertices.windows(2) {
        out[w[0]] = v[w[0]] - v[w[1]];
    }
    out
}

/// `(λ̌, v̌)` with `λ̌_0 = λ_0`, `λ̌_i = λ_0 + Σ_{j=1}^{i} λ_{j,d−1}` on the
/// leg and `λ̌ = λ` elsewhere.
pub fn regularize_params<F: Field>(
    q: &QuiverMult,
    leg: &LegDescriptor,
    lambda: &[TruncScalar<F>],
    v: &[i64],
) -> Result<(ParamVector<F>, DimVector)> {
    check_params(q, lambda)?;
    q.check_len(v.len())?;
    let mut out = lambda.to_vec();
    let mut acc = lambda[leg.base()].coeff(0).clone();
    for &i in &leg.vertices[1..] {
        acc = acc + lambda[i].residue();
        out[i] = TruncScalar::constant(acc.clone(), 1);
    }
    Ok((out, regularize_dims(leg, v)))
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Report {
    pub checks: Vec<RelationCheck>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, relation: String, passed: bool) {
        self.checks.push(RelationCheck { relation, passed });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.relation)?;
        }
        Ok(())
    }
}

/// Evaluates the hypotheses `v̌_i ≥ 0` on `[0, l−1]` and
/// `λ_i + ⋯ + λ_j ∈ R_d^×` for `1 ≤ i ≤ j ≤ l`. For `l = 1` the weaker
/// condition `λ_1 ∈ R_d^×` alone (which suffices there) is reported as well.
pub fn check_theorem_hypotheses<F: Field>(
    q: &QuiverMult,
    leg: &LegDescriptor,
    lambda: &[TruncScalar<F>],
    v: &[i64],
) -> Result<Report> {
    check_params(q, lambda)?;
    q.check_len(v.len())?;
    let names = leg.names(q);
    let vc = regularize_dims(leg, v);
    let mut report = Report::default();
    for (k, &i) in leg.vertices[..leg.len()].iter().enumerate() {
        report.push(format!("v_{} - v_{} >= 0", names[k], names[k + 1]), vc[i] >= 0);
    }
    for a in 1..=leg.len() {
        let mut sum = TruncScalar::zero(leg.d);
        for b in a..=leg.len() {
            sum = sum.add(&lambda[leg.vertices[b]])?;
            report.push(format!("lambda_{} + ... + lambda_{} is a unit", names[a], names[b]), sum.is_unit());
        }
    }
    if leg.len() == 1 {
        report.push(format!("lambda_{} is a unit (length-one leg)", names[1]), lambda[leg.vertices[1]].is_unit());
    }
    Ok(report)
}

/// `φ(v) = v − Σ_{i∈[0,l−1]} v_{i+1} α̌_i`, as an integer matrix.
pub fn phi_map(q: &QuiverMult, leg: &LegDescriptor) -> Result<Matrix<i64>> {
    let leg = validate_leg(q, &leg.vertices)?;
    let mut m = Matrix::identity(q.vertex_count());
    for w in leg.vertices.windows(2) {
        m[(w[0], w[1])] = -1;
    }
    Ok(m)
}

/// `φ⁻¹ = Σ_k (Id − φ)^k`, since `Id − φ` is nilpotent.
pub fn phi_inverse(q: &QuiverMult, leg: &LegDescriptor) -> Result<Matrix<i64>> {
    let phi = phi_map(q, leg)?;
    let n = q.vertex_count();
    let nil = Matrix::identity(n).sub(&phi);
    let mut acc = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for _ in 0..leg.len() {
        term = term.mul(&nil);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The transposition of leg positions `k − 1` and `k`, as a permutation of `I`.
fn sigma(leg: &LegDescriptor, k: usize) -> impl Fn(usize) -> usize + '_ {
    let (a, b) = (leg.vertices[k - 1], leg.vertices[k]);
    move |x| if x == a { b } else if x == b { a } else { x }
}

/// Permutation matrix `e_x ↦ e_{σ(x)}` on `ℤ^I`.
fn permutation_matrix(n: usize, s: impl Fn(usize) -> usize) -> Matrix<i64> {
    Matrix::from_fn(n, n, |r, c| i64::from(s(c) == r))
}

/// The same permutation acting on the flattened parameters of `(Q̌, ď)`.
fn param_permutation(qc: &QuiverMult, s: impl Fn(usize) -> usize) -> Matrix<i64> {
    let (offs, total) = param_offsets(qc);
    let mut m = Matrix::zeros(total, total);
    for i in 0..qc.vertex_count() {
        let j = s(i);
        for k in 0..qc.mult(i) {
            m[(offs[j] + k, offs[i] + k)] = 1;
        }
    }
    m
}

/// Matrix of `ψ: λ ↦ λ̌` on flattened parameters.
pub fn psi_matrix(q: &QuiverMult, leg: &LegDescriptor) -> Result<Matrix<i64>> {
    let qc = regularize_quiver(q, leg)?;
    let (offs, total) = param_offsets(q);
    let (offs_c, total_c) = param_offsets(&qc);
    let mut m = Matrix::zeros(total_c, total);
    for i in 0..q.vertex_count() {
        if leg.vertices[1..].contains(&i) {
            continue;
        }
        for k in 0..q.mult(i) {
            m[(offs_c[i] + k, offs[i] + k)] = 1;
        }
    }
    let base = leg.base();
    for (pos, &i) in leg.vertices.iter().enumerate().skip(1) {
        m[(offs_c[i], offs[base])] = 1;
        for &j in &leg.vertices[1..=pos] {
            m[(offs_c[i], offs[j] + leg.d - 1)] = 1;
        }
    }
    Ok(m)
}

/// Checks `ᵗφ Ď Č φ = D C`, `φ s_i φ⁻¹ = σ_i` on the leg and `= š_i` off it,
/// and `σ š_k σ⁻¹ = š_{σ(k)}` for the transpositions `σ_i`.
pub fn verify_semidirect(q: &QuiverMult, leg: &LegDescriptor) -> Result<Report> {
    let qc = regularize_quiver(q, leg)?;
    let phi = phi_map(q, leg)?;
    let phi_inv = phi_inverse(q, leg)?;
    let n = q.vertex_count();
    let mut report = Report::default();
    report.push("phi * phi^-1 = Id".into(), phi.mul(&phi_inv) == Matrix::identity(n));
    let dc = q.cartan().dc();
    let dcc = qc.cartan().dc();
    report.push("phi^t D' C' phi = D C".into(), phi.transpose().mul(&dcc).mul(&phi) == dc);
    for i in 0..n {
        let conj = phi.mul(&dim_matrix(q, i)).mul(&phi_inv);
        let name = q.name(i);
        match leg.position(i) {
            Some(k) if k >= 1 => {
                let p = permutation_matrix(n, sigma(leg, k));
                report.push(format!("phi s_{name} phi^-1 = sigma_{name}"), conj == p);
            }
            _ => report.push(format!("phi s_{name} phi^-1 = s'_{name}"), conj == dim_matrix(&qc, i)),
        }
    }
    for k in 1..=leg.len() {
        let s = sigma(leg, k);
        let p = permutation_matrix(n, &s);
        for j in 0..n {
            let lhs = p.mul(&dim_matrix(&qc, j)).mul(&p);
            report.push(
                format!("sigma_{} s'_{} sigma_{} = s'_{}", q.name(leg.vertices[k]), q.name(j), q.name(leg.vertices[k]), q.name(s(j))),
                lhs == dim_matrix(&qc, s(j)),
            );
        }
    }
    Ok(report)
}

/// Checks that `(λ, v) ↦ (λ̌, v̌)` intertwines `(r_i, s_i)` with the action of
/// `φ s_i φ⁻¹` (a transposition `σ_i` or `(ř_i, š_i)`), both as a matrix
/// identity and on every basis vector of `R_𝐝` and `ℤ^I`.
pub fn verify_param_equivariance<F: Field>(q: &QuiverMult, leg: &LegDescriptor) -> Result<Report> {
    let qc = regularize_quiver(q, leg)?;
    let psi = psi_matrix(q, leg)?;
    let phi = phi_map(q, leg)?;
    let n = q.vertex_count();
    let (_, total) = param_offsets(q);
    let mut report = Report::default();
    let zero_v = vec![0i64; n];
    for i in 0..n {
        let name = q.name(i);
        let on_leg = leg.position(i).filter(|&k| k >= 1);
        let (rc, sc) = match on_leg {
            Some(k) => (param_permutation(&qc, sigma(leg, k)), permutation_matrix(n, sigma(leg, k))),
            None => (param_matrix(&qc, i), dim_matrix(&qc, i)),
        };
        report.push(format!("psi r_{name} = r'_{name} psi"), psi.mul(&param_matrix(q, i)) == rc.mul(&psi));
        report.push(format!("phi s_{name} = s'_{name} phi"), phi.mul(&dim_matrix(q, i)) == sc.mul(&phi));

        let mut basis_ok = true;
        for b in 0..total {
            let flat: Vec<F> = (0..total).map(|k| F::from_i64(i64::from(k == b))).collect();
            let lam = unflatten_params(q, &flat);
            let (lhs, _) = regularize_params(q, leg, &reflect_param(q, i, &lam)?, &zero_v)?;
            let (lc, _) = regularize_params(q, leg, &lam, &zero_v)?;
            let rhs = match on_leg {
                Some(k) => {
                    let s = sigma(leg, k);
                    let mut out = lc.clone();
                    for x in 0..n {
                        out[s(x)] = lc[x].clone();
                    }
                    out
                }
                None => reflect_param(&qc, i, &lc)?,
            };
            basis_ok &= flatten_params(&lhs) == flatten_params(&rhs);
        }
        for b in 0..n {
            let v: Vec<i64> = (0..n).map(|k| i64::from(k == b)).collect();
            let lhs = regularize_dims(leg, &reflect_dim(q, i, &v)?);
            let vc = regularize_dims(leg, &v);
            let rhs = match on_leg {
                Some(k) => {
                    let s = sigma(leg, k);
                    let mut out = vc.clone();
                    for x in 0..n {
                        out[s(x)] = vc[x];
                    }
                    out
                }
                None => reflect_dim(&qc, i, &vc)?,
            };
            basis_ok &= lhs == rhs;
        }
        report.push(format!("equivariance at {name} on a full basis"), basis_ok);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;
    use crate::repn::level_sum;
    use crate::rng;
    use crate::scalars::GaussQ;
    use rand::RngExt;

    type T = TruncScalar<GaussQ>;

    /// Star: a vertex of multiplicity `d` hanging off the end of a chain of `n − 1` ones.
    fn star(n: usize, d: usize) -> QuiverMult {
        let mut s = format!("quiver {{ vertex p mult {d} vertex b0 mult 1 arrow e0 : p -> b0 ");
        for k in 1..n - 1 {
            s += &format!("vertex b{k} mult 1 arrow e{k} : b{} -> b{k} ", k - 1);
        }
        parse_quiver(&(s + "}")).unwrap()
    }

    /// Multiplicities `2, 1, …, 1, 2` along a chain of `n` vertices.
    fn double_leg(n: usize) -> QuiverMult {
        let mut s = String::from("quiver { ");
        for k in 0..n {
            let m = if k == 0 || k == n - 1 { 2 } else { 1 };
            s += &format!("vertex c{k} mult {m} ");
        }
        for k in 1..n {
            s += &format!("arrow e{k} : c{} -> c{k} ", k - 1);
        }
        parse_quiver(&(s + "}")).unwrap()
    }

    fn long_leg(l: usize, d: usize) -> QuiverMult {
        let mut s = String::from("quiver { vertex z mult 1 vertex o mult 1 arrow y : z -> o vertex x0 mult 1 arrow u : x0 -> o ");
        for k in 1..=l {
            s += &format!("vertex l{k} mult {d} ");
            let prev = if k == 1 { "o".to_string() } else { format!("l{}", k - 1) };
            if k % 2 == 0 {
                s += &format!("arrow h{k} : l{k} -> {prev} ");
            } else {
                s += &format!("arrow h{k} : {prev} -> l{k} ");
            }
        }
        parse_quiver(&(s + "}")).unwrap()
    }

    #[test]
    fn legs_found() {
        let free = parse_quiver("quiver { vertex a mult 1 vertex b mult 1 arrow x : a -> b }").unwrap();
        assert!(find_legs(&free).is_empty());
        for n in 2..5 {
            let q = star(n, 3);
            let legs = find_legs(&q);
            assert_eq!(legs.len(), 1, "n = {n}");
            assert_eq!(legs[0].names(&q), vec!["b0", "p"]);
        }
        let q = double_leg(5);
        let legs: Vec<_> = find_legs(&q).iter().map(|l| l.names(&q)).collect();
        assert_eq!(legs, vec![vec!["c1", "c0"], vec!["c3", "c4"]]);
        let q = long_leg(3, 2);
        let legs = find_legs(&q);
        assert_eq!(legs.len(), 1);
        assert_eq!(legs[0].names(&q), vec!["o", "l1", "l2", "l3"]);
    }

    #[test]
    fn invalid_legs() {
        let q = star(3, 2);
        let b0 = q.vertex_index("b0").unwrap();
        let b1 = q.vertex_index("b1").unwrap();
        let p = q.vertex_index("p").unwrap();
        assert!(validate_leg(&q, &[b0, p]).is_ok());
        assert!(matches!(validate_leg(&q, &[b1, b0]), Err(Error::InvalidLeg(_))));
        assert!(matches!(validate_leg(&q, &[p, b0]), Err(Error::InvalidLeg(_))));
        assert!(matches!(validate_leg(&q, &[b0]), Err(Error::InvalidLeg(_))));
        let two = parse_quiver("quiver { vertex a mult 1 vertex b mult 2 vertex c mult 2 arrow x : a -> b arrow y : b -> c arrow z : a -> c }").unwrap();
        assert!(matches!(validate_leg(&two, &[0, 1, 2]), Err(Error::InvalidLeg(_))));
        assert!(find_legs(&two).is_empty());
    }

    #[test]
    fn star_regularization_pictures() {
        for d in 2..6 {
            let q = star(2, d);
            let leg = &find_legs(&q)[0];
            let qc = regularize_quiver(&q, leg).unwrap();
            assert!(qc.mults().iter().all(|&m| m == 1));
            assert_eq!(qc.arrows().len(), d - 2);
            assert!(qc.arrows().iter().all(|h| h.src == leg.base() && h.dst == leg.vertices[1]));
        }
        let q = star(4, 3);
        let leg = &find_legs(&q)[0];
        let qc = regularize_quiver(&q, leg).unwrap();
        let names: Vec<&str> = qc.arrows().iter().map(|h| h.name.as_str()).collect();
        assert_eq!(names, vec!["e1", "e1_to_p", "e2", "reg_b0_p_0"]);
        let c = qc.cartan().a;
        let (b0, b1, p) = (qc.vertex_index("b0").unwrap(), qc.vertex_index("b1").unwrap(), qc.vertex_index("p").unwrap());
        assert_eq!((c[(b1, b0)], c[(b1, p)], c[(b0, p)]), (1, 1, 1));
        assert!(find_legs(&qc).iter().all(|l| !l.vertices.contains(&p)));
    }

    #[test]
    fn double_leg_twice() {
        let q = double_leg(4);
        let legs = find_legs(&q);
        let once = regularize_quiver(&q, &legs[0]).unwrap();
        let second = find_legs(&once);
        assert_eq!(second.len(), 1);
        let twice = regularize_quiver(&once, &second[0]).unwrap();
        assert!(twice.mults().iter().all(|&m| m == 1));
        // a 4-cycle
        let a = twice.cartan().a;
        for i in 0..4 {
            assert_eq!((0..4).map(|j| a[(i, j)]).sum::<i64>(), 2);
        }
    }

    #[test]
    fn d_two_adds_no_complete_graph() {
        let q = long_leg(2, 2);
        let leg = &find_legs(&q)[0];
        let qc = regularize_quiver(&q, leg).unwrap();
        assert!(qc.arrows().iter().all(|h| !h.name.starts_with("reg_")));
        assert_eq!(qc.arrows().iter().filter(|h| h.name.starts_with("y_to_") || h.name.starts_with("u_to_")).count(), 4);
    }

    #[test]
    fn params_examples() {
        let q = long_leg(2, 2);
        let leg = &find_legs(&q)[0];
        let mut lam: Vec<T> = crate::weyl::zero_params(&q);
        let o = q.vertex_index("o").unwrap();
        lam[o] = T::from_ints(&[7]);
        lam[leg.vertices[1]] = T::from_ints(&[1, 2]);
        lam[leg.vertices[2]] = T::from_ints(&[3, 5]);
        let v = vec![0, 3, 0, 2, 2];
        let (lc, vc) = regularize_params(&q, leg, &lam, &v).unwrap();
        assert_eq!(lc[o], T::from_ints(&[7]));
        assert_eq!(lc[leg.vertices[1]], T::from_ints(&[9]));
        assert_eq!(lc[leg.vertices[2]], T::from_ints(&[14]));
        assert_eq!(vc, vec![0, 1, 0, 0, 2]);

        let tail = vec![0, 3, 0, 0, 0];
        assert_eq!(regularize_dims(leg, &tail), tail);
    }

    #[test]
    fn hypotheses() {
        let q = long_leg(2, 2);
        let leg = &find_legs(&q)[0];
        let mut lam: Vec<T> = crate::weyl::zero_params(&q);
        let r = check_theorem_hypotheses(&q, leg, &lam, &[0, 3, 0, 2, 1]).unwrap();
        assert!(r.checks[..2].iter().all(|c| c.passed));
        assert!(!r.passed());
        lam[leg.vertices[1]] = T::from_ints(&[1, 0]);
        lam[leg.vertices[2]] = T::from_ints(&[-1, 4]);
        let r = check_theorem_hypotheses(&q, leg, &lam, &[0, 3, 0, 2, 1]).unwrap();
        let units: Vec<bool> = r.checks[2..].iter().map(|c| c.passed).collect();
        assert_eq!(units, vec![true, false, true]);
        let r = check_theorem_hypotheses(&q, leg, &lam, &[0, 1, 0, 2, 1]).unwrap();
        assert!(!r.checks[0].passed);
    }

    #[test]
    fn phi_examples() {
        let q = star(2, 3);
        let leg = &find_legs(&q)[0];
        let phi = phi_map(&q, leg).unwrap();
        let (b, p) = (leg.base(), leg.vertices[1]);
        assert_eq!((phi[(b, b)], phi[(b, p)], phi[(p, b)], phi[(p, p)]), (1, -1, 0, 1));
        let q = star(4, 3);
        let leg = &find_legs(&q)[0];
        let phi = phi_map(&q, leg).unwrap();
        let b1 = q.vertex_index("b1").unwrap();
        assert_eq!(phi[(b1, b1)], 1);
        assert_eq!((0..4).filter(|&c| c != b1).map(|c| phi[(b1, c)].abs()).sum::<i64>(), 0);
    }

    #[test]
    fn reports_pass() {
        for q in [star(2, 2), star(3, 3), star(4, 4), double_leg(4), double_leg(5), long_leg(3, 3), long_leg(2, 4)] {
            for leg in find_legs(&q) {
                let s = verify_semidirect(&q, &leg).unwrap();
                assert!(s.passed(), "{s}");
                let e = verify_param_equivariance::<GaussQ>(&q, &leg).unwrap();
                assert!(e.passed(), "{e}");
            }
        }
    }

    #[test]
    fn invariance_of_dimension_and_level() {
        let mut r = rng::rng(5);
        for q in [star(3, 3), long_leg(3, 2), double_leg(5)] {
            for leg in find_legs(&q) {
                let qc = regularize_quiver(&q, &leg).unwrap();
                for _ in 0..10 {
                    let mut v: Vec<i64> = (0..q.vertex_count()).map(|_| r.random_range(0..4)).collect();
                    let mut along: Vec<i64> = leg.vertices.iter().map(|&i| v[i]).collect();
                    along.sort_unstable_by(|a, b| b.cmp(a));
                    for (k, &i) in leg.vertices.iter().enumerate() {
                        v[i] = along[k];
                    }
                    let lam: Vec<T> = rng::random_params(&mut r, &q);
                    let (lc, vc) = regularize_params(&q, &leg, &lam, &v).unwrap();
                    assert_eq!(q.expected_dim(&v).unwrap(), qc.expected_dim(&vc).unwrap());
                    assert_eq!(level_sum(&q, &lam, &v).unwrap(), level_sum(&qc, &lc, &vc).unwrap());
                }
            }
        }
    }
}
