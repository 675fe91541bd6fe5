//! Weyl group actions on dimension vectors and on truncated parameters.
//!
//! Parameters `λ ∈ R_𝐝 = ⊕ R_{d_i}` are flattened to coordinates
//! `λ_{i,k}` ordered vertex-major, then by ascending power of ε.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{DimVector, QuiverMult};
use crate::scalars::{Field, TruncScalar};

/// One `λ_i ∈ R_{d_i}` per vertex.
pub type ParamVector<F> = Vec<TruncScalar<F>>;

pub(crate) fn check_vertex(q: &QuiverMult, i: usize) -> Result<()> {
    if i >= q.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{i}")));
    }
    Ok(())
}

pub fn check_params<F: Field>(q: &QuiverMult, lambda: &[TruncScalar<F>]) -> Result<()> {
    q.check_len(lambda.len())?;
    for (i, l) in lambda.iter().enumerate() {
        if l.order() != q.mult(i) {
            return Err(Error::MismatchedOrder(l.order(), q.mult(i)));
        }
    }
    Ok(())
}

pub fn zero_params<F: Field>(q: &QuiverMult) -> ParamVector<F> {
    q.mults().into_iter().map(TruncScalar::zero).collect()
}

/// Offsets of each vertex block in the flattened `R_𝐝`, plus the total.
pub fn param_offsets(q: &QuiverMult) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(q.vertex_count());
    let mut at = 0;
    for d in q.mults() {
        offs.push(at);
        at += d;
    }
    (offs, at)
}

pub fn flatten_params<F: Field>(lambda: &[TruncScalar<F>]) -> Vec<F> {
    lambda.iter().flat_map(|l| l.coeffs().iter().cloned()).collect()
}

pub fn unflatten_params<F: Field>(q: &QuiverMult, flat: &[F]) -> ParamVector<F> {
    let (offs, _) = param_offsets(q);
    offs.iter()
        .zip(q.mults())
        .map(|(&o, d)| TruncScalar::new(flat[o..o + d].to_vec()).expect("positive order"))
        .collect()
}

/// `s_i(v) = v − Σ_j c_{ij} v_j α_i`.
pub fn reflect_dim(q: &QuiverMult, i: usize, v: &[i64]) -> Result<DimVector> {
    check_vertex(q, i)?;
    q.check_len(v.len())?;
    let c = q.cartan().c;
    let mut out = v.to_vec();
    out[i] -= (0..v.len()).map(|j| c[(i, j)] * v[j]).sum::<i64>();
    Ok(out)
}

/// The parameter reflection `r_i`.
///
/// `r_i(λ)_i = −λ_i`, and for `j ≠ i`
/// `r_i(λ)_j = λ_j − Σ_{l<d_{ij}} λ_{i, d_i − f_{ji} l − 1} c_{ij} ε_j^{d_j − f_{ij} l − 1}`.
pub fn reflect_param<F: Field>(q: &QuiverMult, i: usize, lambda: &[TruncScalar<F>]) -> Result<ParamVector<F>> {
    check_vertex(q, i)?;
    check_params(q, lambda)?;
    let c = q.cartan().c;
    let di = q.mult(i);
    let mut out = lambda.to_vec();
    out[i] = lambda[i].neg();
    for j in 0..q.vertex_count() {
        if j == i || c[(i, j)] == 0 {
            continue;
        }
        let dj = q.mult(j);
        let (fij, fji) = (q.f_ij(i, j), q.f_ij(j, i));
        let cij = F::from_i64(c[(i, j)]);
        let mut coeffs = out[j].coeffs().to_vec();
        for l in 0..q.d_ij(i, j) {
            let k = dj - fij * l - 1;
            coeffs[k] = coeffs[k].clone() - lambda[i].coeff(di - fji * l - 1).clone() * cij.clone();
        }
        out[j] = TruncScalar::new(coeffs)?;
    }
    Ok(out)
}

/// `s̃_i(κ) = κ − Σ_j c_{ij} Σ_{m<d_{ij}} κ_{j, f_{ij} m} ε_i^{f_{ji} m} e_i`, the
/// transpose of `r_i` under the residue pairing.
pub fn transpose_action<F: Field>(q: &QuiverMult, i: usize, kappa: &[TruncScalar<F>]) -> Result<ParamVector<F>> {
    check_vertex(q, i)?;
    check_params(q, kappa)?;
    let c = q.cartan().c;
    let mut coeffs = kappa[i].coeffs().to_vec();
    for j in 0..q.vertex_count() {
        if c[(i, j)] == 0 {
            continue;
        }
        let cij = F::from_i64(c[(i, j)]);
        let (fij, fji) = (q.f_ij(i, j), q.f_ij(j, i));
        for m in 0..q.d_ij(i, j) {
            let k = fji * m;
            coeffs[k] = coeffs[k].clone() - cij.clone() * kappa[j].coeff(fij * m).clone();
        }
    }
    let mut out = kappa.to_vec();
    out[i] = TruncScalar::new(coeffs)?;
    Ok(out)
}

/// `ρ_i(λ) = res(λ_i dε/ε^{d_i})`, the top coefficient of `λ_i`.
pub fn rho<F: Field>(q: &QuiverMult, lambda: &[TruncScalar<F>]) -> Result<Vec<F>> {
    check_params(q, lambda)?;
    Ok(lambda.iter().map(TruncScalar::residue).collect())
}

/// Matrix of `s_i` on `ℤ^I`.
pub fn dim_matrix(q: &QuiverMult, i: usize) -> Matrix<i64> {
    let c = q.cartan().c;
    let n = q.vertex_count();
    Matrix::from_fn(n, n, |r, col| {
        let id = i64::from(r == col);
        if r == i {
            id - c[(i, col)]
        } else {
            id
        }
    })
}

/// Matrix of `r_i` on the flattened `R_𝐝`, assembled entry by entry from the
/// defining formula.
pub fn param_matrix(q: &QuiverMult, i: usize) -> Matrix<i64> {
    let c = q.cartan().c;
    let (offs, n) = param_offsets(q);
    let mut m = Matrix::identity(n);
    let di = q.mult(i);
    for k in 0..di {
        m[(offs[i] + k, offs[i] + k)] = -1;
    }
    for j in 0..q.vertex_count() {
        if j == i {
            continue;
        }
        let (fij, fji) = (q.f_ij(i, j), q.f_ij(j, i));
        for l in 0..q.d_ij(i, j) {
            let row = offs[j] + q.mult(j) - fij * l - 1;
            let col = offs[i] + di - fji * l - 1;
            m[(row, col)] -= c[(i, j)];
        }
    }
    m
}

/// Matrix of the residue pairing `Σ_j ⟨·,·⟩_{d_j}` on the flattened `R_𝐝`.
pub fn pairing_matrix(q: &QuiverMult) -> Matrix<i64> {
    let (offs, n) = param_offsets(q);
    let mut p = Matrix::zeros(n, n);
    for (j, &o) in offs.iter().enumerate() {
        let d = q.mult(j);
        for k in 0..d {
            p[(o + k, o + d - 1 - k)] = 1;
        }
    }
    p
}

/// Matrix of `s̃_i` on the flattened `R_𝐝`.
pub fn transpose_matrix(q: &QuiverMult, i: usize) -> Matrix<i64> {
    let c = q.cartan().c;
    let (offs, n) = param_offsets(q);
    let mut m = Matrix::identity(n);
    for j in 0..q.vertex_count() {
        let (fij, fji) = (q.f_ij(i, j), q.f_ij(j, i));
        for mm in 0..q.d_ij(i, j) {
            m[(offs[i] + fji * mm, offs[j] + fij * mm)] -= c[(i, j)];
        }
    }
    m
}

/// Matrix of `ρ: R_𝐝 → ℂ^I`.
pub fn rho_matrix(q: &QuiverMult) -> Matrix<i64> {
    let (offs, n) = param_offsets(q);
    let mut m = Matrix::zeros(q.vertex_count(), n);
    for (i, &o) in offs.iter().enumerate() {
        m[(i, o + q.mult(i) - 1)] = 1;
    }
    m
}

/// The generalized Cartan matrix on `Ĩ = {(i,k) : k < d_i}`.
#[derive(Clone, PartialEq, Debug)]
pub struct LiftedCartan {
    pub index: Vec<(usize, usize)>,
    pub c: Matrix<i64>,
    /// Symmetrizer, `d̃_{(i,k)} = d_i`.
    pub d: Vec<i64>,
}

impl LiftedCartan {
    pub fn is_symmetrizable(&self) -> bool {
        let n = self.index.len();
        let dc = Matrix::from_fn(n, n, |a, b| self.d[a] * self.c[(a, b)]);
        dc == dc.transpose()
    }

    /// Simple reflection `s_a` of the lifted root lattice.
    pub fn reflection(&self, a: usize) -> Matrix<i64> {
        let n = self.index.len();
        Matrix::from_fn(n, n, |r, col| {
            let id = i64::from(r == col);
            if r == a {
                id - self.c[(a, col)]
            } else {
                id
            }
        })
    }

    pub fn position(&self, i: usize, k: usize) -> Option<usize> {
        self.index.iter().position(|&p| p == (i, k))
    }
}

/// `c̃_{(i,k)(j,l)} = c_{ij}` when `k = f_{ji} m`, `l = f_{ij} m` for some
/// `0 ≤ m < d_{ij}`, and 0 otherwise.
pub fn lift_cartan(q: &QuiverMult) -> LiftedCartan {
    let c = q.cartan().c;
    let index: Vec<(usize, usize)> = (0..q.vertex_count()).flat_map(|i| (0..q.mult(i)).map(move |k| (i, k))).collect();
    let n = index.len();
    let mat = Matrix::from_fn(n, n, |a, b| {
        let (i, k) = index[a];
        let (j, l) = index[b];
        let (fij, fji) = (q.f_ij(i, j), q.f_ij(j, i));
        let hit = (0..q.d_ij(i, j)).any(|m| k == fji * m && l == fij * m);
        if hit {
            c[(i, j)]
        } else {
            0
        }
    });
    let d = index.iter().map(|&(i, _)| q.mult(i) as i64).collect();
    LiftedCartan { index, c: mat, d }
}

/// Order of `s_i s_j` in the Weyl group; `None` stands for infinity.
pub fn coxeter_order(q: &QuiverMult, i: usize, j: usize) -> Result<Option<u32>> {
    check_vertex(q, i)?;
    check_vertex(q, j)?;
    if i == j {
        return Err(Error::SameVertex);
    }
    let c = q.cartan().c;
    Ok(match c[(i, j)] * c[(j, i)] {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CoxeterReport {
    pub checks: Vec<RelationCheck>,
    /// Pairs with `m_{ij} = ∞`, reported and not checked.
    pub skipped: Vec<String>,
}

impl CoxeterReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for CoxeterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.relation)?;
        }
        for s in &self.skipped {
            writeln!(f, "skip {s}")?;
        }
        Ok(())
    }
}

/// Checks `r_i² = Id`, `(r_i r_j)^{m_{ij}} = Id` on `R_𝐝` and the same for
/// `s_i` on `ℤ^I`, as exact matrix identities.
pub fn verify_coxeter(q: &QuiverMult) -> CoxeterReport {
    let n = q.vertex_count();
    let r: Vec<Matrix<i64>> = (0..n).map(|i| param_matrix(q, i)).collect();
    let s: Vec<Matrix<i64>> = (0..n).map(|i| dim_matrix(q, i)).collect();
    let id_r = Matrix::identity(param_offsets(q).1);
    let id_s = Matrix::identity(n);
    let mut report = CoxeterReport::default();
    for i in 0..n {
        let name = q.name(i);
        report.checks.push(RelationCheck { relation: format!("r_{name}^2 = Id"), passed: r[i].mul(&r[i]) == id_r });
        report.checks.push(RelationCheck { relation: format!("s_{name}^2 = Id"), passed: s[i].mul(&s[i]) == id_s });
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (q.name(i), q.name(j));
            match coxeter_order(q, i, j).expect("distinct valid vertices") {
                Some(m) => {
                    let rr = r[i].mul(&r[j]).pow(m);
                    let ss = s[i].mul(&s[j]).pow(m);
                    report.checks.push(RelationCheck { relation: format!("(r_{a} r_{b})^{m} = Id"), passed: rr == id_r });
                    report.checks.push(RelationCheck { relation: format!("(s_{a} s_{b})^{m} = Id"), passed: ss == id_s });
                }
                None => report.skipped.push(format!("m({a},{b}) = infinity")),
            }
        }
    }
    report
}

/// Checks that `r_i` is the pairing-transpose of `s̃_i` and that `s̃_i` is the
/// product of the lifted reflections `s_{(i,k)}`, `k < d_i`.
pub fn verify_coherence(q: &QuiverMult) -> CoxeterReport {
    let p = pairing_matrix(q);
    let lc = lift_cartan(q);
    let mut report = CoxeterReport::default();
    report.checks.push(RelationCheck { relation: "lifted Cartan matrix is symmetrizable".into(), passed: lc.is_symmetrizable() });
    for i in 0..q.vertex_count() {
        let name = q.name(i);
        let st = transpose_matrix(q, i);
        let r = param_matrix(q, i);
        report.checks.push(RelationCheck {
            relation: format!("r_{name} = P (s~_{name})^t P"),
            passed: r == p.mul(&st.transpose()).mul(&p),
        });
        let mut prod = Matrix::identity(lc.index.len());
        for k in 0..q.mult(i) {
            prod = prod.mul(&lc.reflection(lc.position(i, k).expect("index in range")));
        }
        report.checks.push(RelationCheck { relation: format!("s~_{name} = prod_m s_({name},m)"), passed: prod == st });
    }
    report
}

/// Checks `ρ ∘ r_i = ᵗs_i ∘ ρ` for every vertex.
pub fn verify_rho(q: &QuiverMult) -> CoxeterReport {
    let rho = rho_matrix(q);
    let mut report = CoxeterReport::default();
    for i in 0..q.vertex_count() {
        let lhs = rho.mul(&param_matrix(q, i));
        let rhs = dim_matrix(q, i).transpose().mul(&rho);
        report.checks.push(RelationCheck { relation: format!("rho r_{} = s_{}^t rho", q.name(i), q.name(i)), passed: lhs == rhs });
    }
    report
}
