//! Quivers with multiplicities, their doubles and Cartan data.

mod parse;

use std::collections::HashSet;
use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub use parse::parse_quiver;

/// Integer vector indexed by vertices, in declaration order.
pub type DimVector = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub name: String,
    pub mult: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A quiver `Q` without edge-loops, each vertex carrying a multiplicity `d_i ≥ 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuiverMult {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

impl QuiverMult {
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if v.mult == 0 {
                return Err(Error::InvalidSpec(format!("vertex `{}` has multiplicity 0", v.name)));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::DuplicateName(v.name.clone()));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::DuplicateName(a.name.clone()));
            }
            if a.src >= vertices.len() || a.dst >= vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", a.src.max(a.dst))));
            }
            if a.src == a.dst {
                return Err(Error::InvalidSpec(format!("edge-loop `{}` is forbidden", a.name)));
            }
        }
        Ok(QuiverMult { vertices, arrows })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn mult(&self, i: usize) -> usize {
        self.vertices[i].mult
    }

    pub fn mults(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.mult).collect()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i].name
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v.name == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// `d_{ij} = gcd(d_i, d_j)`.
    pub fn d_ij(&self, i: usize, j: usize) -> usize {
        self.mult(i).gcd(&self.mult(j))
    }

    /// `f_{ij} = d_j / d_{ij}`.
    pub fn f_ij(&self, i: usize, j: usize) -> usize {
        self.mult(j) / self.d_ij(i, j)
    }

    /// Same quiver with one arrow reversed.
    pub fn reversed(&self, arrow: usize) -> Self {
        let mut q = self.clone();
        let a = &mut q.arrows[arrow];
        std::mem::swap(&mut a.src, &mut a.dst);
        q
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len != self.vertex_count() {
            return Err(Error::LengthMismatch { expected: self.vertex_count(), got: len });
        }
        Ok(())
    }

    pub fn double(&self) -> DoubleQuiver {
        let mut halves = Vec::with_capacity(2 * self.arrows.len());
        for (a, arr) in self.arrows.iter().enumerate() {
            let dh = self.d_ij(arr.src, arr.dst);
            halves.push(HalfArrow {
                name: arr.name.clone(),
                arrow: a,
                src: arr.src,
                dst: arr.dst,
                sgn: 1,
                d: dh,
                f: self.mult(arr.dst) / dh,
            });
            halves.push(HalfArrow {
                name: format!("{}~", arr.name),
                arrow: a,
                src: arr.dst,
                dst: arr.src,
                sgn: -1,
                d: dh,
                f: self.mult(arr.src) / dh,
            });
        }
        DoubleQuiver { halves }
    }

    pub fn cartan(&self) -> CartanData {
        let n = self.vertex_count();
        let mut a = Matrix::<i64>::zeros(n, n);
        for arr in &self.arrows {
            a[(arr.src, arr.dst)] += 1;
            a[(arr.dst, arr.src)] += 1;
        }
        let aprime = Matrix::from_fn(n, n, |i, j| BigRational::new(a[(i, j)].into(), (self.d_ij(i, j) as i64).into()));
        let c = Matrix::from_fn(n, n, |i, j| {
            let delta = if i == j { 2 } else { 0 };
            delta - a[(i, j)] * self.f_ij(i, j) as i64
        });
        let d = self.mults().iter().map(|&m| m as i64).collect();
        CartanData { a, aprime, d, c }
    }

    /// `(v, w) = ᵗv D C w`.
    pub fn bilinear(&self, v: &[i64], w: &[i64]) -> Result<i64> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        Ok(self.cartan().bilinear(v, w))
    }

    /// `2 − (v, v)`.
    pub fn expected_dim(&self, v: &[i64]) -> Result<i64> {
        self.check_len(v.len())?;
        if v.iter().any(|&x| x < 0) {
            return Err(Error::NegativeDimension);
        }
        Ok(2 - self.bilinear(v, v)?)
    }

    /// Canonical DSL text; parses back to an equal quiver.
    pub fn to_dsl(&self) -> String {
        let mut s = String::from("quiver {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  vertex {} mult {}", v.name, v.mult);
        }
        for a in &self.arrows {
            let _ = writeln!(s, "  arrow {} : {} -> {}", a.name, self.name(a.src), self.name(a.dst));
        }
        s.push_str("}\n");
        s
    }

    /// Graphviz `digraph` text, nodes and edges in declaration order.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{0}\" [label=\"{0} (mult {1})\"];", v.name, v.mult);
        }
        for a in &self.arrows {
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", self.name(a.src), self.name(a.dst), a.name);
        }
        s.push_str("}\n");
        s
    }
}

/// One arrow of the double quiver `Q + Q̄`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfArrow {
    /// Arrow name, with a `~` suffix on reversed arrows.
    pub name: String,
    /// Index of the underlying arrow of `Q`.
    pub arrow: usize,
    pub src: usize,
    pub dst: usize,
    pub sgn: i64,
    /// `d_h = gcd(d_{s(h)}, d_{t(h)})`.
    pub d: usize,
    /// `f_h = d_{t(h)} / d_h`.
    pub f: usize,
}

/// The double quiver. Half-arrow `2a` is arrow `a` of `Q`, `2a + 1` its reverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleQuiver {
    pub halves: Vec<HalfArrow>,
}

impl DoubleQuiver {
    pub fn bar(h: usize) -> usize {
        h ^ 1
    }

    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.halves.iter().position(|h| h.name == name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }
}

/// Generalized Cartan matrix data `C = 2 Id − A′D`.
#[derive(Clone, PartialEq, Debug)]
pub struct CartanData {
    /// Number of arrows of the double from `i` to `j`.
    pub a: Matrix<i64>,
    /// `a_{ij} / d_{ij}`.
    pub aprime: Matrix<BigRational>,
    /// Diagonal of the symmetrizer.
    pub d: Vec<i64>,
    pub c: Matrix<i64>,
}

impl CartanData {
    pub fn n(&self) -> usize {
        self.d.len()
    }

    /// The symmetric matrix `DC`.
    pub fn dc(&self) -> Matrix<i64> {
        Matrix::from_fn(self.n(), self.n(), |i, j| self.d[i] * self.c[(i, j)])
    }

    pub fn bilinear(&self, v: &[i64], w: &[i64]) -> i64 {
        let dc = self.dc();
        let mut acc = 0;
        for i in 0..self.n() {
            for j in 0..self.n() {
                acc += v[i] * dc[(i, j)] * w[j];
            }
        }
        acc
    }

    pub fn is_symmetrizable(&self) -> bool {
        let dc = self.dc();
        dc == dc.transpose()
    }
}
