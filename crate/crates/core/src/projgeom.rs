//! Points, lines and collineations of PG(2, q^6), and the subplane Π of
//! order q^2 sitting inside it in non-canonical position.
//!
//! Π has point `i = (a^i : a^(i(q^2+1)) : 1)` and line
//! `j : a^j X1 + a^(j(q^2+1)) X2 + X0 = 0` for `i, j` in `0..q^4+q^2+1`,
//! with `a` the canonical primitive `(q^4+q^2+1)`-th root of unity. Point `i`
//! lies on line `j` iff `i + j` (mod the plane size) is in a fixed
//! difference set, which makes incidence an O(1) lookup.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::Matrix3;
use crate::gftower::{FElem, FieldTower};

/// Homogeneous triple `(x1, x2, x0)`, normalized so the last nonzero
/// coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjPoint([FElem; 3]);

fn normalize(f: &FieldTower, v: [FElem; 3]) -> Result<[FElem; 3]> {
    let k = (0..3).rev().find(|&i| !v[i].is_zero()).ok_or(Error::ZeroVector)?;
    let inv = f.inv(v[k]);
    Ok(v.map(|x| f.mul(x, inv)))
}

impl ProjPoint {
    pub fn new(f: &FieldTower, coords: [FElem; 3]) -> Result<Self> {
        normalize(f, coords).map(ProjPoint)
    }

    pub fn coords(&self) -> [FElem; 3] {
        self.0
    }

    pub const A1: ProjPoint = ProjPoint([FElem::ONE, FElem::ZERO, FElem::ZERO]);
    pub const A2: ProjPoint = ProjPoint([FElem::ZERO, FElem::ONE, FElem::ZERO]);
    pub const A0: ProjPoint = ProjPoint([FElem::ZERO, FElem::ZERO, FElem::ONE]);
}

/// Line `u1 X1 + u2 X2 + u0 X0 = 0`, coefficients normalized like points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjLine([FElem; 3]);

impl ProjLine {
    pub fn new(f: &FieldTower, coeffs: [FElem; 3]) -> Result<Self> {
        normalize(f, coeffs).map(ProjLine)
    }

    pub fn coeffs(&self) -> [FElem; 3] {
        self.0
    }

    pub fn contains(&self, f: &FieldTower, p: &ProjPoint) -> bool {
        dot(f, &self.0, &p.0).is_zero()
    }

    /// Line through two distinct points.
    pub fn through(f: &FieldTower, a: &ProjPoint, b: &ProjPoint) -> Result<Self> {
        ProjLine::new(f, cross(f, &a.0, &b.0))
    }

    /// Two distinct points on the line.
    pub fn two_points(&self, f: &FieldTower) -> (ProjPoint, ProjPoint) {
        let basis = [
            [FElem::ONE, FElem::ZERO, FElem::ZERO],
            [FElem::ZERO, FElem::ONE, FElem::ZERO],
            [FElem::ZERO, FElem::ZERO, FElem::ONE],
        ];
        let mut found: Vec<ProjPoint> = Vec::new();
        for e in basis {
            if let Ok(p) = ProjPoint::new(f, cross(f, &self.0, &e)) {
                if !found.contains(&p) {
                    found.push(p);
                }
            }
        }
        (found[0], found[1])
    }

    /// `ℓ_{1,2}`, `ℓ_{2,0}`, `ℓ_{0,1}`: the sides `X0 = 0`, `X1 = 0`, `X2 = 0`
    /// of the fundamental triangle.
    pub const X0_ZERO: ProjLine = ProjLine([FElem::ZERO, FElem::ZERO, FElem::ONE]);
    pub const X1_ZERO: ProjLine = ProjLine([FElem::ONE, FElem::ZERO, FElem::ZERO]);
    pub const X2_ZERO: ProjLine = ProjLine([FElem::ZERO, FElem::ONE, FElem::ZERO]);
}

pub fn dot(f: &FieldTower, a: &[FElem; 3], b: &[FElem; 3]) -> FElem {
    (0..3).fold(FElem::ZERO, |acc, i| f.add(acc, f.mul(a[i], b[i])))
}

pub fn cross(f: &FieldTower, a: &[FElem; 3], b: &[FElem; 3]) -> [FElem; 3] {
    let c = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    [c(1, 2), c(2, 0), c(0, 1)]
}

pub fn mat_vec(f: &FieldTower, m: &Matrix3, v: &[FElem; 3]) -> [FElem; 3] {
    [0, 1, 2].map(|i| dot(f, &m[i], v))
}

pub fn mat_mul(f: &FieldTower, a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[FElem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).fold(FElem::ZERO, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])));
        }
    }
    out
}

pub fn transpose(m: &Matrix3) -> Matrix3 {
    let mut out = *m;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

pub fn det3(f: &FieldTower, m: &Matrix3) -> FElem {
    dot(f, &m[0], &cross(f, &m[1], &m[2]))
}

pub fn identity3() -> Matrix3 {
    let mut m = [[FElem::ZERO; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = FElem::ONE;
    }
    m
}

/// `x ↦ M · x^(q^twist)`, taken modulo scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collineation {
    pub matrix: Matrix3,
    /// Frobenius exponent in units of q-powers, in `0..6`.
    pub twist: u32,
}

impl Collineation {
    pub fn linear(matrix: Matrix3) -> Self {
        Collineation { matrix, twist: 0 }
    }

    pub fn identity() -> Self {
        Self::linear(identity3())
    }

    pub fn diagonal(d: [FElem; 3]) -> Self {
        let mut m = [[FElem::ZERO; 3]; 3];
        for i in 0..3 {
            m[i][i] = d[i];
        }
        Self::linear(m)
    }

    pub fn apply_vec(&self, f: &FieldTower, v: &[FElem; 3]) -> [FElem; 3] {
        let tw = v.map(|x| f.frob_q(x, self.twist));
        mat_vec(f, &self.matrix, &tw)
    }

    pub fn apply(&self, f: &FieldTower, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(f, self.apply_vec(f, &p.0)).expect("collineation must be invertible")
    }

    /// `self ∘ other`.
    pub fn compose(&self, f: &FieldTower, other: &Self) -> Self {
        let twisted = other.matrix.map(|row| row.map(|x| f.frob_q(x, self.twist)));
        Collineation {
            matrix: mat_mul(f, &self.matrix, &twisted),
            twist: (self.twist + other.twist) % 6,
        }
    }

    pub fn power(&self, f: &FieldTower, mut e: u64) -> Self {
        let mut result = Self::identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(f, &base);
            }
            base = base.compose(f, &base);
            e >>= 1;
        }
        result
    }

    pub fn det(&self, f: &FieldTower) -> FElem {
        det3(f, &self.matrix)
    }

    /// Equality modulo nonzero scalars.
    pub fn projectively_equal(&self, f: &FieldTower, other: &Self) -> bool {
        if self.twist != other.twist {
            return false;
        }
        let flat_a: Vec<FElem> = self.matrix.iter().flatten().copied().collect();
        let flat_b: Vec<FElem> = other.matrix.iter().flatten().copied().collect();
        let Some(k) = flat_a.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if flat_b[k].is_zero() {
            return false;
        }
        let ratio = f.div(flat_b[k], flat_a[k]);
        flat_a.iter().zip(&flat_b).all(|(&a, &b)| f.mul(a, ratio) == b)
    }

    pub fn is_scalar(&self, f: &FieldTower) -> bool {
        self.projectively_equal(f, &Self::identity())
    }
}

/// `Φ_Π = ρ ∘ Φ`: the q^2-power map followed by `(X1:X2:X0) ↦ (X0:X1:X2)`.
pub fn frobenius_collineation() -> Collineation {
    let z = FElem::ZERO;
    let o = FElem::ONE;
    Collineation {
        matrix: [[z, z, o], [o, z, z], [z, o, z]],
        twist: 2,
    }
}

/// `P, gP, g^2 P, ...` until the orbit closes.
pub fn orbit(f: &FieldTower, g: &Collineation, p: &ProjPoint) -> Vec<ProjPoint> {
    let mut out = vec![*p];
    let mut cur = g.apply(f, p);
    while cur != *p {
        out.push(cur);
        cur = g.apply(f, &cur);
    }
    out
}

/// The subplane Π.
#[derive(Debug, Clone)]
pub struct Subplane {
    a: FElem,
    size: usize,
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, usize>,
    /// `s` with `a^s + a^(s(q^2+1)) + 1 = 0`
    difference_set: Vec<usize>,
    in_difference_set: Vec<bool>,
}

impl Subplane {
    pub fn build(f: &FieldTower) -> Self {
        let q = f.q();
        let size = (q.pow(4) + q * q + 1) as usize;
        let a = f.root_of_unity(size as u64).expect("q^4+q^2+1 divides q^6-1");
        let coords = |i: usize| {
            let x = f.pow(a, i as u64);
            [x, f.pow(x, q * q + 1), FElem::ONE]
        };
        let points: Vec<ProjPoint> = (0..size).map(|i| ProjPoint(coords(i))).collect();
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let in_difference_set: Vec<bool> = (0..size)
            .map(|s| {
                let c = coords(s);
                f.add(f.add(c[0], c[1]), FElem::ONE).is_zero()
            })
            .collect();
        let difference_set = (0..size).filter(|&s| in_difference_set[s]).collect();
        Subplane {
            a,
            size,
            points,
            index,
            difference_set,
            in_difference_set,
        }
    }

    /// The primitive `(q^4+q^2+1)`-th root of unity generating Π.
    pub fn generator(&self) -> FElem {
        self.a
    }

    /// Number of points (and of lines), `q^4+q^2+1`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        self.points[i % self.size]
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Line `j` has the same coordinates as point `j`.
    pub fn line(&self, j: usize) -> ProjLine {
        ProjLine(self.points[j % self.size].0)
    }

    pub fn line_index_of(&self, l: &ProjLine) -> Option<usize> {
        self.index.get(&ProjPoint(l.0)).copied()
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.in_difference_set[(point + line) % self.size]
    }

    pub fn points_on_line(&self, j: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .difference_set
            .iter()
            .map(|&s| (s + self.size - j % self.size) % self.size)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn lines_through(&self, i: usize) -> Vec<usize> {
        // same arithmetic: line j contains i iff i + j ∈ S
        self.points_on_line(i)
    }

    /// The Π-line through two distinct Π-points.
    pub fn line_through(&self, i: usize, k: usize) -> usize {
        let a = self.lines_through(i);
        *a.iter()
            .find(|&&j| self.incident(k, j))
            .expect("two points of a projective plane span a line")
    }

    /// Π-points on a Π-line.
    pub fn line_section(&self, l: &ProjLine) -> Result<Vec<ProjPoint>> {
        let j = self.line_index_of(l).ok_or(Error::NotSubplaneLine)?;
        Ok(self.points_on_line(j).into_iter().map(|i| self.points[i]).collect())
    }

    pub fn difference_set(&self) -> &[usize] {
        &self.difference_set
    }
}
