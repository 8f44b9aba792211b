//! Homogeneous forms in `(X1, X2, X0)` over F_(q^6).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::gftower::{FElem, FieldTower};
use crate::linalg;
use crate::poly::{self, Poly};

/// Exponents of `X1, X2, X0`, in that order.
pub type Exponents = [u32; 3];

/// 3x3 matrix over F_(q^6), row-major.
pub type Matrix3 = [[FElem; 3]; 3];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousForm {
    degree: u32,
    terms: BTreeMap<Exponents, FElem>,
}

/// Monomials of total degree `d`, ordered by descending `X1` then `X2` exponent.
pub fn monomials(d: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

impl HomogeneousForm {
    pub fn zero(degree: u32) -> Self {
        HomogeneousForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FElem) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exps: Exponents, coeff: FElem) -> Self {
        let mut form = Self::zero(exps.iter().sum());
        if !coeff.is_zero() {
            form.terms.insert(exps, coeff);
        }
        form
    }

    /// `u1 X1 + u2 X2 + u0 X0`.
    pub fn linear(u: [FElem; 3]) -> Self {
        Self::from_terms(1, [([1, 0, 0], u[0]), ([0, 1, 0], u[1]), ([0, 0, 1], u[2])])
    }

    /// Panics if a monomial has the wrong total degree.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exponents, FElem)>) -> Self {
        let mut form = Self::zero(degree);
        for (e, c) in terms {
            assert_eq!(e.iter().sum::<u32>(), degree, "inhomogeneous monomial {e:?}");
            if !c.is_zero() {
                form.terms.insert(e, c);
            }
        }
        form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &FElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exponents) -> FElem {
        self.terms.get(&e).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, f: &FieldTower, x: [FElem; 3]) -> FElem {
        self.terms.iter().fold(FElem::ZERO, |acc, (e, &c)| {
            let m = f.mul(
                f.mul(f.pow(x[0], e[0] as u64), f.pow(x[1], e[1] as u64)),
                f.pow(x[2], e[2] as u64),
            );
            f.add(acc, f.mul(c, m))
        })
    }

    pub fn add(&self, f: &FieldTower, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            let v = f.add(out.coeff(*e), c);
            if v.is_zero() {
                out.terms.remove(e);
            } else {
                out.terms.insert(*e, v);
            }
        }
        out
    }

    pub fn scale(&self, f: &FieldTower, c: FElem) -> Self {
        Self::from_terms(self.degree, self.terms.iter().map(|(e, &v)| (*e, f.mul(v, c))))
    }

    pub fn mul(&self, f: &FieldTower, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let v = f.add(out.coeff(e), f.mul(ca, cb));
                if v.is_zero() {
                    out.terms.remove(&e);
                } else {
                    out.terms.insert(e, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, f: &FieldTower, mut e: u32) -> Self {
        let mut result = Self::constant(FElem::ONE);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        result
    }

    /// `F(m X)`: each old variable `X_i` becomes `sum_j m[i][j] X_j`.
    pub fn substitute(&self, f: &FieldTower, m: &Matrix3) -> Self {
        let lin: Vec<Self> = m.iter().map(|row| Self::linear(*row)).collect();
        let mut cache: BTreeMap<(usize, u32), Self> = BTreeMap::new();
        let mut power = |i: usize, k: u32| -> Self {
            cache
                .entry((i, k))
                .or_insert_with(|| lin[i].pow(f, k))
                .clone()
        };
        let mut out = Self::zero(self.degree);
        for (e, &c) in &self.terms {
            let term = power(0, e[0])
                .mul(f, &power(1, e[1]))
                .mul(f, &power(2, e[2]))
                .scale(f, c);
            out = out.add(f, &term);
        }
        out
    }

    /// The Frobenius conjugate fixing the subplane: coefficients raised to
    /// the q^2 power and variables cycled, `F^(q^2)(X2, X0, X1)`.
    ///
    /// For every subplane point `P`, `F(P)^(q^2)` and `conjugate(F)(P)` agree
    /// up to a factor depending only on `P` and the degree.
    pub fn conjugate(&self, f: &FieldTower) -> Self {
        Self::from_terms(
            self.degree,
            self.terms
                .iter()
                .map(|(e, &c)| ([e[2], e[0], e[1]], f.frob_q(c, 2))),
        )
    }

    /// `F(s * p + r)` as a polynomial in `s`.
    pub fn restrict_to_line(&self, f: &FieldTower, p: [FElem; 3], r: [FElem; 3]) -> Poly {
        let lines: Vec<Poly> = (0..3).map(|i| vec![r[i], p[i]]).collect();
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        let mut out = vec![FElem::ZERO];
        for (e, &c) in &self.terms {
            let mut term = vec![c];
            for i in 0..3 {
                let pw = cache
                    .entry((i, e[i]))
                    .or_insert_with(|| poly::pow(f, &lines[i], e[i]))
                    .clone();
                term = poly::mul(f, &term, &pw);
            }
            out = poly::add(f, &out, &term);
        }
        out
    }

    /// Leading coefficient in monomial order (the largest exponent triple).
    pub fn leading_coeff(&self) -> Option<FElem> {
        self.terms.values().next_back().copied()
    }

    /// Coefficient vector over `monomials(degree)`.
    pub fn to_vector(&self) -> Vec<FElem> {
        monomials(self.degree).iter().map(|&e| self.coeff(e)).collect()
    }

    pub fn from_vector(degree: u32, v: &[FElem]) -> Self {
        Self::from_terms(degree, monomials(degree).into_iter().zip(v.iter().copied()))
    }

    /// True when some nonzero scalar multiple of `self` equals `other`.
    pub fn proportional(&self, f: &FieldTower, other: &Self) -> bool {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return false;
        }
        let Some((e0, &c0)) = self.terms.iter().next() else {
            return other.is_zero();
        };
        let d0 = other.coeff(*e0);
        if d0.is_zero() {
            return false;
        }
        let ratio = f.div(d0, c0);
        self.terms
            .iter()
            .all(|(e, &c)| other.coeff(*e) == f.mul(c, ratio))
    }
}

/// A basis of the degree-`d` forms consisting of forms fixed by
/// [`HomogeneousForm::conjugate`]. Such forms take values in a fixed
/// F_(q^2)-coset on subplane points, so ratios of two of them are
/// F_(q^2)-valued there.
pub fn rational_basis(f: &FieldTower, d: u32) -> Vec<HomogeneousForm> {
    let monos = monomials(d);
    // 1, w, w^2 with w generating F_(q^6) over F_(q^2)
    let w = f.primitive();
    let thetas = [FElem::ONE, w, f.mul(w, w)];
    let mut candidates = Vec::new();
    for &e in &monos {
        for &theta in &thetas {
            let m = HomogeneousForm::monomial(e, theta);
            let m1 = m.conjugate(f);
            let m2 = m1.conjugate(f);
            candidates.push(m.add(f, &m1).add(f, &m2));
        }
    }
    let mut chosen: Vec<HomogeneousForm> = Vec::new();
    let mut rows: Vec<Vec<FElem>> = Vec::new();
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        rows.push(c.to_vector());
        if linalg::rank(f, &rows) > chosen.len() {
            chosen.push(c);
        } else {
            rows.pop();
        }
        if chosen.len() == monos.len() {
            break;
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gftower::PrimePower;

    fn tower(q: u64) -> FieldTower {
        FieldTower::build(PrimePower::from_q(q).unwrap()).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(0).len(), 1);
        assert_eq!(monomials(2).len(), 6);
        assert_eq!(monomials(3).len(), 10);
    }

    #[test]
    fn conjugate_has_order_three() {
        let f = tower(3);
        let g = HomogeneousForm::from_terms(
            2,
            [([2, 0, 0], f.primitive()), ([0, 1, 1], f.from_log(17)), ([1, 0, 1], FElem::ONE)],
        );
        let back = g.conjugate(&f).conjugate(&f).conjugate(&f);
        assert_eq!(back, g);
    }

    #[test]
    fn rational_basis_is_full_and_fixed() {
        let f = tower(3);
        for d in 0..4 {
            let basis = rational_basis(&f, d);
            assert_eq!(basis.len(), monomials(d).len());
            for b in &basis {
                assert_eq!(&b.conjugate(&f), b);
            }
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let f = tower(4);
        let g = HomogeneousForm::from_terms(
            3,
            [([3, 0, 0], f.from_log(5)), ([1, 1, 1], f.from_log(77)), ([0, 0, 3], FElem::ONE)],
        );
        let m = [
            [f.from_log(1), f.from_log(2), FElem::ZERO],
            [FElem::ONE, f.from_log(900), f.from_log(3)],
            [FElem::ZERO, FElem::ONE, f.from_log(11)],
        ];
        let sub = g.substitute(&f, &m);
        let x = [f.from_log(40), f.from_log(1000), f.from_log(7)];
        let mx: Vec<FElem> = m
            .iter()
            .map(|row| (0..3).fold(FElem::ZERO, |a, j| f.add(a, f.mul(row[j], x[j]))))
            .collect();
        assert_eq!(sub.eval(&f, x), g.eval(&f, [mx[0], mx[1], mx[2]]));
    }

    #[test]
    fn restriction_to_line_matches_evaluation() {
        let f = tower(3);
        let g = HomogeneousForm::from_terms(
            4,
            [([1, 3, 0], f.from_log(5)), ([0, 1, 3], FElem::ONE), ([2, 1, 1], f.from_log(9))],
        );
        let p = [FElem::ONE, f.from_log(3), f.from_log(100)];
        let r = [f.from_log(50), FElem::ZERO, FElem::ONE];
        let poly = g.restrict_to_line(&f, p, r);
        for s in f.elements().step_by(37) {
            let x = [0, 1, 2].map(|i| f.add(f.mul(s, p[i]), r[i]));
            assert_eq!(f.eval_poly(&poly, s), g.eval(&f, x));
        }
    }
}
