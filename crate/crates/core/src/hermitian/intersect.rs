//! Intersection divisors of plane curves, restricted to F_(q^6)-points.
//!
//! For two curves the coordinates are changed so that the projection centre
//! `(0:1:0)` lies on neither curve, the resultant in `X2` is recovered by
//! evaluation at enough abscissae and interpolation, and each root of the
//! resultant is attributed to the single intersection point above it. When
//! every projection line carries at most one intersection point, the root
//! multiplicity equals the local intersection multiplicity; centres for
//! which that fails are skipped.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{HomogeneousForm, Matrix3};
use crate::gftower::{FElem, FieldTower};
use crate::linalg;
use crate::poly::{self, Poly};
use crate::projgeom::{mat_vec, ProjLine, ProjPoint};

/// Formal sum of points with integer multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Divisor(BTreeMap<ProjPoint, i64>);

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_point(&mut self, p: ProjPoint, m: i64) {
        let e = self.0.entry(p).or_insert(0);
        *e += m;
        if *e == 0 {
            self.0.remove(&p);
        }
    }

    pub fn multiplicity(&self, p: &ProjPoint) -> i64 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (&ProjPoint, &i64)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Intersection of a curve with a line, from the restriction of the form to
/// a parametrization of the line.
pub fn line_divisor(f: &FieldTower, form: &HomogeneousForm, line: &ProjLine) -> Result<Divisor> {
    let (p, r) = line.two_points(f);
    let (pc, rc) = (p.coords(), r.coords());
    let restricted = form.restrict_to_line(f, pc, rc);
    let Some(deg) = poly::degree(&restricted) else {
        return Err(Error::Intersection("line is a component of the curve".into()));
    };
    let mut div = Divisor::new();
    for (s, m) in poly::roots_with_multiplicity(f, &restricted)? {
        let pt = ProjPoint::new(f, [0, 1, 2].map(|i| f.add(f.mul(s, pc[i]), rc[i])))?;
        div.add_point(pt, m as i64);
    }
    // the parameter value s = ∞ is the point p itself
    let at_infinity = form.degree() as i64 - deg as i64;
    if at_infinity > 0 {
        div.add_point(p, at_infinity);
    }
    Ok(div)
}

/// `form(x, y, 1)` (or `form(1, y, 0)` when `at_infinity`) as a polynomial in y.
fn slice_in_y(f: &FieldTower, form: &HomogeneousForm, x: FElem, at_infinity: bool) -> Poly {
    let mut out = vec![FElem::ZERO; form.degree() as usize + 1];
    for (e, &c) in form.terms() {
        let v = if at_infinity {
            if e[2] != 0 {
                continue;
            }
            c
        } else {
            f.mul(c, f.pow(x, e[0] as u64))
        };
        out[e[1] as usize] = f.add(out[e[1] as usize], v);
    }
    out
}

fn sylvester_det(f: &FieldTower, a: &[FElem], b: &[FElem]) -> FElem {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![FElem::ZERO; size]; size];
    for i in 0..n {
        for (k, &c) in a.iter().rev().enumerate() {
            mat[i][i + k] = c;
        }
    }
    for i in 0..m {
        for (k, &c) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = c;
        }
    }
    linalg::det(f, &mat)
}

/// The unique root of `g` if `g = c (y - y0)^k`, `k >= 1`.
fn single_root(f: &FieldTower, g: &[FElem]) -> Option<FElem> {
    let d = poly::degree(g)?;
    if d == 0 {
        return None;
    }
    let roots = poly::roots_with_multiplicity(f, g).ok()?;
    match roots.as_slice() {
        [(y0, k)] if *k == d => Some(*y0),
        _ => None,
    }
}

fn try_centre(
    f: &FieldTower,
    a: &HomogeneousForm,
    b: &HomogeneousForm,
    m: &Matrix3,
) -> Option<Result<Divisor>> {
    let ta = a.substitute(f, m);
    let tb = b.substitute(f, m);
    let (da, db) = (a.degree(), b.degree());
    if ta.coeff([0, da, 0]).is_zero() || tb.coeff([0, db, 0]).is_zero() {
        return None;
    }
    let total = (da * db) as usize;
    let xs: Vec<FElem> = (0..=total as u64).map(|k| f.from_log(k)).collect();
    let ys: Vec<FElem> = xs
        .iter()
        .map(|&x| sylvester_det(f, &slice_in_y(f, &ta, x, false), &slice_in_y(f, &tb, x, false)))
        .collect();
    let res = poly::interpolate(f, &xs, &ys);
    let Some(deg) = poly::degree(&res) else {
        return Some(Err(Error::Intersection("curves share a component".into())));
    };
    let mut div = Divisor::new();
    let to_original = |p: [FElem; 3]| ProjPoint::new(f, mat_vec(f, m, &p));
    for (x, mult) in poly::roots_with_multiplicity(f, &res).ok()? {
        let g = poly::gcd(f, &slice_in_y(f, &ta, x, false), &slice_in_y(f, &tb, x, false));
        let y0 = single_root(f, &g)?;
        match to_original([x, y0, FElem::ONE]) {
            Ok(p) => div.add_point(p, mult as i64),
            Err(e) => return Some(Err(e)),
        }
    }
    let at_inf = total - deg;
    if at_inf > 0 {
        let g = poly::gcd(f, &slice_in_y(f, &ta, FElem::ZERO, true), &slice_in_y(f, &tb, FElem::ZERO, true));
        let y0 = single_root(f, &g)?;
        match to_original([FElem::ONE, y0, FElem::ZERO]) {
            Ok(p) => div.add_point(p, at_inf as i64),
            Err(e) => return Some(Err(e)),
        }
    }
    Some(Ok(div))
}

/// Intersection divisor of two curves with no common component, over the
/// F_(q^6)-rational intersection points. Its degree equals the product of
/// the degrees exactly when all intersections are F_(q^6)-rational.
pub fn curve_divisor(f: &FieldTower, a: &HomogeneousForm, b: &HomogeneousForm) -> Result<Divisor> {
    // centres (c1 : 1 : c0), tried in a fixed order
    let candidates = (1..f.order().min(4096)).flat_map(|i| {
        [(FElem::from_index(i), FElem::from_index(i / 2 + 1)), (FElem::from_index(i), FElem::ZERO)]
    });
    for (c1, c0) in candidates {
        let m: Matrix3 = [
            [FElem::ONE, c1, FElem::ZERO],
            [FElem::ZERO, FElem::ONE, FElem::ZERO],
            [FElem::ZERO, c0, FElem::ONE],
        ];
        if let Some(r) = try_centre(f, a, b, &m) {
            return r;
        }
    }
    Err(Error::Intersection("no generic projection centre found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gftower::PrimePower;

    #[test]
    fn two_conics_meet_in_four_points() {
        let f = FieldTower::build(PrimePower::from_q(3).unwrap()).unwrap();
        let one = FElem::ONE;
        let neg = f.neg(one);
        // X1^2 - X0^2 and X2^2 - X0^2 meet at (±1 : ±1 : 1)
        let c1 = HomogeneousForm::from_terms(2, [([2, 0, 0], one), ([0, 0, 2], neg)]);
        let c2 = HomogeneousForm::from_terms(2, [([0, 2, 0], one), ([0, 0, 2], neg)]);
        let d = curve_divisor(&f, &c1, &c2).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn tangent_conics_have_multiplicity() {
        let f = FieldTower::build(PrimePower::from_q(3).unwrap()).unwrap();
        let one = FElem::ONE;
        // X2 X0 - X1^2 and X2 X0 - X1^2 - X2^2: meet at (0:0:1) with multiplicity 4
        let neg = f.neg(one);
        let c1 = HomogeneousForm::from_terms(2, [([0, 1, 1], one), ([2, 0, 0], neg)]);
        let c2 = HomogeneousForm::from_terms(2, [([0, 1, 1], one), ([2, 0, 0], neg), ([0, 2, 0], neg)]);
        let d = curve_divisor(&f, &c1, &c2).unwrap();
        assert_eq!(d.multiplicity(&ProjPoint::A0), 4);
        assert_eq!(d.degree(), 4);
    }
}
