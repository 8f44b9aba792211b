//! Riemann–Roch spaces `L(λG)` on a curve `H_τ` of the family, where `G` is
//! a Γ-orbit of its Π-points, and the rational functions whose evaluations
//! realize low-weight codewords.

use serde::Serialize;

use crate::codes::{EvaluationDomain, SmallField};
use crate::error::{Error, Result};
use crate::forms::{rational_basis, HomogeneousForm};
use crate::gftower::{FElem, FieldTower};
use crate::hermitian::{Geometry, Orbit};
use crate::linalg;

/// `num / den` with forms of equal degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalFunction {
    pub num: HomogeneousForm,
    pub den: HomogeneousForm,
}

impl RationalFunction {
    /// Panics if the degrees differ.
    pub fn new(num: HomogeneousForm, den: HomogeneousForm) -> Self {
        assert_eq!(num.degree(), den.degree(), "numerator and denominator degrees differ");
        RationalFunction { num, den }
    }

    pub fn one() -> Self {
        Self::new(
            HomogeneousForm::constant(FElem::ONE),
            HomogeneousForm::constant(FElem::ONE),
        )
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, f: &FieldTower, x: [FElem; 3]) -> Option<FElem> {
        let d = self.den.eval(f, x);
        (!d.is_zero()).then(|| f.div(self.num.eval(f, x), d))
    }

    pub fn mul(&self, f: &FieldTower, other: &Self) -> Self {
        Self::new(self.num.mul(f, &other.num), self.den.mul(f, &other.den))
    }

    /// Values at the domain points, in domain order.
    pub fn evaluate_on(&self, geo: &Geometry, dom: &EvaluationDomain) -> Result<Vec<FElem>> {
        let f = geo.tower();
        dom.points
            .iter()
            .enumerate()
            .map(|(pos, &i)| {
                self.eval(f, geo.plane().point(i).coords())
                    .ok_or(Error::PoleOnDomain(pos))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RRBasis {
    pub tau: usize,
    pub lambda: u32,
    pub functions: Vec<RationalFunction>,
}

/// `deg G - g + 1`, valid once `deg G > 2g - 2`.
pub fn rr_dimension(deg_g: i64, genus: i64) -> Result<i64> {
    if deg_g <= 2 * genus - 2 {
        return Err(Error::BelowThreshold {
            deg: deg_g,
            threshold: 2 * genus - 2,
        });
    }
    Ok(deg_g - genus + 1)
}

pub fn genus(q: u64) -> i64 {
    (q * (q - 1) / 2) as i64
}

/// `X1 X2 X0`, the product of the sides of the fundamental triangle.
pub fn triangle_form() -> HomogeneousForm {
    HomogeneousForm::monomial([1, 1, 1], FElem::ONE)
}

/// The auxiliary curves of the λ = 1 basis: `t` the first curve other than
/// τ through G, and `u` the first curve other than τ and t through the
/// first point of D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuxiliaryCurves {
    pub t: usize,
    pub u: usize,
}

pub fn default_auxiliary(geo: &Geometry, dom: &EvaluationDomain) -> Result<AuxiliaryCurves> {
    let t = *geo
        .curves_through_orbit(&dom.g)?
        .iter()
        .find(|&&c| c != dom.tau)
        .ok_or(Error::InsufficientCurves { found: 0, needed: 1 })?;
    let first = geo.orbit_of(dom.points[0]);
    let u = *geo
        .curves_through_orbit(&first)?
        .iter()
        .find(|&&c| c != dom.tau && c != t)
        .ok_or(Error::InsufficientCurves { found: 0, needed: 1 })?;
    Ok(AuxiliaryCurves { t, u })
}

fn passes_through(geo: &Geometry, curve: usize, points: &[usize]) -> bool {
    let f = geo.tower();
    let form = &geo.curve(curve).form;
    points.iter().all(|&i| form.eval(f, geo.plane().point(i).coords()).is_zero())
}

/// `{T · X1X2X0 / F_t : T in a basis of degree q-2 forms} ∪ {F_u / F_t, 1}`.
pub fn basis_l_g(geo: &Geometry, dom: &EvaluationDomain, aux: AuxiliaryCurves) -> Result<RRBasis> {
    let f = geo.tower();
    let q = geo.q() as u32;
    let AuxiliaryCurves { t, u } = aux;
    if t == dom.tau || !passes_through(geo, t, &dom.g.indices) {
        return Err(Error::BadAuxiliaryCurve(format!("curve {t} does not pass through G")));
    }
    if u == dom.tau || u == t {
        return Err(Error::BadAuxiliaryCurve(format!("curve {u} repeats τ or t")));
    }
    if !dom.points.iter().any(|&i| passes_through(geo, u, &[i])) {
        return Err(Error::BadAuxiliaryCurve(format!("curve {u} misses D")));
    }
    let ft = &geo.curve(t).form;
    let tri = triangle_form();
    let mut functions: Vec<RationalFunction> = rational_basis(f, q - 2)
        .into_iter()
        .map(|b| RationalFunction::new(b.mul(f, &tri), ft.clone()))
        .collect();
    functions.push(RationalFunction::new(geo.curve(u).form.clone(), ft.clone()));
    functions.push(RationalFunction::one());
    Ok(RRBasis {
        tau: dom.tau,
        lambda: 1,
        functions,
    })
}

/// The functions of the basis that vanish on the three triangle vertices,
/// spanning the subspace Λ.
pub fn lambda_part(basis: &RRBasis, q: u64) -> Vec<RationalFunction> {
    basis.functions[..(q * (q - 1) / 2) as usize].to_vec()
}

/// Rank over F_(q^6) of a list of value vectors.
pub fn value_rank(f: &FieldTower, rows: &[Vec<FElem>]) -> usize {
    linalg::rank(f, &rows.to_vec())
}

/// All λ-fold products of the λ = 1 basis; their evaluations on D must span
/// a space of the Riemann–Roch dimension.
pub fn spanning_l_lambda_g(
    geo: &Geometry,
    dom: &EvaluationDomain,
    basis: &RRBasis,
    lambda: u32,
) -> Result<RRBasis> {
    let q = geo.q();
    if lambda == 0 || lambda as u64 > q - 1 {
        return Err(Error::LambdaOutOfRange {
            lambda,
            max: (q - 1) as u32,
        });
    }
    let f = geo.tower();
    let b = &basis.functions;
    let mut functions = Vec::new();
    let mut idx = vec![0usize; lambda as usize];
    loop {
        let prod = idx[1..]
            .iter()
            .fold(b[idx[0]].clone(), |acc, &i| acc.mul(f, &b[i]));
        functions.push(prod);
        // next non-decreasing index tuple
        let Some(pos) = (0..idx.len()).rev().find(|&p| idx[p] + 1 < b.len()) else {
            break;
        };
        let v = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = v;
        }
    }
    let rows: Vec<Vec<FElem>> = functions
        .iter()
        .map(|r| r.evaluate_on(geo, dom))
        .collect::<Result<_>>()?;
    let expected = rr_dimension(lambda as i64 * (q * q - q + 1) as i64, genus(q))? as usize;
    let found = value_rank(f, &rows);
    if found != expected {
        return Err(Error::RankShortfall { found, expected });
    }
    Ok(RRBasis {
        tau: basis.tau,
        lambda,
        functions,
    })
}

/// Chords of `H_τ` through the Π-point `u` that avoid G, by line index.
pub fn chords_avoiding_g(geo: &Geometry, dom: &EvaluationDomain, u: usize) -> Vec<usize> {
    let n = geo.plane().size();
    let mut unital = vec![false; n];
    for i in geo.unital_indices(geo.curve(dom.tau)) {
        unital[i] = true;
    }
    let mut in_g = vec![false; n];
    for &i in &dom.g.indices {
        in_g[i] = true;
    }
    geo.disjoint_chords_through(&unital, &in_g, u)
}

/// `L_1 ⋯ L_(q-2) · X1X2X0 / F_t` for chords `L_i` of `H_τ` through `u`
/// missing G. Its zeros on D are the `(q+1)(q-2)` chord points.
pub fn chord_witness_polynomial(
    geo: &Geometry,
    dom: &EvaluationDomain,
    aux: AuxiliaryCurves,
    u: usize,
) -> Result<RationalFunction> {
    let f = geo.tower();
    let needed = geo.q() as usize - 2;
    let chords = chords_avoiding_g(geo, dom, u);
    if chords.len() < needed {
        return Err(Error::NotEnoughChords {
            found: chords.len(),
            needed,
        });
    }
    let num = chords[..needed]
        .iter()
        .fold(triangle_form(), |acc, &j| {
            acc.mul(f, &HomogeneousForm::linear(geo.plane().line(j).coeffs()))
        });
    Ok(RationalFunction::new(num, geo.curve(aux.t).form.clone()))
}

/// For each of the first λ orbits of D, the first curve other than τ through it.
pub fn default_lambda_curves(geo: &Geometry, dom: &EvaluationDomain, lambda: u32) -> Result<Vec<usize>> {
    if lambda as usize > dom.orbits.len() {
        return Err(Error::InsufficientCurves {
            found: dom.orbits.len(),
            needed: lambda as usize,
        });
    }
    dom.orbits[..lambda as usize]
        .iter()
        .map(|o| {
            geo.curves_through_orbit(o)?
                .into_iter()
                .find(|&c| c != dom.tau)
                .ok_or(Error::InsufficientCurves { found: 0, needed: 1 })
        })
        .collect()
}

/// `F_(u_1) ⋯ F_(u_λ) / F_t^λ` with the `u_i` through λ distinct orbits of D.
/// It lies in `L(λG)` and vanishes on exactly `λ(q^2-q+1)` points of D.
pub fn lambda_product_witness(
    geo: &Geometry,
    dom: &EvaluationDomain,
    aux: AuxiliaryCurves,
    lambda: u32,
    curves: &[usize],
) -> Result<RationalFunction> {
    let f = geo.tower();
    let q = geo.q();
    if lambda == 0 || lambda as u64 > q - 1 {
        return Err(Error::LambdaOutOfRange {
            lambda,
            max: (q - 1) as u32,
        });
    }
    if curves.len() < lambda as usize {
        return Err(Error::InsufficientCurves {
            found: curves.len(),
            needed: lambda as usize,
        });
    }
    let curves = &curves[..lambda as usize];
    let mut hit = Vec::new();
    for &c in curves {
        if c == dom.tau {
            return Err(Error::BadAuxiliaryCurve(format!("curve {c} is τ itself")));
        }
        let Some(o) = dom
            .orbits
            .iter()
            .position(|o| passes_through(geo, c, &o.indices))
        else {
            return Err(Error::BadAuxiliaryCurve(format!("curve {c} contains no orbit of D")));
        };
        if hit.contains(&o) {
            return Err(Error::BadAuxiliaryCurve(format!("orbit {o} of D used twice")));
        }
        hit.push(o);
    }
    let ft = &geo.curve(aux.t).form;
    let num = curves[1..]
        .iter()
        .fold(geo.curve(curves[0]).form.clone(), |acc, &c| acc.mul(f, &geo.curve(c).form));
    Ok(RationalFunction::new(num, ft.pow(f, lambda)))
}

/// Number of points chosen on Ω for the interpolating form Z.
pub fn z_point_count(q: u64) -> usize {
    ((q - 2) * (q + 1) / 2) as usize
}

/// Default choice of Z-points: Ω in B-order with its representative skipped.
pub fn default_z_points(q: u64, omega: &Orbit) -> Vec<usize> {
    omega.indices[1..=z_point_count(q)].to_vec()
}

/// A nonzero form of degree `q-2` through the given Π-points, with
/// coefficients over F_(q^2) in the basis of conjugation-fixed forms.
pub fn interpolate_z(geo: &Geometry, sf: &SmallField, points: &[usize]) -> Result<HomogeneousForm> {
    let f = geo.tower();
    let d = geo.q() as u32 - 2;
    let basis = rational_basis(f, d);
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(points.len());
    for &i in points {
        let x = geo.plane().point(i).coords();
        let vals: Vec<FElem> = basis.iter().map(|b| b.eval(f, x)).collect();
        let Some(&c) = vals.iter().find(|v| !v.is_zero()) else {
            rows.push(vec![0; basis.len()]);
            continue;
        };
        let ci = f.inv(c);
        let row = vals
            .iter()
            .map(|&v| {
                sf.from_tower(f, f.mul(v, ci)).ok_or_else(|| {
                    Error::InterpolationFailure("point values leave F_(q^2)".into())
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        rows.push(row);
    }
    let ker = linalg::kernel(sf, &rows, basis.len());
    let Some(sol) = ker.first() else {
        return Err(Error::InterpolationFailure("only the zero form passes through the points".into()));
    };
    Ok(basis
        .iter()
        .zip(sol)
        .fold(HomogeneousForm::zero(d), |acc, (b, &c)| acc.add(f, &b.scale(f, sf.to_tower(c)))))
}

#[derive(Debug, Clone, Serialize)]
pub struct DifferentialWitness {
    pub function: RationalFunction,
    pub omega: Orbit,
    pub z_points: Vec<usize>,
    /// One curve through each orbit of D other than Ω.
    pub cover_curves: Vec<usize>,
    pub z: HomogeneousForm,
}

/// `F_t^2 · F · Z / ((X1X2X0)^q · X0^(q^2-1))` where F is a product of
/// `q-1` curves covering the orbits of D other than Ω and Z has degree
/// `q-2` through the chosen points of Ω. Its evaluation on D vanishes off
/// Ω and at every point of Ω on Z.
pub fn differential_witness(
    geo: &Geometry,
    sf: &SmallField,
    dom: &EvaluationDomain,
    aux: AuxiliaryCurves,
    omega: &Orbit,
    z_points: &[usize],
) -> Result<DifferentialWitness> {
    let f = geo.tower();
    let q = geo.q();
    if !dom.orbits.contains(omega) {
        return Err(Error::BadAuxiliaryCurve("Ω is not an orbit of D".into()));
    }
    if z_points.len() != z_point_count(q) || !z_points.iter().all(|&i| omega.contains(i)) {
        return Err(Error::BadParameter(format!(
            "need {} distinct points of Ω",
            z_point_count(q)
        )));
    }
    let mut cover_curves = Vec::new();
    for o in dom.orbits.iter().filter(|o| *o != omega) {
        let c = geo
            .curves_through_orbit(o)?
            .into_iter()
            .find(|&c| c != dom.tau)
            .ok_or(Error::InsufficientCurves { found: 0, needed: 1 })?;
        cover_curves.push(c);
    }
    let z = interpolate_z(geo, sf, z_points)?;
    let ft = &geo.curve(aux.t).form;
    let num = cover_curves
        .iter()
        .fold(ft.pow(f, 2), |acc, &c| acc.mul(f, &geo.curve(c).form))
        .mul(f, &z);
    let qq = q as u32;
    let den = triangle_form()
        .pow(f, qq)
        .mul(f, &HomogeneousForm::monomial([0, 0, qq * qq - 1], FElem::ONE));
    Ok(DifferentialWitness {
        function: RationalFunction::new(num, den),
        omega: omega.clone(),
        z_points: z_points.to_vec(),
        cover_curves,
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(q: u64) -> (Geometry, SmallField, EvaluationDomain, AuxiliaryCurves) {
        let geo = Geometry::new(q).unwrap();
        let sf = SmallField::for_tower(geo.tower()).unwrap();
        let dom = EvaluationDomain::new(&geo, 0);
        let aux = default_auxiliary(&geo, &dom).unwrap();
        (geo, sf, dom, aux)
    }

    fn zeros(geo: &Geometry, dom: &EvaluationDomain, r: &RationalFunction) -> usize {
        r.evaluate_on(geo, dom).unwrap().iter().filter(|v| v.is_zero()).count()
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(rr_dimension(7, 3).unwrap(), 5);
        assert_eq!(rr_dimension(26, 6).unwrap(), 21);
        assert_eq!(rr_dimension(5, 3).unwrap(), 3);
        assert!(matches!(rr_dimension(4, 3), Err(Error::BelowThreshold { .. })));
    }

    #[test]
    fn basis_sizes_and_rank() {
        for q in [3, 4] {
            let (geo, _, dom, aux) = setup(q);
            let b = basis_l_g(&geo, &dom, aux).unwrap();
            assert_eq!(b.functions.len() as u64, q * (q - 1) / 2 + 2);
            assert_eq!(lambda_part(&b, q).len() as u64, q * (q - 1) / 2);
            let rows: Vec<_> = b.functions.iter().map(|r| r.evaluate_on(&geo, &dom).unwrap()).collect();
            assert_eq!(value_rank(geo.tower(), &rows), b.functions.len());
        }
    }

    #[test]
    fn basis_values_lie_in_one_coset() {
        let (geo, sf, dom, aux) = setup(3);
        let f = geo.tower();
        for r in basis_l_g(&geo, &dom, aux).unwrap().functions {
            let vals = r.evaluate_on(&geo, &dom).unwrap();
            let c = *vals.iter().find(|v| !v.is_zero()).unwrap();
            assert!(vals.iter().all(|&v| sf.from_tower(f, f.div(v, c)).is_some()));
        }
    }

    #[test]
    fn bad_auxiliary_curves() {
        let (geo, _, dom, aux) = setup(3);
        let bad = AuxiliaryCurves { t: aux.t, u: aux.t };
        assert!(matches!(basis_l_g(&geo, &dom, bad), Err(Error::BadAuxiliaryCurve(_))));
        let bad = AuxiliaryCurves { t: aux.u, u: aux.t };
        assert!(matches!(basis_l_g(&geo, &dom, bad), Err(Error::BadAuxiliaryCurve(_))));
    }

    #[test]
    fn product_spanning_rank_small() {
        let (geo, _, dom, aux) = setup(3);
        let b = basis_l_g(&geo, &dom, aux).unwrap();
        let s = spanning_l_lambda_g(&geo, &dom, &b, 2).unwrap();
        assert_eq!(s.functions.len(), 15);
        assert!(matches!(
            spanning_l_lambda_g(&geo, &dom, &b, 3),
            Err(Error::LambdaOutOfRange { .. })
        ));
    }

    #[test]
    fn witness_zero_counts_small() {
        let (geo, sf, dom, aux) = setup(3);
        let stats = geo.chord_disjoint_statistics(geo.curve(0), &dom.g);
        let w = chord_witness_polynomial(&geo, &dom, aux, stats.witness).unwrap();
        assert_eq!(zeros(&geo, &dom, &w), 4);
        let curves = default_lambda_curves(&geo, &dom, 1).unwrap();
        let w = lambda_product_witness(&geo, &dom, aux, 1, &curves).unwrap();
        assert_eq!(zeros(&geo, &dom, &w), 7);
        let omega = dom.orbits[0].clone();
        let z = default_z_points(3, &omega);
        let d = differential_witness(&geo, &sf, &dom, aux, &omega, &z).unwrap();
        assert_eq!(dom.points.len() - zeros(&geo, &dom, &d.function), 5);
    }
}
