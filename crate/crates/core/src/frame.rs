//! Change of frame from the Π-model in PG(2,q^6) to canonical coordinates
//! of PG(2,q^2), in which Π-points have F_(q^2) coordinates and `H_1`
//! becomes the Fermat curve `X1^(q+1) + X2^(q+1) + X0^(q+1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{HomogeneousForm, Matrix3};
use crate::gftower::{FElem, FieldTower};
use crate::hermitian::SingerGroup;
use crate::projgeom::{det3, mat_mul, mat_vec, transpose, Collineation, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameChange {
    /// Root of `X^(q+1) + X + 1` in F_(q^3) but not in F_q.
    pub a: FElem,
    /// Old coordinates are `M` times new coordinates.
    pub m: Matrix3,
    /// `M^T M = s I`.
    pub s: FElem,
}

/// All roots of `X^(q+1) + X + 1` lying in F_(q^3) minus F_q, in encoding order.
pub fn frame_elements(f: &FieldTower) -> Vec<FElem> {
    let q = f.q() as usize;
    let mut poly = vec![FElem::ZERO; q + 2];
    poly[0] = FElem::ONE;
    poly[1] = FElem::ONE;
    poly[q + 1] = FElem::ONE;
    f.univariate_roots(&poly)
        .expect("nonzero polynomial")
        .into_iter()
        .filter(|&x| f.in_subfield(x, 3).unwrap() && !f.in_subfield(x, 1).unwrap())
        .collect()
}

pub fn frame_for(f: &FieldTower, a: FElem) -> Result<FrameChange> {
    let q = f.q();
    let b = f.pow(a, q * q + 1);
    let o = FElem::ONE;
    let m = [[a, o, b], [b, a, o], [o, b, a]];
    let s = f.add(f.add(o, f.mul(a, a)), f.mul(b, b));
    if det3(f, &m).is_zero() {
        return Err(Error::NoFrameElement);
    }
    let mtm = mat_mul(f, &transpose(&m), &m);
    for (i, row) in mtm.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let want = if i == j { s } else { FElem::ZERO };
            if x != want {
                return Err(Error::NoFrameElement);
            }
        }
    }
    Ok(FrameChange { a, m, s })
}

/// The frame built from the smallest valid root.
pub fn find_frame(f: &FieldTower) -> Result<FrameChange> {
    let a = *frame_elements(f).first().ok_or(Error::NoFrameElement)?;
    frame_for(f, a)
}

/// Scale so the first nonzero entry is 1 and check that every entry is in F_(q^2).
fn normalize_into_subfield(f: &FieldTower, entries: &mut [FElem], what: &str) -> Result<()> {
    let Some(&c) = entries.iter().find(|x| !x.is_zero()) else {
        return Err(Error::NormalizationFailure(format!("{what} is zero")));
    };
    let ci = f.inv(c);
    for x in entries.iter_mut() {
        *x = f.mul(*x, ci);
        if !f.in_subfield(*x, 2)? {
            return Err(Error::NormalizationFailure(format!(
                "{what} has no scalar multiple over F_(q^2)"
            )));
        }
    }
    Ok(())
}

impl FrameChange {
    /// `U(M X)` with no normalization.
    pub fn substitute_form(&self, f: &FieldTower, form: &HomogeneousForm) -> HomogeneousForm {
        form.substitute(f, &self.m)
    }

    /// `U(M X)`, scaled so that its largest monomial has coefficient 1 and
    /// all coefficients lie in F_(q^2).
    pub fn transform_form(&self, f: &FieldTower, form: &HomogeneousForm) -> Result<HomogeneousForm> {
        let sub = self.substitute_form(f, form);
        let Some(c) = sub.leading_coeff() else {
            return Err(Error::NormalizationFailure("form is zero".into()));
        };
        let out = sub.scale(f, f.inv(c));
        for (_, &x) in out.terms() {
            if !f.in_subfield(x, 2)? {
                return Err(Error::NormalizationFailure(
                    "form has no scalar multiple over F_(q^2)".into(),
                ));
            }
        }
        Ok(out)
    }

    /// Canonical coordinates of a point, proportional to `M^T P`.
    pub fn to_canonical(&self, f: &FieldTower, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(f, mat_vec(f, &transpose(&self.m), &p.coords())).expect("M is invertible")
    }

    /// Inverse of [`FrameChange::to_canonical`].
    pub fn from_canonical(&self, f: &FieldTower, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(f, mat_vec(f, &self.m, &p.coords())).expect("M is invertible")
    }

    /// `M^T B M`, scaled into F_(q^2).
    pub fn conjugate_matrix(&self, f: &FieldTower, b: &Matrix3) -> Result<Matrix3> {
        let c = mat_mul(f, &mat_mul(f, &transpose(&self.m), b), &self.m);
        let mut flat: Vec<FElem> = c.iter().flatten().copied().collect();
        normalize_into_subfield(f, &mut flat, "conjugated matrix")?;
        Ok([0, 1, 2].map(|i| [flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]]))
    }

    /// The Singer generator in canonical coordinates.
    pub fn conjugated_singer(&self, f: &FieldTower, sg: &SingerGroup) -> Result<Collineation> {
        Ok(Collineation::linear(self.conjugate_matrix(f, &sg.b.matrix)?))
    }
}

/// `X1^(q+1) + X2^(q+1) + X0^(q+1)`.
pub fn fermat_form(q: u32) -> HomogeneousForm {
    HomogeneousForm::from_terms(
        q + 1,
        [
            ([q + 1, 0, 0], FElem::ONE),
            ([0, q + 1, 0], FElem::ONE),
            ([0, 0, q + 1], FElem::ONE),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::Geometry;

    #[test]
    fn frame_exists_and_is_orthogonal() {
        for q in [3, 4] {
            let g = Geometry::new(q).unwrap();
            let f = g.tower();
            let fc = find_frame(f).unwrap();
            assert!(f.in_subfield(fc.a, 3).unwrap());
            assert!(!f.in_subfield(fc.a, 1).unwrap());
            assert!(!det3(f, &fc.m).is_zero());
        }
    }

    #[test]
    fn frame_element_matches_subfield_scan() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let scan: Vec<FElem> = f
            .elements()
            .filter(|&x| f.in_subfield(x, 3).unwrap() && !f.in_subfield(x, 1).unwrap())
            .filter(|&x| f.add(f.add(f.pow(x, 4), x), FElem::ONE).is_zero())
            .collect();
        assert!(!scan.is_empty());
        assert_eq!(scan, frame_elements(f));
    }

    #[test]
    fn unit_curve_becomes_fermat() {
        for q in [3u32, 4] {
            let g = Geometry::new(q as u64).unwrap();
            let f = g.tower();
            let fc = find_frame(f).unwrap();
            let t = fc.transform_form(f, &g.curve(0).form).unwrap();
            assert_eq!(t, fermat_form(q));
        }
    }

    #[test]
    fn every_curve_becomes_rational() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let fc = find_frame(f).unwrap();
        for c in g.curves() {
            let t = fc.transform_form(f, &c.form).unwrap();
            assert_eq!(t.degree(), 4);
        }
    }

    #[test]
    fn linear_forms_stay_linear() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let fc = find_frame(f).unwrap();
        let l = HomogeneousForm::linear([f.from_log(3), FElem::ZERO, f.from_log(500)]);
        assert_eq!(fc.substitute_form(f, &l).degree(), 1);
    }

    #[test]
    fn subplane_points_become_rational() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let fc = find_frame(f).unwrap();
        for p in g.plane().points() {
            let c = fc.to_canonical(f, p);
            assert!(c.coords().iter().all(|&x| f.in_subfield(x, 2).unwrap()));
            assert_eq!(fc.from_canonical(f, &c), *p);
        }
    }

    #[test]
    fn incidence_is_preserved() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let fc = find_frame(f).unwrap();
        let c = g.curve(5);
        let t = fc.transform_form(f, &c.form).unwrap();
        for p in g.plane().points() {
            let on = c.form.eval(f, p.coords()).is_zero();
            assert_eq!(on, t.eval(f, fc.to_canonical(f, p).coords()).is_zero());
        }
    }

    #[test]
    fn conjugated_singer_properties() {
        for q in [3u64, 4] {
            let g = Geometry::new(q).unwrap();
            let f = g.tower();
            let fc = find_frame(f).unwrap();
            let sg = g.singer();
            let c = fc.conjugated_singer(f, sg).unwrap();
            let mat = c.matrix;
            assert_eq!(mat, transpose(&mat));
            assert!(c.power(f, sg.order as u64).is_scalar(f));
            assert!(!c.power(f, 1).is_scalar(f));
            // top-left entry up to the normalizing scalar
            let (a, b) = (fc.a, sg.beta);
            let e = |x: u64| f.pow(a, x);
            let raw = f.add(
                f.add(f.mul(b, e(2)), f.mul(f.pow(b, q * q + 1), e(2 * (q * q + 1)))),
                FElem::ONE,
            );
            let full = mat_mul(f, &mat_mul(f, &transpose(&fc.m), &sg.b.matrix), &fc.m);
            assert_eq!(full[0][0], raw);
            let fermat = fermat_form(q as u32);
            for p in g.unital_points(g.curve(0)) {
                let cp = fc.to_canonical(f, &p);
                let img = c.apply(f, &cp);
                assert!(fermat.eval(f, img.coords()).is_zero());
            }
        }
    }
}
