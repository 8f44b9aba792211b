//! The family of Hermitian curves
//! `H_t : t X1 X2^q + t^(q^2+1) X2 X0^q + X0 X1^q = 0`, `t^(q^2+q+1) = 1`,
//! their points in Π, the Singer group Γ acting on them, and the
//! incidence statistics used by the code constructions.

pub mod intersect;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::HomogeneousForm;
use crate::gftower::{FElem, FieldTower, PrimePower};
use crate::projgeom::{Collineation, ProjLine, ProjPoint, Subplane};

pub use intersect::Divisor;

/// Γ = <B>, `B = diag(β, β^q, 1) = A^(q^2+q+1)`.
#[derive(Debug, Clone)]
pub struct SingerGroup {
    pub alpha: FElem,
    pub beta: FElem,
    /// Singer generator of Π, `diag(α, α^(q^2+1), 1)`.
    pub a: Collineation,
    pub b: Collineation,
    /// B moves Π-point `i` to `i + step`.
    pub step: usize,
    /// `q^2 - q + 1`
    pub order: usize,
}

pub fn singer_generator(f: &FieldTower, pi: &Subplane) -> SingerGroup {
    let q = f.q();
    let alpha = pi.generator();
    let step = (q * q + q + 1) as usize;
    let beta = f.pow(alpha, step as u64);
    SingerGroup {
        alpha,
        beta,
        a: Collineation::diagonal([alpha, f.pow(alpha, q * q + 1), FElem::ONE]),
        b: Collineation::diagonal([beta, f.pow(beta, q), FElem::ONE]),
        step,
        order: (q * q - q + 1) as usize,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HermitianCurve {
    /// `t = ζ^index` with ζ the canonical primitive `(q^2+q+1)`-th root.
    pub index: usize,
    pub t: FElem,
    pub form: HomogeneousForm,
}

/// The defining form of `H_t`.
pub fn hermitian_form(f: &FieldTower, t: FElem) -> HomogeneousForm {
    let q = f.q() as u32;
    HomogeneousForm::from_terms(
        q + 1,
        [
            ([1, q, 0], t),
            ([0, 1, q], f.pow(t, (q * q + 1) as u64)),
            ([q, 0, 1], FElem::ONE),
        ],
    )
}

/// A Γ-orbit of Π, as Π-indices in B-power order from its smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Orbit {
    pub indices: Vec<usize>,
}

impl Orbit {
    pub fn representative(&self) -> usize {
        self.indices[0]
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveIntersection {
    /// Common Π-points, forming one Γ-orbit.
    pub orbit: Orbit,
    /// Multiplicities at A1, A2, A0.
    pub triangle: [i64; 3],
    /// Largest multiplicity at a common Π-point.
    pub max_pi_multiplicity: i64,
    /// Full intersection divisor over F_(q^6).
    pub divisor: Divisor,
    pub total: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChordStats {
    pub max_count: usize,
    /// Smallest Π-index attaining the maximum.
    pub witness: usize,
    /// The literal real bound (q-1)^2/2 - 1.
    pub bound: f64,
    pub bound_ceil: usize,
}

/// Everything needed to work in the Π-model for one q.
#[derive(Debug, Clone)]
pub struct Geometry {
    tower: FieldTower,
    plane: Subplane,
    singer: SingerGroup,
    curves: Vec<HermitianCurve>,
}

impl Geometry {
    pub fn new(q: u64) -> Result<Self> {
        Ok(Self::from_tower(FieldTower::build(PrimePower::from_q(q)?)?))
    }

    pub fn from_tower(tower: FieldTower) -> Self {
        let plane = Subplane::build(&tower);
        let singer = singer_generator(&tower, &plane);
        let q = tower.q();
        let m = q * q + q + 1;
        let zeta = tower.root_of_unity(m).expect("q^2+q+1 divides q^6-1");
        let curves = (0..m as usize)
            .map(|j| {
                let t = tower.pow(zeta, j as u64);
                HermitianCurve {
                    index: j,
                    t,
                    form: hermitian_form(&tower, t),
                }
            })
            .collect();
        Geometry {
            tower,
            plane,
            singer,
            curves,
        }
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn plane(&self) -> &Subplane {
        &self.plane
    }

    pub fn singer(&self) -> &SingerGroup {
        &self.singer
    }

    pub fn curves(&self) -> &[HermitianCurve] {
        &self.curves
    }

    pub fn curve(&self, j: usize) -> &HermitianCurve {
        &self.curves[j]
    }

    /// Look up (and validate) the curve with parameter `t`.
    pub fn curve_for(&self, t: FElem) -> Result<&HermitianCurve> {
        let m = self.curves.len() as u64;
        if t.is_zero() || self.tower.pow(t, m) != FElem::ONE {
            return Err(Error::BadParameter(format!(
                "t = {:?} is not a ({m})-th root of unity",
                t
            )));
        }
        Ok(self.curves.iter().find(|c| c.t == t).expect("all roots are listed"))
    }

    /// Π-index of a point of the form `(γ : γ^(q^2+1) : 1)`.
    fn pi_index_of_gamma(&self, gamma: FElem) -> Option<usize> {
        let log = self.tower.log(gamma)? as u64;
        let stride = self.tower.group_order() as u64 / self.plane.size() as u64;
        log.is_multiple_of(stride).then_some((log / stride) as usize)
    }

    /// Π-points of `H_t` via the two-stage root computation: the roots ε of
    /// `t X^(q+1) + t^(q^2+1) X + 1`, then the roots γ of
    /// `X^(q^2-q+1) = ε`. Sorted by Π-index.
    pub fn unital_indices(&self, curve: &HermitianCurve) -> Vec<usize> {
        let f = &self.tower;
        let q = self.q();
        let mut outer = vec![FElem::ZERO; q as usize + 2];
        outer[0] = FElem::ONE;
        outer[1] = f.pow(curve.t, q * q + 1);
        outer[q as usize + 1] = curve.t;
        let eps = f.univariate_roots(&outer).expect("nonzero polynomial");
        let m = (q * q - q + 1) as usize;
        let mut out = Vec::with_capacity(q.pow(3) as usize + 1);
        for e in eps {
            let mut inner = vec![FElem::ZERO; m + 1];
            inner[0] = f.neg(e);
            inner[m] = FElem::ONE;
            for gamma in f.univariate_roots(&inner).expect("nonzero polynomial") {
                if let Some(i) = self.pi_index_of_gamma(gamma) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn unital_points(&self, curve: &HermitianCurve) -> Vec<ProjPoint> {
        self.unital_indices(curve)
            .into_iter()
            .map(|i| self.plane.point(i))
            .collect()
    }

    /// Π-points of `H_t` by evaluating the form at every point of Π.
    pub fn unital_brute_force(&self, curve: &HermitianCurve) -> Vec<usize> {
        (0..self.plane.size())
            .filter(|&i| curve.form.eval(&self.tower, self.plane.point(i).coords()).is_zero())
            .collect()
    }

    /// The Γ-orbit of Π-point `i`.
    pub fn orbit_of(&self, i: usize) -> Orbit {
        let step = self.singer.step;
        let rep = i % step;
        Orbit {
            indices: (0..self.singer.order).map(|k| rep + k * step).collect(),
        }
    }

    /// All `q^2+q+1` Γ-orbits of Π.
    pub fn all_orbits(&self) -> Vec<Orbit> {
        (0..self.singer.step).map(|r| self.orbit_of(r)).collect()
    }

    /// The `q+1` Γ-orbits covering the Π-points of the curve, ordered by
    /// smallest member.
    pub fn orbit_partition(&self, curve: &HermitianCurve) -> Vec<Orbit> {
        let step = self.singer.step;
        let mut reps: Vec<usize> = self.unital_indices(curve).iter().map(|&i| i % step).collect();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter().map(|r| self.orbit_of(r)).collect()
    }

    /// Indices of all curves of the family containing the orbit.
    pub fn curves_through_orbit(&self, orbit: &Orbit) -> Result<Vec<usize>> {
        let f = &self.tower;
        let found: Vec<usize> = self
            .curves
            .iter()
            .filter(|c| {
                orbit
                    .indices
                    .iter()
                    .all(|&i| c.form.eval(f, self.plane.point(i).coords()).is_zero())
            })
            .map(|c| c.index)
            .collect();
        let expected = self.q() as usize + 1;
        if found.len() != expected {
            return Err(Error::OrbitNotOnFamily {
                found: found.len(),
                expected,
            });
        }
        Ok(found)
    }

    pub fn line_intersection_divisor(&self, curve: &HermitianCurve, line: &ProjLine) -> Result<Divisor> {
        intersect::line_divisor(&self.tower, &curve.form, line)
    }

    /// `H_t · H_u`: one Γ-orbit of Π plus the triangle vertices.
    pub fn curve_intersection(&self, t: usize, u: usize) -> Result<CurveIntersection> {
        if t == u {
            return Err(Error::SameCurve);
        }
        let f = &self.tower;
        let (ct, cu) = (&self.curves[t], &self.curves[u]);
        let common: Vec<usize> = self
            .unital_indices(ct)
            .into_iter()
            .filter(|&i| cu.form.eval(f, self.plane.point(i).coords()).is_zero())
            .collect();
        let divisor = intersect::curve_divisor(f, &ct.form, &cu.form)?;
        let reps: Vec<usize> = {
            let mut r: Vec<usize> = common.iter().map(|&i| i % self.singer.step).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        if reps.len() != 1 {
            return Err(Error::Intersection(format!(
                "common Π-points form {} orbits",
                reps.len()
            )));
        }
        let orbit = self.orbit_of(reps[0]);
        if orbit.len() != common.len() {
            return Err(Error::Intersection("common Π-points are not a full orbit".into()));
        }
        let max_pi_multiplicity = orbit
            .indices
            .iter()
            .map(|&i| divisor.multiplicity(&self.plane.point(i)))
            .max()
            .unwrap_or(0);
        let triangle = [ProjPoint::A1, ProjPoint::A2, ProjPoint::A0].map(|p| divisor.multiplicity(&p));
        Ok(CurveIntersection {
            orbit,
            triangle,
            max_pi_multiplicity,
            total: divisor.degree(),
            divisor,
        })
    }

    /// Membership mask of a set of Π-indices.
    fn mask(&self, indices: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.plane.size()];
        for &i in indices {
            m[i] = true;
        }
        m
    }

    /// Π-lines that meet the curve's Π-points in q+1 points and avoid `k`,
    /// grouped by the points outside the curve through which they pass.
    pub fn disjoint_chords_through(&self, unital: &[bool], k: &[bool], u: usize) -> Vec<usize> {
        let q = self.q() as usize;
        self.plane
            .lines_through(u)
            .into_iter()
            .filter(|&j| {
                let pts = self.plane.points_on_line(j);
                pts.iter().filter(|&&i| unital[i]).count() == q + 1 && !pts.iter().any(|&i| k[i])
            })
            .collect()
    }

    /// Over all Π-points U off the curve, the largest number of chords of
    /// the curve through U that miss K.
    pub fn chord_disjoint_statistics(&self, curve: &HermitianCurve, k: &Orbit) -> ChordStats {
        let q = self.q() as usize;
        let n = self.plane.size();
        let unital = self.mask(&self.unital_indices(curve));
        let in_k = self.mask(&k.indices);
        let good_line: Vec<bool> = (0..n)
            .map(|j| {
                let pts = self.plane.points_on_line(j);
                pts.iter().filter(|&&i| unital[i]).count() == q + 1 && !pts.iter().any(|&i| in_k[i])
            })
            .collect();
        let (mut max_count, mut witness) = (0, usize::MAX);
        for u in (0..n).filter(|&u| !unital[u]) {
            let c = self.plane.lines_through(u).into_iter().filter(|&j| good_line[j]).count();
            if c > max_count || witness == usize::MAX {
                max_count = c;
                witness = u;
            }
        }
        let bound = 0.5 * ((q - 1) * (q - 1)) as f64 - 1.0;
        ChordStats {
            max_count,
            witness,
            bound,
            bound_ceil: bound.ceil().max(0.0) as usize,
        }
    }

    /// No three of the points collinear.
    pub fn is_arc(&self, points: &[usize]) -> bool {
        let mask = self.mask(points);
        for (a, &i) in points.iter().enumerate() {
            for &k in &points[a + 1..] {
                let j = self.plane.line_through(i, k);
                if self.plane.points_on_line(j).iter().filter(|&&x| mask[x]).count() != 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Every Π-point outside the set lies on a line joining two of its points.
    pub fn arc_is_complete(&self, points: &[usize]) -> bool {
        let mask = self.mask(points);
        let mut covered = mask.clone();
        for (a, &i) in points.iter().enumerate() {
            for &k in &points[a + 1..] {
                for x in self.plane.points_on_line(self.plane.line_through(i, k)) {
                    covered[x] = true;
                }
            }
        }
        covered.iter().all(|&c| c)
    }

    /// The Singer arc through `(α : α^(q^2+1) : 1)`, i.e. the orbit of Π-point 1.
    pub fn singer_arc(&self) -> Orbit {
        self.orbit_of(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::{frobenius_collineation, orbit};

    #[test]
    fn singer_generator_properties() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let s = g.singer();
        assert!(s.b.power(f, s.order as u64).is_scalar(f));
        assert!(s.a.power(f, s.step as u64).projectively_equal(f, &s.b));
        for i in 0..g.plane().size() {
            let p = g.plane().point(i);
            let img = s.b.apply(f, &p);
            assert_ne!(img, p);
            assert_eq!(g.plane().index_of(&img), Some((i + s.step) % g.plane().size()));
            assert_eq!(orbit(f, &s.b, &p).len(), 7);
        }
    }

    #[test]
    fn unital_counts_small() {
        let g = Geometry::new(3).unwrap();
        for c in g.curves() {
            let pts = g.unital_indices(c);
            assert_eq!(pts.len(), 28);
            assert_eq!(pts, g.unital_brute_force(c));
        }
    }

    #[test]
    fn bad_parameter_rejected() {
        let g = Geometry::new(3).unwrap();
        assert!(matches!(g.curve_for(g.tower().primitive()), Err(Error::BadParameter(_))));
        assert_eq!(g.curve_for(FElem::ONE).unwrap().index, 0);
    }

    #[test]
    fn tangent_lines_of_triangle() {
        let g = Geometry::new(3).unwrap();
        let c = g.curve(2);
        let d = g.line_intersection_divisor(c, &ProjLine::X0_ZERO).unwrap();
        assert_eq!(d.multiplicity(&ProjPoint::A1), 3);
        assert_eq!(d.multiplicity(&ProjPoint::A2), 1);
        assert_eq!(d.degree(), 4);
    }

    #[test]
    fn frobenius_preserves_curve_points() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let phi = frobenius_collineation();
        let c = g.curve(4);
        let pts = g.unital_points(c);
        for p in &pts {
            assert!(pts.contains(&phi.apply(f, p)));
        }
    }

    #[test]
    fn same_curve_rejected() {
        let g = Geometry::new(3).unwrap();
        assert!(matches!(g.curve_intersection(1, 1), Err(Error::SameCurve)));
    }

    #[test]
    fn intersection_of_two_curves_q3() {
        let g = Geometry::new(3).unwrap();
        let x = g.curve_intersection(0, 1).unwrap();
        assert_eq!(x.orbit.len(), 7);
        assert_eq!(x.triangle, [3, 3, 3]);
        assert_eq!(x.max_pi_multiplicity, 1);
        assert_eq!(x.total, 16);
    }

    #[test]
    fn sub_arc_is_incomplete() {
        let g = Geometry::new(3).unwrap();
        let k = g.singer_arc();
        assert!(g.is_arc(&k.indices));
        assert!(g.arc_is_complete(&k.indices));
        assert!(!g.arc_is_complete(&k.indices[..3]));
    }
}
