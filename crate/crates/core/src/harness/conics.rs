//! Conics through five points of an orbit, and how many orbit points they hold.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::forms::{monomials, HomogeneousForm};
use crate::gftower::{FElem, FieldTower};
use crate::linalg;
use crate::projgeom::ProjPoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conic {
    pub form: HomogeneousForm,
    /// Positions (in the orbit list) of the points on the conic.
    pub incident: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConicCensus {
    pub orbit: Vec<ProjPoint>,
    /// Distinct conics through five or more orbit points.
    pub distinct: usize,
    /// Conics with at least `threshold` orbit points, in discovery order.
    pub rich: Vec<Conic>,
    pub threshold: usize,
    pub max_incidence: usize,
    /// Every rich conic has no singular point among the rational points.
    pub rich_irreducible: bool,
}

fn conic_values(f: &FieldTower, p: &ProjPoint) -> Vec<FElem> {
    let x = p.coords();
    monomials(2)
        .iter()
        .map(|e| {
            f.mul(
                f.mul(f.pow(x[0], e[0] as u64), f.pow(x[1], e[1] as u64)),
                f.pow(x[2], e[2] as u64),
            )
        })
        .collect()
}

/// The conics through five given points, as a kernel basis.
pub fn conics_through(f: &FieldTower, points: &[ProjPoint]) -> Vec<HomogeneousForm> {
    let rows: Vec<Vec<FElem>> = points.iter().map(|p| conic_values(f, p)).collect();
    linalg::kernel(f, &rows, 6)
        .into_iter()
        .map(|v| HomogeneousForm::from_vector(2, &v))
        .collect()
}

/// Scale so the first coefficient in monomial order is 1.
fn normalized(f: &FieldTower, c: &HomogeneousForm) -> Vec<FElem> {
    let v = c.to_vector();
    let lead = *v.iter().find(|x| !x.is_zero()).expect("nonzero conic");
    let li = f.inv(lead);
    v.iter().map(|&x| f.mul(x, li)).collect()
}

/// Is some rational point a singular point of the conic?
pub fn has_singular_point(f: &FieldTower, c: &HomogeneousForm, rational: &[ProjPoint]) -> bool {
    // partial derivatives of sum a_e X^e, computed termwise
    let partials: Vec<HomogeneousForm> = (0..3)
        .map(|i| {
            let mut d = HomogeneousForm::zero(1);
            for (e, &coef) in c.terms() {
                if e[i] == 0 {
                    continue;
                }
                let mut e2 = *e;
                e2[i] -= 1;
                let k = f.from_int(e[i] as i64);
                d = d.add(f, &HomogeneousForm::monomial(e2, f.mul(coef, k)));
            }
            d
        })
        .collect();
    rational.iter().any(|p| {
        let x = p.coords();
        c.eval(f, x).is_zero() && partials.iter().all(|d| d.eval(f, x).is_zero())
    })
}

/// Census of the conics through 5-subsets of the orbit. `rational` is the
/// set of points over the base field used for the singularity test.
pub fn conic_census(f: &FieldTower, orbit: &[ProjPoint], rational: &[ProjPoint], threshold: usize) -> ConicCensus {
    let n = orbit.len();
    let mut seen: BTreeMap<Vec<FElem>, Conic> = BTreeMap::new();
    let mut order: Vec<Vec<FElem>> = Vec::new();
    let mut idx = [0usize, 1, 2, 3, 4];
    if n >= 5 {
        loop {
            let pts: Vec<ProjPoint> = idx.iter().map(|&i| orbit[i]).collect();
            let sols = conics_through(f, &pts);
            if sols.len() == 1 {
                let key = normalized(f, &sols[0]);
                if !seen.contains_key(&key) {
                    let form = HomogeneousForm::from_vector(2, &key);
                    let incident = (0..n)
                        .filter(|&i| form.eval(f, orbit[i].coords()).is_zero())
                        .collect();
                    seen.insert(key.clone(), Conic { form, incident });
                    order.push(key);
                }
            }
            let Some(pos) = (0..5).rev().find(|&p| idx[p] < n - 5 + p) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..5 {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    let max_incidence = seen.values().map(|c| c.incident.len()).max().unwrap_or(0);
    let rich: Vec<Conic> = order
        .iter()
        .map(|k| seen[k].clone())
        .filter(|c| c.incident.len() >= threshold)
        .collect();
    let rich_irreducible = rich.iter().all(|c| !has_singular_point(f, &c.form, rational));
    ConicCensus {
        orbit: orbit.to_vec(),
        distinct: seen.len(),
        rich,
        threshold,
        max_incidence,
        rich_irreducible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::Geometry;

    #[test]
    fn five_arc_points_determine_one_conic() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let k = g.singer_arc();
        let pts: Vec<ProjPoint> = k.indices[..5].iter().map(|&i| g.plane().point(i)).collect();
        let sols = conics_through(f, &pts);
        assert_eq!(sols.len(), 1);
        for p in &pts {
            assert!(sols[0].eval(f, p.coords()).is_zero());
        }
    }

    #[test]
    fn line_pairs_are_singular() {
        let g = Geometry::new(3).unwrap();
        let f = g.tower();
        let l1 = HomogeneousForm::linear(g.plane().line(0).coeffs());
        let l2 = HomogeneousForm::linear(g.plane().line(5).coeffs());
        let pair = l1.mul(f, &l2);
        assert!(has_singular_point(f, &pair, g.plane().points()));
        let k = g.singer_arc();
        let pts: Vec<ProjPoint> = k.indices[..5].iter().map(|&i| g.plane().point(i)).collect();
        let c = &conics_through(f, &pts)[0];
        assert!(!has_singular_point(f, c, g.plane().points()));
    }
}
