//! Reproduction of the published q = 4 data in canonical coordinates: the
//! Singer generator matrix, the 13-point orbit of `(0 : 1 : r^3)` on the
//! Fermat curve `X1^5 + X2^5 + X0^5`, and the seven-point conic.
//!
//! The published data depend on conventions the text does not fix (the
//! frame element a, the Singer eigenvalue β, the primitive element r of
//! F_16). All combinations are searched.

use serde::Serialize;

use super::conics::{conic_census, ConicCensus};
use crate::error::{Error, Result};
use crate::forms::{HomogeneousForm, Matrix3};
use crate::frame::{fermat_form, find_frame, frame_elements, frame_for};
use crate::gftower::{FElem, FieldTower};
use crate::hermitian::Geometry;
use crate::projgeom::{orbit, Collineation, ProjPoint};

/// Exponents of r in the published generator matrix.
const MATRIX_EXPONENTS: [[u64; 3]; 3] = [[6, 2, 0], [2, 14, 8], [0, 8, 3]];

/// Published orbit points as exponents of r, `None` for a zero coordinate.
const ORBIT_EXPONENTS: [[Option<u64>; 3]; 13] = [
    [None, Some(0), Some(3)],
    [Some(0), Some(4), Some(8)],
    [Some(0), Some(3), None],
    [Some(0), None, Some(3)],
    [Some(0), Some(7), Some(11)],
    [Some(0), Some(4), Some(11)],
    [Some(0), Some(1), Some(14)],
    [Some(0), Some(13), Some(14)],
    [Some(0), None, Some(12)],
    [Some(0), Some(12), None],
    [Some(0), Some(1), Some(2)],
    [None, Some(0), Some(12)],
    [Some(0), Some(5), Some(10)],
];

/// Positions of the points on the published conic.
pub const CONIC_POINTS: [usize; 7] = [0, 1, 3, 4, 9, 10, 12];

/// `X1^2 + r^3 X1X2 + X1X0 + r^11 X2X0 + r^8 X0^2`.
pub fn published_conic(f: &FieldTower, r: FElem) -> HomogeneousForm {
    HomogeneousForm::from_terms(
        2,
        [
            ([2, 0, 0], FElem::ONE),
            ([1, 1, 0], f.pow(r, 3)),
            ([1, 0, 1], FElem::ONE),
            ([0, 1, 1], f.pow(r, 11)),
            ([0, 0, 2], f.pow(r, 8)),
        ],
    )
}

pub fn published_matrix(f: &FieldTower, r: FElem) -> Matrix3 {
    MATRIX_EXPONENTS.map(|row| row.map(|e| f.pow(r, e)))
}

pub fn published_orbit(f: &FieldTower, r: FElem) -> Vec<ProjPoint> {
    ORBIT_EXPONENTS
        .iter()
        .map(|p| {
            let c = p.map(|e| e.map_or(FElem::ZERO, |e| f.pow(r, e)));
            ProjPoint::new(f, c).expect("published points are nonzero")
        })
        .collect()
}

fn normalized(f: &FieldTower, m: &Matrix3) -> Matrix3 {
    let c = *m.iter().flatten().find(|x| !x.is_zero()).expect("nonzero matrix");
    let ci = f.inv(c);
    m.map(|row| row.map(|x| f.mul(x, ci)))
}

/// Primitive elements of F_16 inside the tower, as logarithms, Conway root first.
fn primitive_subfield_logs(f: &FieldTower) -> Vec<u64> {
    let m = f.q() * f.q() - 1;
    let stride = f.group_order() as u64 / m;
    (1..m).filter(|&i| gcd(i, m) == 1).map(|i| i * stride).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiteralMatch {
    pub a: FElem,
    /// β as a power of the canonical primitive 13th root.
    pub beta_power: u64,
    /// r as a power of the Conway primitive element of F_16.
    pub r_power: u64,
    /// The orbit of `P0` under the generator lists the points in published order.
    pub same_order: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchLevel {
    Literal(LiteralMatch),
    Structural,
}

#[derive(Debug, Clone, Serialize)]
pub struct PublishedReport {
    pub level: MatchLevel,
    pub combinations_searched: usize,
    /// Combinations whose generator matches the published matrix up to scalar.
    pub matrix_matches: usize,
    /// Published points all on the Fermat curve (Conway r).
    pub published_points_on_curve: bool,
    /// Points of the published orbit on the published conic (Conway r).
    pub published_conic_points: Vec<usize>,
    /// Orbit of `P0` under the generator of the canonical frame.
    pub own_orbit_size: usize,
    pub own_orbit_on_curve: bool,
    pub census: ConicCensus,
    /// Orbits of the rich conics under the generator.
    pub rich_conic_classes: usize,
}

/// Number of orbits of the conics under the collineation group generated by `m`.
pub fn conic_classes(f: &FieldTower, conics: &[HomogeneousForm], m: &Matrix3) -> usize {
    let mut seen = vec![false; conics.len()];
    let mut classes = 0;
    for i in 0..conics.len() {
        if seen[i] {
            continue;
        }
        classes += 1;
        let mut c = conics[i].clone();
        while let Some(j) = conics.iter().position(|d| d.proportional(f, &c)) {
            if seen[j] {
                break;
            }
            seen[j] = true;
            c = c.substitute(f, m);
        }
    }
    classes
}

/// All points of PG(2, q^2) in normalized form.
pub fn rational_plane(f: &FieldTower) -> Vec<ProjPoint> {
    let sub: Vec<FElem> = f.elements().filter(|&x| f.in_subfield(x, 2).unwrap()).collect();
    let mut out = Vec::new();
    for &x in &sub {
        for &y in &sub {
            out.push(ProjPoint::new(f, [x, y, FElem::ONE]).unwrap());
        }
    }
    for &x in &sub {
        out.push(ProjPoint::new(f, [x, FElem::ONE, FElem::ZERO]).unwrap());
    }
    out.push(ProjPoint::A1);
    out
}

pub fn reproduce_published(geo: &Geometry) -> Result<PublishedReport> {
    let f = geo.tower();
    let q = geo.q();
    if q != 4 {
        return Err(Error::BadParameter(format!("published canonical data exist only for q = 4, got {q}")));
    }
    let order = geo.singer().order as u64;
    let zeta = f.root_of_unity(order)?;
    let r_logs = primitive_subfield_logs(f);
    let r_conway = f.from_log(r_logs[0]);
    let published_pts = published_orbit(f, r_conway);
    let fermat = fermat_form(q as u32);
    let published_points_on_curve = published_pts.iter().all(|p| fermat.eval(f, p.coords()).is_zero());
    let conic = published_conic(f, r_conway);
    let published_conic_points = (0..13)
        .filter(|&i| conic.eval(f, published_pts[i].coords()).is_zero())
        .collect();

    let mut searched = 0;
    let mut matrix_matches = 0;
    let mut literal: Option<LiteralMatch> = None;
    for a in frame_elements(f) {
        let fc = frame_for(f, a)?;
        for j in (1..order).filter(|&j| gcd(j, order) == 1) {
            let beta = f.pow(zeta, j);
            let b = [
                [beta, FElem::ZERO, FElem::ZERO],
                [FElem::ZERO, f.pow(beta, q), FElem::ZERO],
                [FElem::ZERO, FElem::ZERO, FElem::ONE],
            ];
            let c = fc.conjugate_matrix(f, &b)?;
            for (ri, &rl) in r_logs.iter().enumerate() {
                searched += 1;
                let r = f.from_log(rl);
                if normalized(f, &published_matrix(f, r)) != c {
                    continue;
                }
                matrix_matches += 1;
                let pts = published_orbit(f, r);
                let orb = orbit(f, &Collineation::linear(c), &pts[0]);
                let mut a_sorted = orb.clone();
                a_sorted.sort();
                let mut b_sorted = pts.clone();
                b_sorted.sort();
                if a_sorted == b_sorted && literal.is_none() {
                    literal = Some(LiteralMatch {
                        a,
                        beta_power: j,
                        r_power: (1..15u64)
                            .filter(|&i| gcd(i, 15) == 1)
                            .nth(ri)
                            .unwrap(),
                        same_order: orb == pts,
                    });
                }
            }
        }
    }

    let fc = find_frame(f)?;
    let gen = fc.conjugated_singer(f, geo.singer())?;
    let own = orbit(f, &gen, &published_pts[0]);
    let own_orbit_on_curve = own.iter().all(|p| fermat.eval(f, p.coords()).is_zero());
    let (census_orbit, census_gen) = match &literal {
        Some(m) => {
            let r = f.from_log(r_logs[0] * m.r_power);
            (published_orbit(f, r), published_matrix(f, r))
        }
        None => (own.clone(), gen.matrix),
    };
    let census = conic_census(f, &census_orbit, &rational_plane(f), 7);
    let forms: Vec<HomogeneousForm> = census.rich.iter().map(|c| c.form.clone()).collect();
    let rich_conic_classes = conic_classes(f, &forms, &census_gen);
    Ok(PublishedReport {
        level: literal.map_or(MatchLevel::Structural, MatchLevel::Literal),
        combinations_searched: searched,
        matrix_matches,
        published_points_on_curve,
        published_conic_points,
        own_orbit_size: own.len(),
        own_orbit_on_curve,
        census,
        rich_conic_classes,
    })
}
