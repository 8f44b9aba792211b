//! Evaluation codes over F_(q^2) and their minimum-distance engines.

pub mod bz;
pub mod columns;
pub mod exhaustive;
pub mod field;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gftower::{FElem, FieldTower};
use crate::hermitian::{Geometry, Orbit};
use crate::linalg;
use crate::rrspace::RationalFunction;

pub use bz::bz_min_distance;
pub use columns::{column_min_distance, distance_lower_bound_by_columns};
pub use exhaustive::{exhaustive_min_distance, projective_count};
pub use field::SmallField;

/// The points of `H_τ ∩ Π` outside G, as q Γ-orbits in B-order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluationDomain {
    pub tau: usize,
    pub g: Orbit,
    pub orbits: Vec<Orbit>,
    /// Π-indices in coordinate order.
    pub points: Vec<usize>,
}

impl EvaluationDomain {
    /// G is the orbit of the curve's Π-points with the smallest member.
    pub fn new(geo: &Geometry, tau: usize) -> Self {
        let mut parts = geo.orbit_partition(geo.curve(tau));
        let g = parts.remove(0);
        Self::with_orbits(tau, g, parts)
    }

    pub fn with_orbits(tau: usize, g: Orbit, orbits: Vec<Orbit>) -> Self {
        let points = orbits.iter().flat_map(|o| o.indices.iter().copied()).collect();
        EvaluationDomain {
            tau,
            g,
            orbits,
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn block_len(&self) -> usize {
        self.orbits.first().map_or(0, |o| o.len())
    }

    pub fn position_of(&self, pi_index: usize) -> Option<usize> {
        self.points.iter().position(|&i| i == pi_index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Functional { lambda: u32 },
    Subcode,
    Differential,
    DualOf { of: Box<Provenance> },
    Random { seed: u64 },
    Other { label: String },
}

/// A linear code given by a generator matrix with independent rows.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Arc<SmallField>,
    n: usize,
    generator: Vec<Vec<u8>>,
    pub provenance: Provenance,
}

impl LinearCode {
    /// Keeps a maximal independent prefix-greedy subset of the rows.
    pub fn from_rows(field: Arc<SmallField>, n: usize, rows: Vec<Vec<u8>>, provenance: Provenance) -> Self {
        let mut kept: Vec<Vec<u8>> = Vec::new();
        let mut echelon: Vec<Vec<u8>> = Vec::new();
        for row in rows {
            assert_eq!(row.len(), n, "row length differs from code length");
            echelon.push(row.clone());
            if linalg::rank(&*field, &echelon) > kept.len() {
                kept.push(row);
                linalg::rref(&*field, &mut echelon);
                echelon.truncate(kept.len());
            } else {
                echelon.pop();
            }
        }
        LinearCode {
            field,
            n,
            generator: kept,
            provenance,
        }
    }

    pub fn field(&self) -> &SmallField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<SmallField> {
        self.field.clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    /// Generator of the orthogonal complement under the standard dot product.
    pub fn dual(&self) -> LinearCode {
        let ker = linalg::kernel(&*self.field, &self.generator, self.n);
        LinearCode::from_rows(
            self.field.clone(),
            self.n,
            ker,
            Provenance::DualOf {
                of: Box::new(self.provenance.clone()),
            },
        )
    }

    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        let sf = &*self.field;
        let mut out = vec![0u8; self.n];
        for (row, &c) in self.generator.iter().zip(message) {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o = sf.add_elems(*o, sf.mul_elems(c, x));
            }
        }
        out
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        let mut m = self.generator.clone();
        let before = linalg::rank(&*self.field, &m);
        m.push(word.to_vec());
        linalg::rank(&*self.field, &m) == before
    }

    pub fn same_row_space(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.k() == other.k() && other.generator.iter().all(|r| self.contains(r))
    }

    /// Row space invariant under the simultaneous cyclic shift of the
    /// consecutive blocks of length `block`.
    pub fn is_quasi_cyclic(&self, block: usize) -> bool {
        if block == 0 || !self.n.is_multiple_of(block) {
            return false;
        }
        let mut m = self.generator.clone();
        let pivots = linalg::rref(&*self.field, &mut m);
        self.generator.iter().all(|row| {
            let shifted: Vec<u8> = (0..self.n)
                .map(|j| {
                    let (b, i) = (j / block, j % block);
                    row[b * block + (i + block - 1) % block]
                })
                .collect();
            linalg::in_row_space(&*self.field, &m, &pivots, &shifted)
        })
    }

    /// Export structure with every entry as its base-p coefficient vector.
    pub fn export(&self) -> CodeExport {
        let sf = &*self.field;
        CodeExport {
            p: sf.p(),
            field_order: sf.order(),
            n: self.n,
            k: self.k(),
            provenance: self.provenance.clone(),
            generator: self
                .generator
                .iter()
                .map(|r| r.iter().map(|&x| sf.digits(x)).collect())
                .collect(),
        }
    }

    /// One row per line, entries as integers whose base-p digits are the
    /// coefficient vector.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.generator {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Hamming weight.
pub fn weight(word: &[u8]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

pub fn dot(sf: &SmallField, a: &[u8], b: &[u8]) -> u8 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| sf.add_elems(acc, sf.mul_elems(x, y)))
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeExport {
    pub p: u32,
    pub field_order: usize,
    pub n: usize,
    pub k: usize,
    pub provenance: Provenance,
    pub generator: Vec<Vec<Vec<u32>>>,
}

/// Scale a value vector so its first nonzero entry is 1 and map it into F_(q^2).
pub fn normalize_row(f: &FieldTower, sf: &SmallField, row: &[FElem]) -> Result<Vec<u8>> {
    let Some(&c) = row.iter().find(|x| !x.is_zero()) else {
        return Ok(vec![0; row.len()]);
    };
    let ci = f.inv(c);
    row.iter()
        .map(|&x| {
            sf.from_tower(f, f.mul(x, ci))
                .ok_or_else(|| Error::NormalizationFailure("row values lie in different cosets".into()))
        })
        .collect()
}

/// Evaluation code of the functions on the domain.
pub fn evaluate(
    geo: &Geometry,
    sf: &Arc<SmallField>,
    functions: &[RationalFunction],
    dom: &EvaluationDomain,
    provenance: Provenance,
) -> Result<LinearCode> {
    let f = geo.tower();
    let rows = functions
        .iter()
        .map(|r| normalize_row(f, sf, &r.evaluate_on(geo, dom)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearCode::from_rows(sf.clone(), dom.len(), rows, provenance))
}

/// A code with uniformly random generator entries, for negative controls.
pub fn random_code(sf: &Arc<SmallField>, n: usize, k: usize, seed: u64) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..sf.order()) as u8).collect())
        .collect();
    LinearCode::from_rows(sf.clone(), n, rows, Provenance::Random { seed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    ColumnRank,
    SupportSearch,
    Bz,
}

/// Bounds on a minimum distance, with the witness realizing the upper bound.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    pub method: Method,
    pub lower: usize,
    pub upper: usize,
    pub witness: Option<Vec<u8>>,
    pub elapsed_ms: f64,
    /// Codewords or column subsets examined.
    pub work: u128,
    pub notes: Vec<String>,
}

impl DistanceReport {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}
