//! Minimum distance by enumerating one message per projective class.
//!
//! Messages are grouped by their leading position ℓ (coefficient 1 there,
//! zero before). The free tail coefficients are expanded into base-p digits
//! over the additive basis `1, x, ..., x^(m-1)` of F_(q^2), and the digits are
//! walked in modular p-ary Gray order, so each step adds one precomputed
//! vector `x^i · row_j` to the running codeword. In characteristic 2 the
//! codeword is packed into u64 words and a step is a handful of XORs.

use std::time::Instant;

use rayon::prelude::*;

use super::{DistanceReport, LinearCode, Method, SmallField};
use crate::error::{Error, Result};

/// `(Q^k - 1) / (Q - 1)`.
pub fn projective_count(order: usize, k: usize) -> u128 {
    let q = order as u128;
    (0..k).fold(0u128, |acc, _| acc.saturating_mul(q).saturating_add(1))
}

/// Gray-walk length per job, as a power of p.
fn low_digits(p: u32) -> u32 {
    match p {
        2 => 20,
        3 => 13,
        5 => 9,
        _ => (20.0 / (p as f64).log2()).floor().max(1.0) as u32,
    }
}

/// Position of the lowest nonzero base-p digit of `s > 0`.
#[inline]
fn gray_digit(mut s: u64, p: u64) -> usize {
    if p == 2 {
        return s.trailing_zeros() as usize;
    }
    let mut i = 0;
    while s.is_multiple_of(p) {
        s /= p;
        i += 1;
    }
    i
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Best {
    weight: usize,
    lead: usize,
    job: u64,
    step: u64,
    word: Vec<u8>,
}

struct Plan<'a> {
    code: &'a LinearCode,
    p: u32,
    m: usize,
}

impl Plan<'_> {
    fn sf(&self) -> &SmallField {
        self.code.field()
    }

    /// Digit vectors `x^i · row_j` for the tail of lead ℓ, low digits first.
    fn digit_vectors(&self, lead: usize) -> Vec<Vec<u8>> {
        let sf = self.sf();
        let mut out = Vec::new();
        for row in &self.code.generator()[lead + 1..] {
            let mut basis = 1u8;
            for _ in 0..self.m {
                out.push(row.iter().map(|&x| sf.mul_elems(basis, x)).collect());
                basis = (basis as u32 * self.p) as u8;
            }
        }
        out
    }

    /// Codeword at the start of job `job`: row_ℓ plus the high digits.
    fn job_start(&self, lead: usize, vecs: &[Vec<u8>], low: usize, job: u64) -> Vec<u8> {
        let sf = self.sf();
        let mut word = self.code.generator()[lead].clone();
        let mut c = job;
        for v in &vecs[low..] {
            let digit = c % self.p as u64;
            c /= self.p as u64;
            for _ in 0..digit {
                for (w, &x) in word.iter_mut().zip(v) {
                    *w = sf.add_elems(*w, x);
                }
            }
        }
        word
    }
}

fn run_bytes(sf: &SmallField, start: Vec<u8>, vecs: &[Vec<u8>], steps: u64, p: u64) -> (usize, u64, Vec<u8>) {
    let mut cur = start;
    let mut best = (super::weight(&cur), 0, cur.clone());
    for s in 1..steps {
        let v = &vecs[gray_digit(s, p)];
        let mut w = 0;
        for (c, &x) in cur.iter_mut().zip(v) {
            *c = sf.add_elems(*c, x);
            w += (*c != 0) as usize;
        }
        if w < best.0 {
            best = (w, s, cur.clone());
        }
    }
    best
}

struct Packing {
    bits: usize,
    per_word: usize,
    words: usize,
    low_mask: u64,
}

impl Packing {
    fn new(n: usize, bits: usize) -> Self {
        let per_word = 64 / bits;
        let low_mask = (0..per_word).fold(0u64, |m, s| m | 1 << (s * bits));
        Packing {
            bits,
            per_word,
            words: n.div_ceil(per_word),
            low_mask,
        }
    }

    fn pack(&self, v: &[u8]) -> Vec<u64> {
        let mut out = vec![0u64; self.words];
        for (j, &x) in v.iter().enumerate() {
            out[j / self.per_word] |= (x as u64) << ((j % self.per_word) * self.bits);
        }
        out
    }

    fn unpack(&self, w: &[u64], n: usize) -> Vec<u8> {
        let mask = (1u64 << self.bits) - 1;
        (0..n)
            .map(|j| ((w[j / self.per_word] >> ((j % self.per_word) * self.bits)) & mask) as u8)
            .collect()
    }
}

#[inline(always)]
fn packed_weight<const W: usize>(cur: &[u64; W], bits: usize, low_mask: u64) -> usize {
    let mut total = 0;
    for &x in cur {
        let mut y = x;
        for s in 1..bits {
            y |= x >> s;
        }
        total += (y & low_mask).count_ones() as usize;
    }
    total
}

fn run_packed<const W: usize>(
    start: &[u64],
    vecs: &[Vec<u64>],
    steps: u64,
    bits: usize,
    low_mask: u64,
) -> (usize, u64, Vec<u64>) {
    let mut cur = [0u64; W];
    cur.copy_from_slice(start);
    let table: Vec<[u64; W]> = vecs
        .iter()
        .map(|v| {
            let mut a = [0u64; W];
            a.copy_from_slice(v);
            a
        })
        .collect();
    let mut best_w = packed_weight(&cur, bits, low_mask);
    let mut best_s = 0;
    let mut best_word = cur;
    for s in 1..steps {
        let v = &table[s.trailing_zeros() as usize];
        for i in 0..W {
            cur[i] ^= v[i];
        }
        let w = packed_weight(&cur, bits, low_mask);
        if w < best_w {
            best_w = w;
            best_s = s;
            best_word = cur;
        }
    }
    (best_w, best_s, best_word.to_vec())
}

fn run_packed_dyn(pk: &Packing, start: &[u64], vecs: &[Vec<u64>], steps: u64) -> (usize, u64, Vec<u64>) {
    macro_rules! dispatch {
        ($($w:literal),*) => {
            match pk.words {
                $($w => run_packed::<$w>(start, vecs, steps, pk.bits, pk.low_mask),)*
                _ => unreachable!("packed path limited to eight words"),
            }
        };
    }
    dispatch!(1, 2, 3, 4, 5, 6, 7, 8)
}

/// Exact minimum distance. Fails with `BudgetExceeded` when the number of
/// projective messages is above `budget`. `threads = 0` uses the default
/// pool size; the result does not depend on the thread count.
pub fn exhaustive_min_distance(code: &LinearCode, budget: u128, threads: usize) -> Result<DistanceReport> {
    let started = Instant::now();
    let sf = code.field();
    let k = code.k();
    let total = projective_count(sf.order(), k);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    if k == 0 {
        return Err(Error::BadParameter("the zero code has no minimum distance".into()));
    }
    let p = sf.p();
    let plan = Plan {
        code,
        p,
        m: sf.degree() as usize,
    };
    let packing = (p == 2).then(|| Packing::new(code.n(), sf.degree() as usize));
    let packing = packing.filter(|pk| pk.words <= 8);
    let low_cap = low_digits(p) as usize;

    let mut jobs = Vec::new();
    let mut vec_sets = Vec::new();
    for lead in 0..k {
        let vecs = plan.digit_vectors(lead);
        let low = vecs.len().min(low_cap);
        let high = vecs.len() - low;
        for job in 0..(p as u64).pow(high as u32) {
            jobs.push((lead, low, job));
        }
        vec_sets.push(vecs);
    }
    let packed_sets: Option<Vec<Vec<Vec<u64>>>> = packing.as_ref().map(|pk| {
        vec_sets
            .iter()
            .map(|vs| vs.iter().map(|v| pk.pack(v)).collect())
            .collect()
    });

    let run_job = |&(lead, low, job): &(usize, usize, u64)| -> Best {
        let vecs = &vec_sets[lead];
        let start = plan.job_start(lead, vecs, low, job);
        let steps = (p as u64).pow(low as u32);
        let (weight, step, word) = match (&packing, &packed_sets) {
            (Some(pk), Some(ps)) => {
                let (w, s, packed) = run_packed_dyn(pk, &pk.pack(&start), &ps[lead], steps);
                (w, s, pk.unpack(&packed, code.n()))
            }
            _ => run_bytes(sf, start, vecs, steps, p as u64),
        };
        Best {
            weight,
            lead,
            job,
            step,
            word,
        }
    };
    let reduce = |a: Best, b: Best| a.min(b);
    let best = if threads == 1 {
        jobs.iter().map(run_job).reduce(reduce)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::BadParameter(e.to_string()))?;
        pool.install(|| jobs.par_iter().map(run_job).reduce_with(reduce))
    }
    .expect("at least one job");

    Ok(DistanceReport {
        method: Method::Exhaustive,
        lower: best.weight,
        upper: best.weight,
        witness: Some(best.word),
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        work: total,
        notes: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{random_code, weight, Provenance};
    use crate::gftower::{FieldTower, PrimePower};
    use std::sync::Arc;

    fn field(q: u64) -> Arc<SmallField> {
        let f = FieldTower::build(PrimePower::from_q(q).unwrap()).unwrap();
        Arc::new(SmallField::for_tower(&f).unwrap())
    }

    /// Minimum weight over all nonzero messages, enumerated directly.
    fn naive(code: &LinearCode) -> usize {
        let qq = code.field().order();
        let k = code.k();
        let mut best = usize::MAX;
        for idx in 1..qq.pow(k as u32) {
            let msg: Vec<u8> = (0..k).map(|i| ((idx / qq.pow(i as u32)) % qq) as u8).collect();
            best = best.min(weight(&code.encode(&msg)));
        }
        best
    }

    #[test]
    fn counts() {
        assert_eq!(projective_count(9, 5), 7381);
        assert_eq!(projective_count(16, 8), (16u128.pow(8) - 1) / 15);
    }

    #[test]
    fn gray_digits() {
        assert_eq!(gray_digit(1, 3), 0);
        assert_eq!(gray_digit(3, 3), 1);
        assert_eq!(gray_digit(18, 3), 2);
        assert_eq!(gray_digit(8, 2), 3);
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        for (q, n, k, seed) in [(3, 12, 3, 1), (4, 10, 3, 2), (5, 8, 2, 3), (4, 40, 2, 9)] {
            let sf = field(q);
            let c = random_code(&sf, n, k, seed);
            let r = exhaustive_min_distance(&c, u128::MAX, 1).unwrap();
            assert_eq!(r.exact(), Some(naive(&c)));
            let w = r.witness.unwrap();
            assert_eq!(weight(&w), r.lower);
            assert!(c.contains(&w));
        }
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let sf = field(4);
        let c = random_code(&sf, 20, 4, 5);
        let a = exhaustive_min_distance(&c, u128::MAX, 1).unwrap();
        let b = exhaustive_min_distance(&c, u128::MAX, 3).unwrap();
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn budget_is_enforced() {
        let sf = field(3);
        let c = random_code(&sf, 10, 4, 1);
        assert!(matches!(
            exhaustive_min_distance(&c, 10, 1),
            Err(Error::BudgetExceeded { .. })
        ));
        let rep = LinearCode::from_rows(sf.clone(), 3, vec![vec![1, 1, 1]], Provenance::Subcode);
        assert_eq!(exhaustive_min_distance(&rep, 10, 1).unwrap().exact(), Some(3));
    }
}
