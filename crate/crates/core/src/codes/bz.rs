//! Brouwer–Zimmermann style bounds from disjoint information sets.
//!
//! The generator is brought into systematic form on pairwise disjoint
//! column sets. After all messages of weight `<= w` have been encoded in
//! every form, any unseen codeword has weight at least
//! `sum_j max(0, w + 1 - (k - r_j))`, where `r_j` is the rank on set j.

use std::time::Instant;

use super::{weight, DistanceReport, LinearCode, Method, SmallField};
use crate::codes::columns::binomial;
use crate::linalg::Field;

/// Generator matrices in systematic form on disjoint column sets, with ranks.
pub fn disjoint_information_sets(code: &LinearCode) -> Vec<(Vec<Vec<u8>>, usize)> {
    let sf = code.field();
    let (n, k) = (code.n(), code.k());
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let mut m = code.generator().to_vec();
        let mut r = 0;
        for c in 0..n {
            if used[c] || r == k {
                continue;
            }
            let Some(p) = (r..k).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = sf.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = sf.mul_elems(*x, inv);
            }
            for i in 0..k {
                if i != r && m[i][c] != 0 {
                    let factor = m[i][c];
                    let pivot_row = m[r].clone();
                    for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                        *x = sf.sub(*x, sf.mul_elems(factor, y));
                    }
                }
            }
            used[c] = true;
            r += 1;
        }
        if r == 0 {
            break;
        }
        out.push((m, r));
        if r < k {
            break;
        }
    }
    out
}

fn lower_after(ranks: &[usize], k: usize, w: usize) -> usize {
    ranks.iter().map(|&r| (w + 1).saturating_sub(k - r)).sum()
}

/// Visit every codeword `sum c_i row_i` over `w`-subsets of rows with the
/// first coefficient equal to 1.
fn for_each_word(sf: &SmallField, rows: &[Vec<u8>], w: usize, mut visit: impl FnMut(&[u8])) {
    let k = rows.len();
    let n = rows[0].len();
    let qq = sf.order();
    let mut subset: Vec<usize> = (0..w).collect();
    loop {
        // coefficient counters for positions 1..w, each in 1..qq
        let mut coeff = vec![1u8; w];
        loop {
            let mut word = vec![0u8; n];
            for (&i, &c) in subset.iter().zip(&coeff) {
                for (x, &y) in word.iter_mut().zip(&rows[i]) {
                    *x = sf.add_elems(*x, sf.mul_elems(c, y));
                }
            }
            visit(&word);
            let Some(pos) = (1..w).rev().find(|&p| (coeff[p] as usize) < qq - 1) else {
                break;
            };
            coeff[pos] += 1;
            for c in &mut coeff[pos + 1..] {
                *c = 1;
            }
        }
        let Some(pos) = (0..w).rev().find(|&p| subset[p] < k - w + p) else {
            break;
        };
        subset[pos] += 1;
        for j in pos + 1..w {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Bounds on the minimum distance using at most `budget` encoded words.
/// `known` is an optional codeword already known to lie in the code.
pub fn bz_min_distance(code: &LinearCode, budget: u128, known: Option<&[u8]>) -> DistanceReport {
    let started = Instant::now();
    let sf = code.field();
    let k = code.k();
    let sets = disjoint_information_sets(code);
    let ranks: Vec<usize> = sets.iter().map(|s| s.1).collect();
    let mut upper = code.n();
    let mut witness: Option<Vec<u8>> = None;
    if let Some(w) = known {
        upper = weight(w);
        witness = Some(w.to_vec());
    }
    for row in code.generator() {
        if weight(row) < upper {
            upper = weight(row);
            witness = Some(row.clone());
        }
    }
    let mut lower = 1;
    let mut spent = 0u128;
    let mut notes = vec![format!("information-set ranks {ranks:?}")];
    if budget > 0 {
        for w in 1..=k {
            let per_set = binomial(k, w) * (sf.order() as u128 - 1).pow(w as u32 - 1);
            let cost = per_set * sets.len() as u128;
            if spent + cost > budget {
                notes.push(format!("budget exhausted before message weight {w}"));
                break;
            }
            spent += cost;
            for (rows, _) in &sets {
                for_each_word(sf, rows, w, |word| {
                    let wt = weight(word);
                    if wt < upper {
                        upper = wt;
                        witness = Some(word.to_vec());
                    }
                });
            }
            lower = lower.max(lower_after(&ranks, k, w));
            if w == k {
                lower = upper;
            }
            if lower >= upper {
                lower = upper;
                break;
            }
        }
    }
    DistanceReport {
        method: Method::Bz,
        lower,
        upper,
        witness,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        work: spent,
        notes,
    }
}
