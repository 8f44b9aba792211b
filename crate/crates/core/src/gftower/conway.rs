//! Conway polynomials by direct search.
//!
//! `C(p, n)` is the least monic primitive polynomial of degree `n` over F_p,
//! in the ordering that compares `(c_{n-1}, ..., c_0)` lexicographically
//! where `c_i = (-1)^(n-i) a_i`, subject to compatibility: for every proper
//! divisor `d` of `n`, `x^((p^n-1)/(p^d-1))` is a root of `C(p, d)`.
//!
//! The fields used here are tiny, so the search finishes in milliseconds.

use std::collections::HashMap;

/// Polynomial over F_p, little-endian coefficients.
type Fp = Vec<u64>;

fn trim(a: &mut Fp) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

/// Multiply modulo a monic `modulus`.
fn mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Fp {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (n..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for k in 0..n {
            prod[i - n + k] = (prod[i - n + k] + (p - c) * modulus[k]) % p;
        }
    }
    prod.truncate(n.max(1));
    let mut r = prod;
    trim(&mut r);
    r
}

fn powmod(base: &[u64], mut e: u128, modulus: &[u64], p: u64) -> Fp {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, modulus, p);
        }
        b = mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    result
}

fn is_one(a: &[u64]) -> bool {
    a.len() == 1 && a[0] == 1
}

pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    let order = (p as u128).pow(n as u32) - 1;
    let x = vec![0, 1];
    if !is_one(&powmod(&x, order, f, p)) {
        return false;
    }
    prime_factors(order)
        .iter()
        .all(|&r| !is_one(&powmod(&x, order / r, f, p)))
}

/// Evaluate `g` (over F_p) at the residue `y` modulo `f`.
fn eval_at(g: &[u64], y: &[u64], f: &[u64], p: u64) -> Fp {
    let mut acc = vec![0u64];
    for &c in g.iter().rev() {
        acc = if acc.iter().all(|&v| v == 0) {
            vec![0]
        } else {
            mulmod(&acc, y, f, p)
        };
        acc[0] = (acc[0] + c) % p;
        trim(&mut acc);
    }
    acc
}

/// Coefficients `a_0..a_{n-1}` (little-endian, monic term omitted) for the
/// candidate with Conway-order rank `idx`.
fn candidate(idx: u64, n: usize, p: u64) -> Fp {
    // digits of idx, most significant digit is c_{n-1}
    let mut c = vec![0u64; n];
    let mut rest = idx;
    for i in 0..n {
        c[i] = rest % p;
        rest /= p;
    }
    let mut f = vec![0u64; n + 1];
    f[n] = 1;
    for i in 0..n {
        // c_i = (-1)^(n-i) a_i ; c[i] here is c_i
        let sign_neg = (n - i) % 2 == 1;
        f[i] = if sign_neg { (p - c[i]) % p } else { c[i] };
    }
    f
}

/// Search for the Conway polynomial `C(p, n)`; little-endian, monic.
pub fn conway_polynomial(p: u64, n: usize) -> Vec<u64> {
    let mut memo = HashMap::new();
    conway_memo(p, n, &mut memo)
}

fn conway_memo(p: u64, n: usize, memo: &mut HashMap<usize, Fp>) -> Fp {
    if let Some(f) = memo.get(&n) {
        return f.clone();
    }
    let divisors: Vec<usize> = (1..n).filter(|d| n.is_multiple_of(*d)).collect();
    let subs: Vec<(usize, Fp)> = divisors
        .iter()
        .map(|&d| (d, conway_memo(p, d, memo)))
        .collect();
    let total = p.pow(n as u32);
    let order = (p as u128).pow(n as u32) - 1;
    // c_0 is the least significant digit of the rank, so rank order is
    // exactly the Conway order.
    for idx in 0..total {
        let f = candidate(idx, n, p);
        if f[0] == 0 || !is_primitive(&f, p) {
            continue;
        }
        let compatible = subs.iter().all(|(d, g)| {
            let e = order / ((p as u128).pow(*d as u32) - 1);
            let y = powmod(&[0, 1], e, &f, p);
            eval_at(g, &y, &f, p).iter().all(|&v| v == 0)
        });
        if compatible {
            memo.insert(n, f.clone());
            return f;
        }
    }
    unreachable!("a primitive compatible polynomial always exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    // Published values (Lübeck's table).
    #[test]
    fn matches_published_small_degrees() {
        assert_eq!(conway_polynomial(2, 1), vec![1, 1]);
        assert_eq!(conway_polynomial(2, 2), vec![1, 1, 1]);
        assert_eq!(conway_polynomial(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(conway_polynomial(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(conway_polynomial(3, 1), vec![1, 1]);
        assert_eq!(conway_polynomial(3, 2), vec![2, 2, 1]);
        assert_eq!(conway_polynomial(3, 3), vec![1, 2, 0, 1]);
        assert_eq!(conway_polynomial(5, 2), vec![2, 4, 1]);
        assert_eq!(conway_polynomial(5, 3), vec![3, 3, 0, 1]);
    }

    #[test]
    fn matches_published_tower_degrees() {
        assert_eq!(conway_polynomial(2, 6), vec![1, 1, 0, 1, 1, 0, 1]);
        assert_eq!(conway_polynomial(3, 6), vec![2, 2, 1, 0, 2, 0, 1]);
        assert_eq!(
            conway_polynomial(2, 12),
            vec![1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]
        );
        assert_eq!(conway_polynomial(5, 6), vec![2, 0, 1, 4, 1, 0, 1]);
    }
}
