//! Dense univariate polynomials over F_(q^6), little-endian coefficient vectors.

use crate::gftower::{FElem, FieldTower};

pub type Poly = Vec<FElem>;

pub fn trim(a: &mut Poly) {
    while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    if a.is_empty() {
        a.push(FElem::ZERO);
    }
}

pub fn is_zero(a: &[FElem]) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[FElem]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(f: &FieldTower, a: &[FElem], b: &[FElem]) -> Poly {
    let mut out = vec![FElem::ZERO; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or_default();
        let y = b.get(i).copied().unwrap_or_default();
        *o = f.add(x, y);
    }
    trim(&mut out);
    out
}

pub fn scale(f: &FieldTower, a: &[FElem], c: FElem) -> Poly {
    let mut out: Poly = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub fn mul(f: &FieldTower, a: &[FElem], b: &[FElem]) -> Poly {
    let mut out = vec![FElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub fn pow(f: &FieldTower, a: &[FElem], mut e: u32) -> Poly {
    let mut result = vec![FElem::ONE];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(f, &result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    result
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divrem(f: &FieldTower, a: &[FElem], b: &[FElem]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return (vec![FElem::ZERO], r);
    };
    if da < db {
        return (vec![FElem::ZERO], r);
    }
    let lead_inv = f.inv(b[db]);
    let mut quot = vec![FElem::ZERO; da - db + 1];
    for i in (db..=da).rev() {
        let c = f.mul(r[i], lead_inv);
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c;
        for j in 0..=db {
            r[i - db + j] = f.sub(r[i - db + j], f.mul(c, b[j]));
        }
    }
    trim(&mut quot);
    r.truncate(db.max(1));
    trim(&mut r);
    (quot, r)
}

/// Monic gcd.
pub fn gcd(f: &FieldTower, a: &[FElem], b: &[FElem]) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero(&y) {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    match degree(&x) {
        None => x,
        Some(d) => scale(f, &x, f.inv(x[d])),
    }
}

/// Multiplicity of `root` as a root of the nonzero polynomial `a`.
pub fn root_multiplicity(f: &FieldTower, a: &[FElem], root: FElem) -> usize {
    let mut cur = a.to_vec();
    trim(&mut cur);
    let mut m = 0;
    while degree(&cur).is_some_and(|d| d > 0) && f.eval_poly(&cur, root).is_zero() {
        // synthetic division by (X - root)
        let d = degree(&cur).unwrap();
        let mut q = vec![FElem::ZERO; d];
        let mut carry = FElem::ZERO;
        for i in (1..=d).rev() {
            carry = f.add(cur[i], f.mul(carry, root));
            q[i - 1] = carry;
        }
        cur = q;
        trim(&mut cur);
        m += 1;
    }
    m
}

/// Roots in F_(q^6) with multiplicities, sorted by root index.
pub fn roots_with_multiplicity(f: &FieldTower, a: &[FElem]) -> crate::Result<Vec<(FElem, usize)>> {
    let roots = f.univariate_roots(a)?;
    Ok(roots
        .into_iter()
        .map(|r| (r, root_multiplicity(f, a, r)))
        .collect())
}

/// Interpolating polynomial of degree < xs.len() (Newton form, expanded).
pub fn interpolate(f: &FieldTower, xs: &[FElem], ys: &[FElem]) -> Poly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            coef[i] = f.div(num, den);
        }
    }
    let mut out = vec![coef[n - 1]];
    for i in (0..n - 1).rev() {
        out = mul(f, &out, &[f.neg(xs[i]), FElem::ONE]);
        out[0] = f.add(out[0], coef[i]);
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gftower::PrimePower;
    use proptest::prelude::*;

    fn t3() -> FieldTower {
        FieldTower::build(PrimePower::from_q(3).unwrap()).unwrap()
    }

    #[test]
    fn multiplicity_of_repeated_root() {
        let f = t3();
        let r = f.root_of_unity(13).unwrap();
        let lin = vec![f.neg(r), FElem::ONE];
        let p = mul(&f, &pow(&f, &lin, 3), &[FElem::ONE, FElem::ONE]);
        assert_eq!(root_multiplicity(&f, &p, r), 3);
    }

    proptest! {
        #[test]
        fn division_identity(a in proptest::collection::vec(0u32..729, 1..8),
                             b in proptest::collection::vec(0u32..729, 1..5)) {
            let f = t3();
            let a: Poly = a.into_iter().map(FElem::from_index).collect();
            let b: Poly = b.into_iter().map(FElem::from_index).collect();
            prop_assume!(!is_zero(&b));
            let (qt, r) = divrem(&f, &a, &b);
            let back = add(&f, &mul(&f, &qt, &b), &r);
            let mut a2 = a.clone();
            trim(&mut a2);
            prop_assert_eq!(back, a2);
        }

        #[test]
        fn interpolation_reproduces_values(ys in proptest::collection::vec(0u32..729, 1..7)) {
            let f = t3();
            let xs: Vec<FElem> = (0..ys.len() as u32).map(|i| FElem::from_index(i + 3)).collect();
            let ys: Vec<FElem> = ys.into_iter().map(FElem::from_index).collect();
            let p = interpolate(&f, &xs, &ys);
            for (x, y) in xs.iter().zip(&ys) {
                prop_assert_eq!(f.eval_poly(&p, *x), *y);
            }
        }
    }
}
