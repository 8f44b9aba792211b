//! Arithmetic in F_(q^6) and its subfields F_q, F_(q^2), F_(q^3).
//!
//! Elements are stored as `1 + discrete log` with respect to a root `g` of
//! the Conway polynomial of degree `6h` over F_p, so multiplication is an
//! index addition and addition goes through a Zech logarithm table.

mod cache;
pub mod conway;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Field;

pub use cache::{build_tower_cached, load_tables, save_tables, sidecar_name};

/// Largest field order for which full tables are built by default.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

const NO_ZECH: u32 = u32::MAX;

/// `q = p^h` with `p` prime and `q >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    p: u32,
    h: u32,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimePower {
    pub fn new(p: u32, h: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if h == 0 {
            return Err(Error::NotPrimePower(1));
        }
        let pp = PrimePower { p, h };
        if pp.q() < 3 {
            return Err(Error::QTooSmall(pp.q()));
        }
        Ok(pp)
    }

    /// Factor `q` as a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 3 {
            return Err(Error::QTooSmall(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut rest = q;
        let mut h = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            h += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        PrimePower::new(p as u32, h)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.h)
    }
}

/// A field element: `0` is zero, otherwise `1 + log_g(x)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct FElem(pub(crate) u32);

impl FElem {
    pub const ZERO: FElem = FElem(0);
    pub const ONE: FElem = FElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_index(index: u32) -> Self {
        FElem(index)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Header identifying a tower: enough to rebuild it bit for bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerHeader {
    pub p: u32,
    pub h: u32,
    /// Conway polynomial of degree 6h, little-endian, monic.
    pub defining_polynomial: Vec<u32>,
}

/// F_(q^6) with full log/antilog/Zech tables.
#[derive(Debug, Clone)]
pub struct FieldTower {
    pp: PrimePower,
    degree: usize,
    order: u32,
    modulus: Vec<u32>,
    /// log -> additive representation (base-p digits packed into an integer)
    exp: Vec<u32>,
    /// additive representation -> log
    log: Vec<u32>,
    /// k -> log(1 + g^k), or NO_ZECH when 1 + g^k = 0
    zech: Vec<u32>,
    neg_one: FElem,
}

impl FieldTower {
    pub fn build(pp: PrimePower) -> Result<Self> {
        Self::build_with_cap(pp, DEFAULT_TABLE_CAP)
    }

    pub fn build_with_cap(pp: PrimePower, cap: u64) -> Result<Self> {
        let order = pp.q().checked_pow(6).unwrap_or(u64::MAX);
        if order > cap || order > u32::MAX as u64 {
            return Err(Error::CapExceeded { order, cap });
        }
        let degree = 6 * pp.h() as usize;
        let modulus: Vec<u32> = conway::conway_polynomial(pp.p() as u64, degree)
            .into_iter()
            .map(|c| c as u32)
            .collect();
        Ok(Self::from_modulus(pp, modulus))
    }

    pub(crate) fn from_modulus(pp: PrimePower, modulus: Vec<u32>) -> Self {
        let p = pp.p();
        let degree = modulus.len() - 1;
        let order = p.pow(degree as u32);
        let group = (order - 1) as usize;
        let mut exp = vec![0u32; group];
        let mut log = vec![0u32; order as usize];
        let mut digits = vec![0u32; degree];
        digits[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let packed = pack(&digits, p);
            *slot = packed;
            log[packed as usize] = k as u32;
            // multiply by x modulo the (monic) modulus
            let top = digits[degree - 1];
            for i in (1..degree).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    digits[i] = (digits[i] + (p - top) * modulus[i] % p) % p;
                }
            }
        }
        let mut zech = vec![NO_ZECH; group];
        for (k, z) in zech.iter_mut().enumerate() {
            let sum = add_packed(exp[k], 1, p, degree);
            if sum != 0 {
                *z = log[sum as usize];
            }
        }
        let neg_one = if p == 2 {
            FElem::ONE
        } else {
            FElem(1 + (group / 2) as u32)
        };
        FieldTower {
            pp,
            degree,
            order,
            modulus,
            exp,
            log,
            zech,
            neg_one,
        }
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn p(&self) -> u32 {
        self.pp.p()
    }

    pub fn q(&self) -> u64 {
        self.pp.q()
    }

    /// Number of elements, q^6.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, q^6 - 1.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    /// Extension degree of F_(q^6) over F_p.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn header(&self) -> TowerHeader {
        TowerHeader {
            p: self.pp.p(),
            h: self.pp.h(),
            defining_polynomial: self.modulus.clone(),
        }
    }

    /// The fixed primitive element g.
    pub fn primitive(&self) -> FElem {
        FElem(2)
    }

    /// g^k.
    pub fn from_log(&self, k: u64) -> FElem {
        FElem(1 + (k % self.group_order() as u64) as u32)
    }

    pub fn log(&self, x: FElem) -> Option<u32> {
        (x.0 != 0).then(|| x.0 - 1)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FElem> {
        (0..self.order).map(FElem)
    }

    pub fn from_int(&self, n: i64) -> FElem {
        let p = self.p() as i64;
        let r = n.rem_euclid(p) as u32;
        if r == 0 {
            FElem::ZERO
        } else {
            FElem(1 + self.log[r as usize])
        }
    }

    #[inline]
    pub fn add(&self, a: FElem, b: FElem) -> FElem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.group_order();
        let (la, lb) = (a.0 - 1, b.0 - 1);
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == NO_ZECH {
            return FElem::ZERO;
        }
        let s = la + z;
        FElem(1 + if s >= n { s - n } else { s })
    }

    #[inline]
    pub fn neg(&self, a: FElem) -> FElem {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: FElem, b: FElem) -> FElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FElem, b: FElem) -> FElem {
        if a.0 == 0 || b.0 == 0 {
            return FElem::ZERO;
        }
        let n = self.group_order();
        let s = (a.0 - 1) + (b.0 - 1);
        FElem(1 + if s >= n { s - n } else { s })
    }

    /// Panics on zero.
    pub fn inv(&self, a: FElem) -> FElem {
        assert!(a.0 != 0, "inverse of zero");
        let n = self.group_order();
        FElem(1 + (n - (a.0 - 1)) % n)
    }

    pub fn div(&self, a: FElem, b: FElem) -> FElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FElem, e: u64) -> FElem {
        if e == 0 {
            return FElem::ONE;
        }
        if a.0 == 0 {
            return FElem::ZERO;
        }
        let n = self.group_order() as u64;
        FElem(1 + ((a.0 - 1) as u64 * (e % n) % n) as u32)
    }

    /// x^(q^k), the k-th power of the q-Frobenius.
    pub fn frob_q(&self, a: FElem, k: u32) -> FElem {
        let e = (self.q() as u128).pow(k % 6) % self.group_order() as u128;
        self.pow(a, e as u64)
    }

    pub fn multiplicative_order(&self, a: FElem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.group_order() as u64;
        Some(n / gcd(n, l))
    }

    /// Membership in F_(q^k) for k in {1, 2, 3, 6}.
    pub fn in_subfield(&self, x: FElem, k: u32) -> Result<bool> {
        if ![1, 2, 3, 6].contains(&k) {
            return Err(Error::BadSubfieldIndex(k));
        }
        let Some(l) = self.log(x) else {
            return Ok(true);
        };
        let sub = self.q().pow(k) - 1;
        let cofactor = self.group_order() as u64 / sub;
        Ok((l as u64).is_multiple_of(cofactor))
    }

    /// The canonical primitive m-th root of unity `g^((q^6-1)/m)`.
    pub fn root_of_unity(&self, m: u64) -> Result<FElem> {
        let n = self.group_order() as u64;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::OrderNotDividing { m, group: n });
        }
        Ok(self.from_log(n / m))
    }

    /// F_p-coordinates of `x` in the basis `1, g, ..., g^(6h-1)`, little-endian.
    pub fn coefficients(&self, x: FElem) -> Vec<u32> {
        let mut packed = match self.log(x) {
            None => 0,
            Some(l) => self.exp[l as usize],
        };
        let p = self.p();
        (0..self.degree)
            .map(|_| {
                let d = packed % p;
                packed /= p;
                d
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> FElem {
        let p = self.p();
        let mut packed = 0u32;
        for &c in coeffs.iter().take(self.degree).rev() {
            packed = packed * p + c % p;
        }
        if packed == 0 {
            FElem::ZERO
        } else {
            FElem(1 + self.log[packed as usize])
        }
    }

    /// Horner evaluation of a little-endian polynomial.
    pub fn eval_poly(&self, coeffs: &[FElem], x: FElem) -> FElem {
        coeffs
            .iter()
            .rev()
            .fold(FElem::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots in F_(q^6) of a little-endian polynomial, by exhaustive scan,
    /// sorted by index encoding.
    pub fn univariate_roots(&self, coeffs: &[FElem]) -> Result<Vec<FElem>> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .elements()
            .filter(|&x| self.eval_poly(coeffs, x).is_zero())
            .collect())
    }

    pub(crate) fn tables(&self) -> (&[u32], &[u32]) {
        (&self.exp, &self.zech)
    }
}

impl Field for FieldTower {
    type Elem = FElem;

    fn zero(&self) -> FElem {
        FElem::ZERO
    }
    fn one(&self) -> FElem {
        FElem::ONE
    }
    fn add(&self, a: FElem, b: FElem) -> FElem {
        FieldTower::add(self, a, b)
    }
    fn sub(&self, a: FElem, b: FElem) -> FElem {
        FieldTower::sub(self, a, b)
    }
    fn mul(&self, a: FElem, b: FElem) -> FElem {
        FieldTower::mul(self, a, b)
    }
    fn neg(&self, a: FElem) -> FElem {
        FieldTower::neg(self, a)
    }
    fn inv(&self, a: FElem) -> FElem {
        FieldTower::inv(self, a)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

pub(crate) fn add_packed(mut a: u32, mut b: u32, p: u32, degree: usize) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..degree {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tower(q: u64) -> FieldTower {
        FieldTower::build(PrimePower::from_q(q).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(tower(3).order(), 729);
        assert_eq!(tower(4).order(), 4096);
        assert_eq!(tower(5).order(), 15625);
    }

    #[test]
    fn prime_power_errors() {
        assert!(matches!(PrimePower::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(PrimePower::from_q(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(PrimePower::from_q(2), Err(Error::QTooSmall(2))));
        let pp = PrimePower::from_q(9).unwrap();
        assert_eq!((pp.p(), pp.h()), (3, 2));
    }

    #[test]
    fn cap_exceeded() {
        let pp = PrimePower::from_q(5).unwrap();
        assert!(matches!(
            FieldTower::build_with_cap(pp, 10_000),
            Err(Error::CapExceeded { order: 15625, .. })
        ));
    }

    #[test]
    fn every_nonzero_element_has_order_dividing_group() {
        for q in [3, 4, 5] {
            let t = tower(q);
            let n = t.group_order() as u64;
            for x in t.elements().skip(1) {
                assert_eq!(t.pow(x, n), FElem::ONE);
            }
        }
    }

    #[test]
    fn subfield_sizes() {
        for q in [3u64, 4, 5] {
            let t = tower(q);
            for k in [1u32, 2, 3, 6] {
                let count = t
                    .elements()
                    .filter(|&x| t.in_subfield(x, k).unwrap())
                    .count() as u64;
                assert_eq!(count, q.pow(k), "q={q} k={k}");
            }
            assert!(matches!(t.in_subfield(FElem::ONE, 4), Err(Error::BadSubfieldIndex(4))));
        }
    }

    #[test]
    fn subfield_membership_examples() {
        let t = tower(3);
        assert!(t.in_subfield(FElem::ONE, 1).unwrap());
        let x = t.root_of_unity(7).unwrap();
        assert_eq!(t.multiplicative_order(x), Some(7));
        assert!(!t.in_subfield(x, 2).unwrap());
        assert!(t.in_subfield(x, 6).unwrap());
    }

    #[test]
    fn subfield_membership_matches_frobenius_fixed_points() {
        let t = tower(4);
        for x in t.elements() {
            for k in [1u32, 2, 3] {
                assert_eq!(t.in_subfield(x, k).unwrap(), t.frob_q(x, k) == x);
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let t = tower(3);
        let z = t.root_of_unity(91).unwrap();
        assert_eq!(t.multiplicative_order(z), Some(91));
        assert!(matches!(t.root_of_unity(5), Err(Error::OrderNotDividing { m: 5, .. })));
        assert_eq!(t.root_of_unity(1).unwrap(), FElem::ONE);
        for q in [3u64, 4, 5] {
            let t = tower(q);
            let n = t.group_order() as u64;
            for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
                assert_eq!(t.multiplicative_order(t.root_of_unity(m).unwrap()), Some(m));
            }
        }
    }

    #[test]
    fn roots_of_sample_polynomials() {
        let t = tower(3);
        // X^2 - 1
        let r = t.univariate_roots(&[t.neg(FElem::ONE), FElem::ZERO, FElem::ONE]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&FElem::ONE) && r.contains(&t.neg(FElem::ONE)));
        // X^4 + X + 1, the t = 1 instance of t X^(q+1) + t^(q^2+1) X + 1
        let r = t
            .univariate_roots(&[FElem::ONE, FElem::ONE, FElem::ZERO, FElem::ZERO, FElem::ONE])
            .unwrap();
        assert_eq!(r.len(), 4);
        for &e in &r {
            assert_eq!(t.pow(e, 13), FElem::ONE);
        }
        // X^7 - eps for a 13th root of unity eps
        let eps = t.root_of_unity(13).unwrap();
        let mut c = vec![FElem::ZERO; 8];
        c[0] = t.neg(eps);
        c[7] = FElem::ONE;
        assert_eq!(t.univariate_roots(&c).unwrap().len(), 7);
        assert!(matches!(t.univariate_roots(&[FElem::ZERO]), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn coefficients_round_trip_and_linearity() {
        let t = tower(4);
        for x in t.elements() {
            assert_eq!(t.from_coefficients(&t.coefficients(x)), x);
        }
        assert_eq!(t.coefficients(t.primitive())[1], 1);
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u32..729, b in 0u32..729, c in 0u32..729) {
            let t = tower(3);
            let (a, b, c) = (FElem(a), FElem(b), FElem(c));
            prop_assert_eq!(t.add(a, b), t.add(b, a));
            prop_assert_eq!(t.add(t.add(a, b), c), t.add(a, t.add(b, c)));
            prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
            prop_assert_eq!(t.sub(t.add(a, b), b), a);
            if !a.is_zero() {
                prop_assert_eq!(t.mul(a, t.inv(a)), FElem::ONE);
            }
        }

        #[test]
        fn addition_matches_coefficient_addition(a in 0u32..4096, b in 0u32..4096) {
            let t = tower(4);
            let (a, b) = (FElem(a), FElem(b));
            let ca = t.coefficients(a);
            let cb = t.coefficients(b);
            let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 2).collect();
            prop_assert_eq!(t.from_coefficients(&sum), t.add(a, b));
        }

        #[test]
        fn roots_agree_with_evaluation(c0 in 0u32..729, c1 in 0u32..729, c2 in 1u32..729) {
            let t = tower(3);
            let poly = [FElem(c0), FElem(c1), FElem(c2)];
            let roots = t.univariate_roots(&poly).unwrap();
            let brute: Vec<FElem> = t.elements().filter(|&x| {
                let v = t.add(t.add(t.mul(FElem(c2), t.mul(x, x)), t.mul(FElem(c1), x)), FElem(c0));
                v.is_zero()
            }).collect();
            prop_assert_eq!(roots, brute);
        }
    }
}
