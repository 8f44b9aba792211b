//! F_(q^2) as a stand-alone table field for the code engines.
//!
//! Elements are `u8` holding the base-p digits of the coefficient vector, so
//! in characteristic 2 addition is XOR. The field is defined by its own
//! Conway polynomial; Conway compatibility makes `x ↦ g^((q^6-1)/(q^2-1))`
//! an embedding into the tower.

use crate::error::{Error, Result};
use crate::gftower::{add_packed, conway::conway_polynomial, pack, FElem, FieldTower};
use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallField {
    p: u32,
    degree: u32,
    order: usize,
    /// log -> element
    exp: Vec<u8>,
    /// element -> log (entry 0 unused)
    log: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// element -> tower element
    embed: Vec<FElem>,
    /// log of the tower element divided by this stride is the small log
    stride: u64,
}

impl SmallField {
    /// F_(q^2) together with its embedding into the given tower F_(q^6).
    pub fn for_tower(f: &FieldTower) -> Result<Self> {
        let pp = f.prime_power();
        let p = pp.p();
        let degree = 2 * pp.h();
        let order = p.pow(degree) as usize;
        if order > 256 {
            return Err(Error::BadParameter(format!(
                "code field of order {order} does not fit in a byte"
            )));
        }
        let modulus: Vec<u32> = conway_polynomial(p as u64, degree as usize)
            .into_iter()
            .map(|c| c as u32)
            .collect();
        let d = degree as usize;
        let group = order - 1;
        let mut exp = vec![0u8; group];
        let mut log = vec![0u32; order];
        let mut digits = vec![0u32; d];
        digits[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let packed = pack(&digits, p);
            *slot = packed as u8;
            log[packed as usize] = k as u32;
            let top = digits[d - 1];
            for i in (1..d).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for i in 0..d {
                    digits[i] = (digits[i] + (p - top) * modulus[i] % p) % p;
                }
            }
        }
        let mut add = vec![0u8; order * order];
        let mut mul = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                add[a * order + b] = add_packed(a as u32, b as u32, p, d) as u8;
                if a != 0 && b != 0 {
                    let l = (log[a] + log[b]) as usize % group;
                    mul[a * order + b] = exp[l];
                }
            }
        }
        let neg: Vec<u8> = (0..order)
            .map(|a| (0..order).find(|&b| add[a * order + b] == 0).unwrap() as u8)
            .collect();
        let mut inv = vec![0u8; order];
        for a in 1..order {
            inv[a] = exp[(group - log[a] as usize) % group];
        }
        let stride = f.group_order() as u64 / group as u64;
        let embed = (0..order)
            .map(|a| {
                if a == 0 {
                    FElem::ZERO
                } else {
                    f.from_log(log[a] as u64 * stride)
                }
            })
            .collect();
        Ok(SmallField {
            p,
            degree,
            order,
            exp,
            log,
            add,
            mul,
            neg,
            inv,
            embed,
            stride,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of elements, q^2.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn primitive(&self) -> u8 {
        self.exp[1 % self.exp.len()]
    }

    pub fn from_log(&self, k: usize) -> u8 {
        self.exp[k % self.exp.len()]
    }

    pub fn log(&self, a: u8) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.order as u8
    }

    #[inline]
    pub fn add_elems(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn mul_elems(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn to_tower(&self, a: u8) -> FElem {
        self.embed[a as usize]
    }

    /// `None` when the tower element is outside F_(q^2).
    pub fn from_tower(&self, f: &FieldTower, x: FElem) -> Option<u8> {
        if x.is_zero() {
            return Some(0);
        }
        let l = f.log(x)? as u64;
        l.is_multiple_of(self.stride).then(|| self.exp[(l / self.stride) as usize])
    }

    /// Base-p digits of an element (little-endian).
    pub fn digits(&self, a: u8) -> Vec<u32> {
        let mut v = a as u32;
        (0..self.degree)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }
}

impl Field for SmallField {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        1
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        self.add_elems(a, b)
    }

    fn sub(&self, a: u8, b: u8) -> u8 {
        self.add_elems(a, self.neg[b as usize])
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul_elems(a, b)
    }

    fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gftower::PrimePower;

    fn pair(q: u64) -> (FieldTower, SmallField) {
        let f = FieldTower::build(PrimePower::from_q(q).unwrap()).unwrap();
        let s = SmallField::for_tower(&f).unwrap();
        (f, s)
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        for q in [3, 4, 5] {
            let (f, s) = pair(q);
            for a in s.elements() {
                assert_eq!(s.from_tower(&f, s.to_tower(a)), Some(a));
                for b in s.elements() {
                    assert_eq!(s.to_tower(s.add_elems(a, b)), f.add(s.to_tower(a), s.to_tower(b)));
                    assert_eq!(s.to_tower(s.mul_elems(a, b)), f.mul(s.to_tower(a), s.to_tower(b)));
                }
            }
        }
    }

    #[test]
    fn images_are_exactly_the_subfield() {
        let (f, s) = pair(3);
        let mut img: Vec<FElem> = s.elements().map(|a| s.to_tower(a)).collect();
        img.sort();
        let sub: Vec<FElem> = f.elements().filter(|&x| f.in_subfield(x, 2).unwrap()).collect();
        assert_eq!(img, sub);
        assert_eq!(s.from_tower(&f, f.primitive()), None);
    }

    #[test]
    fn characteristic_two_addition_is_xor() {
        let (_, s) = pair(4);
        for a in s.elements() {
            for b in s.elements() {
                assert_eq!(s.add_elems(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn inverses() {
        let (_, s) = pair(5);
        for a in s.elements().skip(1) {
            assert_eq!(s.mul_elems(a, s.inv(a)), 1);
            assert_eq!(s.add_elems(a, s.neg(a)), 0);
        }
    }
}
