use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Monomial, Poly, Rational, Variable};

/// Evaluates `p` at the point given by `value`.
pub fn evaluate<V: Variable>(p: &Poly<V>, value: &dyn Fn(&V) -> Rational) -> Rational {
    let mut cache: BTreeMap<V, Rational> = BTreeMap::new();
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.pairs() {
            let base = cache.entry(v.clone()).or_insert_with(|| value(v)).clone();
            t *= num_traits::pow(base, *e as usize);
        }
        acc += t;
    }
    acc
}

/// Substitutes values for every variable below `x`; variables `>= x` stay symbolic.
/// `value` is only consulted for variables below `x`.
pub fn evaluate_below<V: Variable>(p: &Poly<V>, x: &V, value: &dyn Fn(&V) -> Rational) -> Poly<V> {
    Poly::from_terms(p.terms().iter().map(|(m, c)| {
        let mut coeff = c.clone();
        let mut keep = Vec::new();
        for (v, e) in m.pairs() {
            if v < x {
                coeff *= num_traits::pow(value(v), *e as usize);
            } else {
                keep.push((v.clone(), *e));
            }
        }
        (Monomial::from_pairs(keep), coeff)
    }))
}

/// Arithmetic in the prime field `F_p` for `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31));
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Image of an integer.
    pub fn int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Image of a rational, `None` when the denominator vanishes.
    pub fn rat(&self, r: &Rational) -> Option<u64> {
        let d = self.int(r.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.int(r.numer()), self.inv(d)))
    }
}

/// Evaluates `p` over `F_p`; `None` if a coefficient denominator vanishes mod p.
pub fn evaluate_mod<V: Variable>(p: &Poly<V>, f: Fp, value: &dyn Fn(&V) -> u64) -> Option<u64> {
    let mut acc = 0;
    for (m, c) in p.terms() {
        let mut t = f.rat(c)?;
        for (v, e) in m.pairs() {
            t = f.mul(t, f.pow(value(v) % f.p, *e as u64));
        }
        acc = f.add(acc, t);
    }
    Some(acc)
}
