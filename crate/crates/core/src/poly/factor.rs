//! Square-free decomposition and a light factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::{content_in, gcd, primitive_rational};
use super::{Poly, Rational, Variable};

/// `unit * prod(f^e) == p`, factors integral primitive with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<V: Variable> {
    pub unit: Rational,
    pub factors: Vec<(Poly<V>, u32)>,
}

impl<V: Variable> Factorization<V> {
    pub fn expand(&self) -> Poly<V> {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    fn push(&mut self, f: Poly<V>, e: u32) {
        if let Some(c) = f.constant_value() {
            self.unit *= num_traits::pow(c, e as usize);
            return;
        }
        let (c, f) = primitive_rational(&f);
        self.unit *= num_traits::pow(c, e as usize);
        match self.factors.iter_mut().find(|(g, _)| *g == f) {
            Some(slot) => slot.1 += e,
            None => self.factors.push((f, e)),
        }
    }
}

/// Yun's algorithm on a polynomial primitive in `x`: returns `(a_i, i)` with `p ~ prod a_i^i`.
pub fn squarefree_decomposition<V: Variable>(p: &Poly<V>, x: &V) -> Vec<(Poly<V>, u32)> {
    let mut out = Vec::new();
    if p.degree(x) == 0 {
        return out;
    }
    let dp = p.derivative(x);
    let a0 = gcd(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(x);
    let mut i = 1;
    while b.degree(x) > 0 {
        let a = gcd(&b, &d);
        if a.degree(x) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative(x);
        i += 1;
    }
    out
}

/// Removes repeated factors of `p` as a univariate in `x` over the field of
/// rational functions in the other variables. The content in `x` is dropped.
///
/// # Panics
/// If `p` does not involve `x`.
pub fn squarefree_part_rational<V: Variable>(p: &Poly<V>, x: &V) -> Poly<V> {
    assert!(p.degree(x) > 0, "squarefree part of a polynomial free of the variable");
    let c = content_in(p, x);
    let pp = p.div_exact(&c).expect("content divides");
    let g = gcd(&pp, &pp.derivative(x));
    let r = pp.div_exact(&g).expect("gcd divides");
    primitive_rational(&r).1
}

/// Square-free factorization over Q with recursive content extraction and
/// rational roots split off univariate factors.
///
/// # Panics
/// If `p` is constant.
pub fn factor<V: Variable>(p: &Poly<V>) -> Factorization<V> {
    assert!(!p.is_constant(), "factor of a constant");
    let mut out = Factorization { unit: Rational::one(), factors: Vec::new() };
    factor_into(p, 1, &mut out);
    out.factors.sort_by(|a, b| a.0.leader().cmp(&b.0.leader()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn factor_into<V: Variable>(p: &Poly<V>, mult: u32, out: &mut Factorization<V>) {
    let x = match p.leader() {
        None => {
            out.push(p.clone(), mult);
            return;
        }
        Some(x) => x.clone(),
    };
    let c = content_in(p, &x);
    let pp = p.div_exact(&c).expect("content divides");
    if c.is_constant() {
        out.push(c, mult);
    } else {
        factor_into(&c, mult, out);
    }
    let sqf = squarefree_decomposition(&pp, &x);
    let mut rest = pp.clone();
    for (a, e) in &sqf {
        rest = rest.div_exact(&a.pow(*e)).expect("square-free factor divides");
        for f in split_rational_roots(a, &x) {
            out.push(f, mult * e);
        }
    }
    // whatever is left is a rational constant
    out.push(rest, mult);
}

/// Splits linear factors `(den*x - num)` off a polynomial that only involves `x`.
fn split_rational_roots<V: Variable>(p: &Poly<V>, x: &V) -> Vec<Poly<V>> {
    if p.variables().len() != 1 || p.degree(x) < 2 {
        return vec![p.clone()];
    }
    let (_, prim) = primitive_rational(p);
    let coeffs: Vec<BigInt> = prim.coefficients(x).iter().map(|c| c.constant_value().unwrap().to_integer()).collect();
    let mut out = Vec::new();
    let mut rest = prim.clone();
    let mut coeffs = coeffs;
    // x = 0 root
    while coeffs.len() > 2 && coeffs[0].is_zero() {
        out.push(Poly::var(x.clone()));
        coeffs.remove(0);
        rest = rest.div_exact(&Poly::var(x.clone())).unwrap();
    }
    let lead = coeffs.last().unwrap().abs();
    let constant = coeffs[0].abs();
    let (Some(nums), Some(dens)) = (small_divisors(&constant), small_divisors(&lead)) else {
        out.push(rest);
        return out;
    };
    'outer: loop {
        if rest.degree(x) < 2 {
            break;
        }
        for n in &nums {
            for d in &dens {
                if n.gcd(d) != BigInt::one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = Rational::new(n * BigInt::from(sign), d.clone());
                    let v = super::evaluate(&rest, &|_: &V| r.clone());
                    if v.is_zero() {
                        let lin = &Poly::var(x.clone()).scale(&Rational::from_integer(d.clone()))
                            - &Poly::constant(Rational::from_integer(n * BigInt::from(sign)));
                        rest = rest.div_exact(&lin).expect("root gives a factor");
                        out.push(lin);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    out.push(rest);
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 || n > 1_000_000 {
        return None;
    }
    let mut v = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            v.push(BigInt::from(i));
            if i * i != n {
                v.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    v.sort();
    Some(v)
}
