//! Polynomials over F_p: flat multivariate images and dense univariates.

use crate::algebraic::Var;
use crate::poly::{Fp, Poly};

/// Image of a polynomial mod p with exponent vectors over `n` variables.
#[derive(Clone, Debug)]
pub struct ModPoly {
    terms: Vec<(u64, Vec<u32>)>,
    max_deg: u32,
}

impl ModPoly {
    /// `None` when a coefficient denominator vanishes mod p.
    pub fn new(p: &Poly<Var>, n: usize, f: Fp) -> Option<Self> {
        let mut terms = Vec::new();
        let mut max_deg = 0;
        for (m, c) in p.terms() {
            let c = f.rat(c)?;
            if c == 0 {
                continue;
            }
            let mut e = vec![0; n];
            for (v, k) in m.pairs() {
                e[v.0 as usize] = *k;
                max_deg = max_deg.max(*k);
            }
            terms.push((c, e));
        }
        Some(ModPoly { terms, max_deg })
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    /// Univariate in variable `top` after substituting the powers in `pows` for
    /// every other variable. Exponents of variables above `top` must vanish.
    pub fn specialize(&self, f: Fp, pows: &[Vec<u64>], top: usize) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for (c, e) in &self.terms {
            let mut t = *c;
            for (k, &ek) in e.iter().enumerate() {
                if k != top && ek > 0 {
                    debug_assert!(k < top, "variable above the top");
                    t = f.mul(t, pows[k][ek as usize]);
                }
            }
            let d = e.get(top).copied().unwrap_or(0) as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] = f.add(out[d], t);
        }
        trim(&mut out);
        out
    }
}

/// Power tables `pows[k][e] = a_k^e` for `e <= max_deg`.
pub fn power_table(f: Fp, point: &[u64], max_deg: u32) -> Vec<Vec<u64>> {
    point
        .iter()
        .map(|&a| {
            let mut row = Vec::with_capacity(max_deg as usize + 1);
            let mut acc = 1 % f.p;
            for _ in 0..=max_deg {
                row.push(acc);
                acc = f.mul(acc, a);
            }
            row
        })
        .collect()
}

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub fn deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn eval(f: Fp, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn monic(f: Fp, a: &[u64]) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = f.inv(lc);
            a.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

/// Quotient and remainder.
pub fn divrem(f: Fp, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = f.inv(*b.last().unwrap());
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), inv);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        trim(&mut r);
    }
    (q, r)
}

pub fn gcd(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn mul(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

pub fn derivative(f: Fp, a: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, i as u64 % f.p)).collect();
    trim(&mut out);
    out
}

/// Monic polynomial whose roots in the algebraic closure are the distinct roots of `a`.
/// Valid for `deg(a) < p`.
pub fn radical(f: Fp, a: &[u64]) -> Vec<u64> {
    let g = gcd(f, a, &derivative(f, a));
    monic(f, &divrem(f, a, &g).0)
}

/// A subset of the algebraic closure of F_p cut out by univariate conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberSet {
    /// The distinct roots of a monic square-free polynomial (`[1]` is empty).
    Finite(Vec<u64>),
    /// Everything except the roots of a monic square-free polynomial.
    Cofinite(Vec<u64>),
}

impl FiberSet {
    pub fn everything() -> Self {
        FiberSet::Cofinite(vec![1])
    }

    pub fn empty() -> Self {
        FiberSet::Finite(vec![1])
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, FiberSet::Finite(g) if g.len() == 1)
    }

    pub fn intersect(&self, other: &FiberSet, f: Fp) -> FiberSet {
        use FiberSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(gcd(f, a, b)),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => {
                let g = gcd(f, a, b);
                Finite(monic(f, &divrem(f, a, &g).0))
            }
            (Cofinite(a), Cofinite(b)) => Cofinite(lcm(f, a, b)),
        }
    }

    pub fn union(&self, other: &FiberSet, f: Fp) -> FiberSet {
        use FiberSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(lcm(f, a, b)),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => {
                let g = gcd(f, a, b);
                Cofinite(monic(f, &divrem(f, b, &g).0))
            }
            (Cofinite(a), Cofinite(b)) => Cofinite(gcd(f, a, b)),
        }
    }

    /// Number of points, `None` if infinite.
    pub fn size(&self) -> Option<usize> {
        match self {
            FiberSet::Finite(g) => Some(g.len() - 1),
            FiberSet::Cofinite(_) => None,
        }
    }

    pub fn contains(&self, f: Fp, x: u64) -> bool {
        match self {
            FiberSet::Finite(g) => eval(f, g, x) == 0,
            FiberSet::Cofinite(g) => eval(f, g, x) != 0,
        }
    }
}

fn lcm(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let g = gcd(f, a, b);
    monic(f, &mul(f, &divrem(f, a, &g).0, b))
}

/// Condition imposed on the top variable by `u = 0` (equation) or `u <> 0`.
pub fn relation_fiber(f: Fp, u: &[u64], equation: bool) -> FiberSet {
    match (equation, deg(u)) {
        (true, None) => FiberSet::everything(),
        (true, Some(0)) => FiberSet::empty(),
        (true, Some(_)) => FiberSet::Finite(radical(f, u)),
        (false, None) => FiberSet::empty(),
        (false, Some(0)) => FiberSet::everything(),
        (false, Some(_)) => FiberSet::Cofinite(radical(f, u)),
    }
}
