//! Multivariate gcd over the rationals and content handling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{prem, subresultant_prs, Poly, Rational, Variable};

/// Splits `p` as `c * pp` with `c` rational and `pp` integral primitive with a
/// positive leading coefficient.
pub fn primitive_rational<V: Variable>(p: &Poly<V>) -> (Rational, Poly<V>) {
    if p.is_zero() {
        return (Rational::zero(), Poly::zero());
    }
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    let mut content = Rational::new(num, den);
    if p.is_negative_leading() {
        content = -content;
    }
    let prim = p.scale(&content.recip());
    (content, prim)
}

/// Multiplies by -1 if needed so the leading coefficient is positive.
pub fn normalize_sign<V: Variable>(p: &Poly<V>) -> Poly<V> {
    if p.is_negative_leading() {
        -p
    } else {
        p.clone()
    }
}

fn unit_normal<V: Variable>(p: &Poly<V>) -> Poly<V> {
    let (_, mut q) = primitive_rational(p);
    if q.is_negative_leading() {
        q = -q;
    }
    q
}

/// Gcd of the coefficients of `p` viewed as univariate in `x`, normalized.
pub fn content_in<V: Variable>(p: &Poly<V>, x: &V) -> Poly<V> {
    let mut g = Poly::zero();
    for c in p.coefficients(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

/// Greatest common divisor, integral primitive with positive leading coefficient.
pub fn gcd<V: Variable>(a: &Poly<V>, b: &Poly<V>) -> Poly<V> {
    if a.is_zero() {
        return unit_normal(b);
    }
    if b.is_zero() {
        return unit_normal(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return unit_normal(a);
    }
    let la = a.leader().unwrap().clone();
    let lb = b.leader().unwrap().clone();
    let x = if la > lb { la } else { lb };
    let da = a.degree(&x);
    let db = b.degree(&x);
    if da == 0 {
        return gcd(a, &content_in(b, &x));
    }
    if db == 0 {
        return gcd(&content_in(a, &x), b);
    }
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let gc = gcd(&ca, &cb);
    let (f, g) = if da >= db { (pa, pb) } else { (pb, pa) };
    let (f, g) = if f.degree(&x) == g.degree(&x) {
        let r = prem(&f, &g, &x);
        if r.is_zero() {
            return unit_normal(&(&gc * &g));
        }
        (g, r)
    } else {
        (f, g)
    };
    let s = subresultant_prs(&f, &g, &x);
    let i = (0..=s.dq).find(|&i| !s.res(i).is_zero()).expect("q itself is regular");
    let g = if i == 0 { Poly::one() } else { primitive_in(s.prs(i), &x) };
    unit_normal(&(&gc * &g))
}

fn primitive_in<V: Variable>(p: &Poly<V>, x: &V) -> Poly<V> {
    let c = content_in(p, x);
    let q = p.div_exact(&c).expect("content divides");
    unit_normal(&q)
}

/// Divides out the content in the leader and the rational content, then normalizes the sign.
///
/// Only valid as a solution-set-preserving step when the removed content is known to be
/// nonzero, which is the case once the initial is protected by an inequation.
pub fn content_free<V: Variable>(p: &Poly<V>) -> Poly<V> {
    assert!(!p.is_zero(), "content_free of zero");
    match p.leader() {
        None => Poly::one(),
        Some(x) => primitive_in(p, &x.clone()),
    }
}
