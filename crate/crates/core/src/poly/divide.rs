use super::{Monomial, Poly, Variable};

/// Result of a sparse pseudo-division: `multiplier * p = quotient * q + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision<V: Variable> {
    pub multiplier: Poly<V>,
    pub quotient: Poly<V>,
    pub remainder: Poly<V>,
}

/// Pseudo-divides `p` by `q` as univariate polynomials in `x`.
///
/// The initial of `q` is only multiplied in when a step cannot be done by
/// exact division, so the multiplier divides a power of `init(q)`.
///
/// # Panics
/// If `q` is zero or does not involve `x`.
pub fn pseudo_divide<V: Variable>(p: &Poly<V>, q: &Poly<V>, x: &V) -> PseudoDivision<V> {
    let dq = q.degree(x);
    assert!(!q.is_zero(), "pseudo-division by zero");
    assert!(dq > 0, "divisor does not involve the variable");
    let qc = q.coefficients(x);
    let lc = &qc[dq as usize];
    let lc_const = lc.constant_value();
    let mut m = Poly::one();
    let mut quo = Poly::zero();
    let mut r = p.clone();
    loop {
        let dr = r.degree(x);
        if r.is_zero() || dr < dq {
            break;
        }
        let lr = r.coefficient(x, dr);
        let shift = Monomial::var(x.clone(), dr - dq);
        let exact = match &lc_const {
            Some(c) => Some(lr.scale(&c.recip())),
            None => lr.div_exact(lc),
        };
        match exact {
            Some(t) => {
                let t = t.mul_monomial(&shift);
                r = &r - &(&t * q);
                quo = &quo + &t;
            }
            None => {
                let t = lr.mul_monomial(&shift);
                r = &(lc * &r) - &(&t * q);
                quo = &(lc * &quo) + &t;
                m = &m * lc;
            }
        }
    }
    PseudoDivision { multiplier: m, quotient: quo, remainder: r }
}

/// Sparse pseudo-remainder of `p` by `q` in `x`.
pub fn prem<V: Variable>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Poly<V> {
    pseudo_divide(p, q, x).remainder
}

/// Pseudo-quotient matching [`prem`].
pub fn pquo<V: Variable>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Poly<V> {
    pseudo_divide(p, q, x).quotient
}

/// The factor `m` with `m·p = pquo·q + prem`.
pub fn prem_multiplier<V: Variable>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Poly<V> {
    pseudo_divide(p, q, x).multiplier
}
