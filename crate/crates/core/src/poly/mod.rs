//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are any totally ordered type; the order of the variable type is
//! the ranking. Terms are kept sorted by the lexicographic order induced by
//! the ranking, so the first term always carries the leader at its main degree.

mod divide;
mod eval;
mod factor;
mod gcd;
mod parse;
mod prs;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use divide::{pquo, prem, prem_multiplier, pseudo_divide, PseudoDivision};
pub use eval::{evaluate, evaluate_below, evaluate_mod, Fp};
pub use factor::{factor, squarefree_decomposition, squarefree_part_rational, Factorization};
pub use gcd::{content_free, content_in, gcd, normalize_sign, primitive_rational};
pub use parse::{parse_poly, parse_poly_prefix, ParseError};
pub use prs::{subresultant_prs, PrsCache, PrsResult};

pub type Rational = BigRational;

/// Anything usable as a polynomial variable. Its `Ord` is the ranking.
pub trait Variable: Clone + Ord + Eq + Hash + fmt::Debug + Send + Sync + 'static {}
impl<T: Clone + Ord + Eq + Hash + fmt::Debug + Send + Sync + 'static> Variable for T {}

/// A power product, stored ascending by variable with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V>(Vec<(V, u32)>);

impl<V: Variable> Monomial<V> {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: V, e: u32) -> Self {
        if e == 0 {
            Monomial(Vec::new())
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(V, u32)>) -> Self {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(V, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|p| p.1 > 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(V, u32)] {
        &self.0
    }

    pub fn degree(&self, v: &V) -> u32 {
        match self.0.binary_search_by(|p| p.0.cmp(v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    /// Largest variable with its exponent.
    pub fn top(&self) -> Option<&(V, u32)> {
        self.0.last()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    out.push((v.clone(), e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *v {
                return None;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Drops `v` from the monomial, returning its former exponent.
    fn without(&self, v: &V) -> (Self, u32) {
        match self.0.binary_search_by(|p| p.0.cmp(v)) {
            Ok(i) => {
                let mut m = self.0.clone();
                let (_, e) = m.remove(i);
                (Monomial(m), e)
            }
            Err(_) => (self.clone(), 0),
        }
    }
}

impl<V: Variable> Ord for Monomial<V> {
    /// Lexicographic with respect to the ranking: compare from the largest variable down.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    o => return o,
                },
            }
        }
    }
}

impl<V: Variable> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact sparse polynomial. Terms are sorted descending and never zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Poly<V: Variable> {
    terms: Vec<(Monomial<V>, Rational)>,
}

impl<V: Variable> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Variable> Poly<V> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: V) -> Self {
        Self::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn var_pow(v: V, e: u32) -> Self {
        Self::monomial(Monomial::var(v, e), Rational::one())
    }

    pub fn monomial(m: Monomial<V>, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, Rational)>>(it: I) -> Self {
        let mut map: BTreeMap<Monomial<V>, Rational> = BTreeMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(e) => *e += c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { terms }
    }

    /// Terms, largest first.
    pub fn terms(&self) -> &[(Monomial<V>, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Largest variable occurring, `None` for constants.
    pub fn leader(&self) -> Option<&V> {
        self.terms.first().and_then(|t| t.0.top()).map(|p| &p.0)
    }

    /// Degree in the leader, 0 for constants.
    pub fn mdeg(&self) -> u32 {
        self.terms.first().and_then(|t| t.0.top()).map(|p| p.1).unwrap_or(0)
    }

    pub fn degree(&self, v: &V) -> u32 {
        if let Some(l) = self.leader() {
            if l == v {
                return self.mdeg();
            }
            if l < v {
                return 0;
            }
        }
        self.terms.iter().map(|t| t.0.degree(v)).max().unwrap_or(0)
    }

    /// Coefficient of the lexicographically largest term.
    pub fn leading_coefficient(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn variables(&self) -> BTreeSet<V> {
        let mut s = BTreeSet::new();
        for (m, _) in &self.terms {
            for (v, _) in m.pairs() {
                s.insert(v.clone());
            }
        }
        s
    }

    pub fn involves(&self, v: &V) -> bool {
        self.terms.iter().any(|t| t.0.degree(v) > 0)
    }

    /// Dense coefficient list in `v`: entry `k` is the coefficient of `v^k`.
    pub fn coefficients(&self, v: &V) -> Vec<Poly<V>> {
        let d = self.degree(v) as usize;
        let mut buckets: Vec<Vec<(Monomial<V>, Rational)>> = vec![Vec::new(); d + 1];
        let is_leader = self.leader() == Some(v);
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| {
                if is_leader {
                    // stripping the top variable keeps the order within a bucket
                    Poly { terms: b }
                } else {
                    Poly::from_terms(b)
                }
            })
            .collect()
    }

    /// Coefficient of `v^k`.
    pub fn coefficient(&self, v: &V, k: u32) -> Poly<V> {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|t| t.0.degree(v) == k)
            .map(|t| (t.0.without(v).0, t.1.clone()))
            .collect();
        if self.leader() == Some(v) {
            Poly { terms }
        } else {
            Poly::from_terms(terms)
        }
    }

    /// Inverse of [`Poly::coefficients`].
    pub fn from_coefficients(v: &V, coeffs: &[Poly<V>]) -> Self {
        if coeffs.iter().all(|c| c.leader().map_or(true, |l| l < v)) {
            let mut terms = Vec::new();
            for (k, c) in coeffs.iter().enumerate().rev() {
                let m = Monomial::var(v.clone(), k as u32);
                terms.extend(c.terms.iter().map(|(n, c)| (n.mul(&m), c.clone())));
            }
            return Poly { terms };
        }
        let mut acc = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &c.mul_monomial(&Monomial::var(v.clone(), k as u32));
            }
        }
        acc
    }

    /// The initial: coefficient of the leader at its main degree.
    pub fn init(&self) -> Poly<V> {
        match self.leader() {
            None => self.clone(),
            Some(x) => {
                let d = self.mdeg();
                let x = x.clone();
                let terms = self
                    .terms
                    .iter()
                    .take_while(|t| t.0.top().map(|p| p.0 == x && p.1 == d).unwrap_or(false))
                    .map(|t| (t.0.without(&x).0, t.1.clone()))
                    .collect();
                Poly { terms }
            }
        }
    }

    /// `self - init(self) * ld^mdeg`.
    pub fn tail(&self) -> Poly<V> {
        match self.leader() {
            None => Poly::zero(),
            Some(x) => {
                let d = self.mdeg();
                let x = x.clone();
                let terms = self
                    .terms
                    .iter()
                    .skip_while(|t| t.0.top().map(|p| p.0 == x && p.1 == d).unwrap_or(false))
                    .cloned()
                    .collect();
                Poly { terms }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly<V> {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (m.clone(), rmul(d, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>) -> Poly<V> {
        Poly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly<V> {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: &V) -> Poly<V> {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.degree(v);
            if e == 0 {
                return None;
            }
            let (rest, _) = m.without(v);
            let m2 = rest.mul(&Monomial::var(v.clone(), e - 1));
            Some((m2, c * Rational::from_integer(BigInt::from(e))))
        });
        Poly::from_terms(terms)
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: &V, value: &Poly<V>) -> Poly<V> {
        let coeffs = self.coefficients(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Renames variables through `f`; the result is re-sorted for the new ranking.
    pub fn map_vars<W: Variable, F: FnMut(&V) -> W>(&self, mut f: F) -> Poly<W> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m.pairs().iter().map(|(v, e)| (f(v), *e)).collect();
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly<V>) -> Option<Poly<V>> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let x = d.leader().unwrap().clone();
        let top = self.leader()?.clone();
        if top > x {
            // d is free of the top variable: divide coefficient by coefficient
            let cs: Option<Vec<Poly<V>>> = self.coefficients(&top).iter().map(|c| c.div_exact(d)).collect();
            return Some(Poly::from_coefficients(&top, &cs?));
        }
        let dd = d.degree(&x) as usize;
        let mut a = self.coefficients(&x);
        if a.len() <= dd {
            return None;
        }
        let dc = d.coefficients(&x);
        let mut q = vec![Poly::zero(); a.len() - dd];
        for k in (0..q.len()).rev() {
            if a[k + dd].is_zero() {
                continue;
            }
            let qk = a[k + dd].div_exact(&dc[dd])?;
            for (j, c) in dc.iter().enumerate().take(dd) {
                if !c.is_zero() {
                    a[k + j] = &a[k + j] - &(&qk * c);
                }
            }
            q[k] = qk;
        }
        if a[..dd].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coefficients(&x, &q))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_integer())
    }

    /// Maximum absolute value of numerators and denominators; a size measure.
    pub fn height_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.1.numer().bits().max(t.1.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_negative_leading(&self) -> bool {
        self.terms.first().map(|t| t.1.is_negative()).unwrap_or(false)
    }
}

fn rmul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn radd(a: &Rational, b: &Rational, negate_b: bool) -> Rational {
    match (a.is_integer() && b.is_integer(), negate_b) {
        (true, false) => Rational::from_integer(a.numer() + b.numer()),
        (true, true) => Rational::from_integer(a.numer() - b.numer()),
        (false, false) => a + b,
        (false, true) => a - b,
    }
}

fn merge<V: Variable>(a: &[(Monomial<V>, Rational)], b: &[(Monomial<V>, Rational)], negate_b: bool) -> Vec<(Monomial<V>, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = radd(&a[i].1, &b[j].1, negate_b);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -t.1.clone() } else { t.1.clone() };
        out.push((t.0.clone(), c));
    }
    out
}

impl<'a, V: Variable> Add<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        Poly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<'a, V: Variable> Sub<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        Poly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl<'a, V: Variable> Mul<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), rmul(d, c))).collect() };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        if self.is_integral() && rhs.is_integral() {
            let mut map: BTreeMap<Monomial<V>, BigInt> = BTreeMap::new();
            for (ma, ca) in &self.terms {
                for (mb, cb) in &rhs.terms {
                    let c = ca.numer() * cb.numer();
                    match map.entry(ma.mul(mb)) {
                        Entry::Occupied(mut e) => *e.get_mut() += c,
                        Entry::Vacant(e) => {
                            e.insert(c);
                        }
                    }
                }
            }
            let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Rational::from_integer(c)));
            return Poly { terms: terms.collect() };
        }
        let mut map: BTreeMap<Monomial<V>, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Poly { terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<V: Variable> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Poly<V>) -> Poly<V> {
        &self + &rhs
    }
}

impl<V: Variable> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        &self - &rhs
    }
}

impl<V: Variable> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

impl<V: Variable> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<'a, V: Variable> Neg for &'a Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

/// Formats a polynomial with a caller-supplied variable printer, in the input grammar.
pub fn format_poly<V: Variable>(p: &Poly<V>, name: &dyn Fn(&V) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !a.is_one() || m.is_one() {
            factors.push(if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) });
        }
        for (v, e) in m.pairs().iter().rev() {
            if *e == 1 {
                factors.push(name(v));
            } else {
                factors.push(format!("{}^{}", name(v), e));
            }
        }
        s.push_str(&factors.join("*"));
    }
    s
}

impl<V: Variable + fmt::Display> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self, &|v: &V| v.to_string()))
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
