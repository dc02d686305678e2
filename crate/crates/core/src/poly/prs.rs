//! Subresultant polynomial remainder sequences.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use parking_lot::RwLock;

use super::{pseudo_divide, Poly, Variable};

/// Regular subresultants of `p` and `q` with respect to `x`, indexed by degree.
#[derive(Clone, Debug)]
pub struct PrsResult<V: Variable> {
    pub x: V,
    pub dp: u32,
    pub dq: u32,
    /// `prs[i]` for `0 <= i <= dp`; zero where no regular subresultant of degree `i` exists.
    pub prs: Vec<Poly<V>>,
    /// `res[i]` for `0 <= i <= dp`.
    pub res: Vec<Poly<V>>,
}

impl<V: Variable> PrsResult<V> {
    pub fn prs(&self, i: u32) -> &Poly<V> {
        &self.prs[i as usize]
    }

    pub fn res(&self, i: u32) -> &Poly<V> {
        &self.res[i as usize]
    }
}

/// Computes the regular subresultants of `p` and `q` in `x`.
///
/// Conventions: `PRS_dp = p`, `PRS_dq = q`, `PRS_i = 0` strictly between,
/// `res_dp = 1`, `res_i = init(PRS_i)` otherwise and `res_0 = PRS_0`.
/// If `q` does not involve `x` then `PRS_0 = q`; if `q = 0` every `res_i` with `i < dp` vanishes.
///
/// # Panics
/// If `deg_x(p) <= deg_x(q)`.
pub fn subresultant_prs<V: Variable>(p: &Poly<V>, q: &Poly<V>, x: &V) -> PrsResult<V> {
    let dp = p.degree(x);
    let dq = if q.is_zero() { 0 } else { q.degree(x) };
    assert!(dp > dq || (dp > 0 && q.is_zero()), "subresultant_prs needs deg(p) > deg(q)");
    let n = dp as usize;
    let mut prs = vec![Poly::zero(); n + 1];
    let mut res = vec![Poly::zero(); n + 1];
    prs[n] = p.clone();
    res[n] = Poly::one();
    if q.is_zero() {
        return PrsResult { x: x.clone(), dp, dq, prs, res };
    }
    prs[dq as usize] = q.clone();
    if dq == 0 {
        res[0] = q.clone();
        return PrsResult { x: x.clone(), dp, dq, prs, res };
    }
    res[dq as usize] = q.coefficient(x, dq);
    let sres = signed_subresultants(p, q, x);
    for j in 0..dq as usize {
        let s = &sres[j];
        if s.is_zero() || s.degree(x) as usize != j {
            continue;
        }
        // Sylvester subresultant = eps_{dp-j} * signed subresultant
        let k = n - j;
        let s = if (k * (k - 1) / 2) % 2 == 1 { -s } else { s.clone() };
        res[j] = if j == 0 { s.clone() } else { s.coefficient(x, j as u32) };
        prs[j] = s;
    }
    PrsResult { x: x.clone(), dp, dq, prs, res }
}

/// `Rem(c·a, b)` computed inside the polynomial ring and divided exactly by `den`.
fn scaled_rem<V: Variable>(c: &Poly<V>, a: &Poly<V>, b: &Poly<V>, den: &Poly<V>, x: &V) -> Poly<V> {
    let d = pseudo_divide(a, b, x);
    let num = c * &d.remainder;
    let den = &d.multiplier * den;
    num.div_exact(&den).expect("subresultant division must be exact")
}

/// Signed subresultant sequence (indices `0..=deg p`), zero where it vanishes.
fn signed_subresultants<V: Variable>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Vec<Poly<V>> {
    let pd = p.degree(x) as i64;
    let n = pd as usize;
    let mut sres = vec![Poly::zero(); n + 1];
    let mut s = vec![Poly::zero(); n + 1];
    let mut t = vec![Poly::zero(); n + 1];
    let lc = |f: &Poly<V>| f.coefficient(x, f.degree(x));
    sres[n] = p.clone();
    s[n] = Poly::one();
    t[n] = Poly::one();
    sres[n - 1] = q.clone();
    t[n - 1] = lc(q);
    let mut i = pd + 1;
    let mut j = pd;
    while j >= 1 && !sres[(j - 1) as usize].is_zero() {
        let ju = j as usize;
        let k = sres[ju - 1].degree(x) as i64;
        let ku = k as usize;
        let iu = i as usize;
        if k == j - 1 {
            s[ju - 1] = t[ju - 1].clone();
            if k >= 1 {
                let c = &s[ju - 1] * &s[ju - 1];
                let den = &s[ju] * &t[iu - 1];
                sres[ku - 1] = -scaled_rem(&c, &sres[iu - 1], &sres[ju - 1], &den, x);
            }
        } else {
            s[ju - 1] = Poly::zero();
            for delta in 1..=(j - k - 1) {
                let du = delta as usize;
                let num = &t[ju - 1] * &t[ju - du];
                let mut v = num.div_exact(&s[ju]).expect("exact");
                if delta % 2 == 1 {
                    v = -v;
                }
                t[ju - du - 1] = v;
            }
            s[ku] = t[ku].clone();
            sres[ku] = (&s[ku] * &sres[ju - 1]).div_exact(&t[ju - 1]).expect("exact");
            for l in (k + 1)..=(j - 2) {
                sres[l as usize] = Poly::zero();
                s[l as usize] = Poly::zero();
            }
            if k >= 1 {
                let c = &t[ju - 1] * &s[ku];
                let den = &s[ju] * &t[iu - 1];
                sres[ku - 1] = -scaled_rem(&c, &sres[iu - 1], &sres[ju - 1], &den, x);
            }
        }
        if k == 0 {
            j = 0;
            break;
        }
        t[ku - 1] = if sres[ku - 1].is_zero() { Poly::zero() } else { lc(&sres[ku - 1]) };
        i = j;
        j = k;
    }
    for l in 0..(j - 1).max(0) as usize {
        sres[l] = Poly::zero();
    }
    sres
}

type PrsKey<V> = (Poly<V>, Poly<V>, V);

/// Shared memo table for [`subresultant_prs`]. Entries are immutable once stored.
pub struct PrsCache<V: Variable> {
    map: RwLock<HashMap<PrsKey<V>, Arc<PrsResult<V>>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl<V: Variable> Default for PrsCache<V> {
    fn default() -> Self {
        PrsCache { map: RwLock::new(HashMap::new()), hits: AtomicU64::new(0), misses: AtomicU64::new(0) }
    }
}

impl<V: Variable> PrsCache<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: &Poly<V>, q: &Poly<V>, x: &V) -> Arc<PrsResult<V>> {
        let key = (p.clone(), q.clone(), x.clone());
        if let Some(r) = self.map.read().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return r.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let r = Arc::new(subresultant_prs(p, q, x));
        self.map.write().entry(key).or_insert(r).clone()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
