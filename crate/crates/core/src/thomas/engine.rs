use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use parking_lot::{Condvar, Mutex};

use super::select::{select_index, selection_respects_axioms};
use super::{
    Decomposition, DecomposeError, Kind, Options, Relation, SimpleSystem, Stats, System, Theory,
};
use crate::poly::{
    content_free, content_in, factor, pquo, prem, primitive_rational, squarefree_part_rational,
    Poly, PrsCache, PrsResult, Rational,
};

type Sys<T> = System<<T as Theory>::Var, <T as Theory>::State>;
type P<T> = Poly<<T as Theory>::Var>;
type Rel<T> = Relation<<T as Theory>::Var>;

/// Runs the work-list loop for one theory. Holds the PRS cache and counters.
pub struct Engine<'t, T: Theory> {
    theory: &'t T,
    opts: Options,
    cache: PrsCache<T::Var>,
    steps: AtomicU64,
    splits: AtomicU64,
    discarded: AtomicU64,
    select_violations: AtomicU64,
    critical: Mutex<BTreeSet<BigInt>>,
}

impl<'t, T: Theory> Engine<'t, T> {
    pub fn new(theory: &'t T, opts: Options) -> Self {
        Engine {
            theory,
            opts,
            cache: PrsCache::new(),
            steps: AtomicU64::new(0),
            splits: AtomicU64::new(0),
            discarded: AtomicU64::new(0),
            select_violations: AtomicU64::new(0),
            critical: Mutex::new(BTreeSet::new()),
        }
    }

    pub fn options(&self) -> &Options {
        &self.opts
    }

    pub fn theory(&self) -> &T {
        self.theory
    }

    pub fn stats(&self) -> Stats {
        Stats {
            steps: self.steps.load(Ordering::Relaxed),
            splits: self.splits.load(Ordering::Relaxed),
            discarded: self.discarded.load(Ordering::Relaxed),
            prs_cache_hits: self.cache.hits(),
            prs_cache_misses: self.cache.misses(),
            select_violations: self.select_violations.load(Ordering::Relaxed),
        }
    }

    pub fn critical_constants(&self) -> Vec<BigInt> {
        self.critical.lock().iter().cloned().collect()
    }

    fn record(&self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let mut set = self.critical.lock();
        for n in [c.numer().abs(), c.denom().abs()] {
            if n > BigInt::one() {
                set.insert(n);
            }
        }
    }

    fn prs(&self, p: &P<T>, q: &P<T>, x: &T::Var) -> std::sync::Arc<PrsResult<T::Var>> {
        self.cache.get(p, q, x)
    }

    /// Reduces `p` modulo the equations of the candidate.
    pub fn reduce(&self, sys: &Sys<T>, p: &P<T>) -> P<T> {
        let mut p = self.normalize(p.clone());
        loop {
            let Some(x) = p.leader().cloned() else { return p };
            if let Some(r) = self.theory.reductor(sys, &x, p.mdeg()) {
                p = self.normalize(prem(&p, &r, &x));
                continue;
            }
            if self.opts.coeff_reduce {
                let q = self.reduce_coefficients(sys, &p, &x);
                if q.leader() != Some(&x) || q.mdeg() != p.mdeg() {
                    p = q;
                    continue;
                }
                p = q;
            }
            if self.reduce(sys, &p.init()).is_zero() {
                p = p.tail();
                continue;
            }
            return p;
        }
    }

    fn normalize(&self, p: P<T>) -> P<T> {
        if p.is_zero() {
            return p;
        }
        let (c, q) = primitive_rational(&p);
        self.record(&c);
        q
    }

    /// Pseudo-reduces the coefficients of `p` in descending order of the
    /// variables below `x` that have a reductor.
    fn reduce_coefficients(&self, sys: &Sys<T>, p: &P<T>, x: &T::Var) -> P<T> {
        let mut p = p.clone();
        let mut bound = x.clone();
        loop {
            let next = p
                .variables()
                .into_iter()
                .rev()
                .filter(|v| *v < bound)
                .find_map(|v| self.theory.reductor(sys, &v, p.degree(&v)).map(|r| (v, r)));
            let Some((v, r)) = next else { return p };
            p = self.normalize(prem(&p, &r, &v));
            if p.is_zero() {
                return p;
            }
            bound = v;
        }
    }

    /// Coefficient reduction of a relation about to enter the candidate, kept only
    /// if leader and main degree survive.
    fn tidy(&self, sys: &Sys<T>, p: &P<T>) -> P<T> {
        if !self.opts.coeff_reduce {
            return p.clone();
        }
        let x = p.leader().expect("nonconstant").clone();
        let q = self.reduce_coefficients(sys, p, &x);
        if q.leader() == Some(&x) && q.mdeg() == p.mdeg() {
            q
        } else {
            p.clone()
        }
    }

    /// Queues a relation with constant folding and deduplication.
    pub fn push(&self, sys: &mut Sys<T>, rel: Rel<T>) {
        if sys.inconsistent {
            return;
        }
        if let Some(c) = rel.poly.constant_value() {
            match rel.kind {
                Kind::Eq if !c.is_zero() => sys.inconsistent = true,
                Kind::Neq if c.is_zero() => sys.inconsistent = true,
                _ => self.record(&c),
            }
            return;
        }
        let (c, poly) = primitive_rational(&rel.poly);
        self.record(&c);
        let rel = Relation { poly, kind: rel.kind };
        if !sys.queue.contains(&rel) {
            sys.queue.push(rel);
        }
    }

    /// `(S + {p <> 0}, S + {p = 0})`.
    pub fn split(&self, sys: &Sys<T>, p: &P<T>) -> (Sys<T>, Sys<T>) {
        assert!(!p.is_constant(), "split on a constant");
        let mut s1 = sys.clone();
        let mut s2 = sys.clone();
        self.push(&mut s1, Relation::neq(p.clone()));
        self.push(&mut s2, Relation::eq(p.clone()));
        (s1, s2)
    }

    /// Splits on the initial of `q`. The second system gets `q` back in its queue.
    /// Returns `None` for the second system when the initial is constant.
    pub fn init_split(&self, sys: Sys<T>, q: &Rel<T>) -> (Sys<T>, Option<Sys<T>>) {
        let init = q.poly.init();
        if let Some(c) = init.constant_value() {
            self.record(&c);
            return (sys, None);
        }
        let (s1, mut s2) = self.split(&sys, &init);
        self.push(&mut s2, q.clone());
        self.splits.fetch_add(1, Ordering::Relaxed);
        (s1, Some(s2))
    }

    /// The smallest `i` whose `res_i` does not reduce to zero, with its reduced form.
    pub fn fiber_index(&self, sys: &Sys<T>, prs: &PrsResult<T::Var>) -> (u32, P<T>) {
        for i in 0..=prs.dp {
            let r = self.reduce(sys, prs.res(i));
            if !r.is_zero() {
                return (i, r);
            }
        }
        unreachable!("res_dp is one")
    }

    /// The `i`-th fibration split: `S1` gets `res_i <> 0`; `S2` gets `res_i = 0`
    /// and `requeue`, unless `res_i` reduces to a constant.
    pub fn res_split(&self, sys: Sys<T>, prs: &PrsResult<T::Var>, requeue: &Rel<T>) -> (u32, Sys<T>, Option<Sys<T>>) {
        let (i, r) = self.fiber_index(&sys, prs);
        if let Some(c) = r.constant_value() {
            self.record(&c);
            return (i, sys, None);
        }
        let (s1, mut s2) = self.split(&sys, &r);
        self.push(&mut s2, requeue.clone());
        self.splits.fetch_add(1, Ordering::Relaxed);
        (i, s1, Some(s2))
    }

    /// Conditional gcd of the candidate equation at `x` and the equation `q`.
    pub fn res_split_gcd(&self, sys: Sys<T>, q: &Rel<T>) -> (Sys<T>, Option<Sys<T>>, P<T>) {
        let x = q.leader().expect("nonconstant").clone();
        let t = sys.equation(&x).expect("equation at the leader").clone();
        let prs = self.prs(&t, &q.poly, &x);
        let (i, s1, s2) = self.res_split(sys, &prs, q);
        assert!(i > 0, "gcd split reached with a nonvanishing resultant");
        (s1, s2, prs.prs(i).clone())
    }

    /// Conditional quotient of `p` by its common part with `q`.
    pub fn res_split_divide(&self, sys: Sys<T>, p: &P<T>, q: &P<T>, requeue: &Rel<T>) -> (u32, Sys<T>, Option<Sys<T>>, P<T>) {
        let x = p.leader().expect("nonconstant").clone();
        let q = if p.mdeg() <= q.degree(&x) { prem(q, p, &x) } else { q.clone() };
        let prs = self.prs(p, &q, &x);
        let (i, s1, s2) = self.res_split(sys, &prs, requeue);
        let quo = if i == 0 { p.clone() } else { pquo(p, prs.prs(i), &x) };
        (i, s1, s2, quo)
    }

    /// Conditional square-free part of `p`.
    pub fn res_split_squarefree(&self, sys: Sys<T>, p: &P<T>, requeue: &Rel<T>) -> (Sys<T>, Option<Sys<T>>, P<T>) {
        if p.mdeg() == 1 {
            return (sys, None, p.clone());
        }
        let x = p.leader().expect("nonconstant").clone();
        let prs = self.prs(p, &p.derivative(&x), &x);
        let (i, s1, s2) = self.res_split(sys, &prs, requeue);
        let r = if i == 0 { p.clone() } else { pquo(p, prs.prs(i), &x) };
        (s1, s2, r)
    }

    /// Inserts an equation whose initial is protected, then checks queued inequations.
    pub fn insert_equation(&self, sys: &mut Sys<T>, p: &P<T>) {
        let p = content_free(&self.tidy(sys, p));
        if let Some(c) = p.init().constant_value() {
            self.record(&c);
        }
        self.theory.insert_equation(sys, p);
        if self.opts.early_check {
            let hit = sys.queue.iter().any(|r| r.kind == Kind::Neq && self.reduce(sys, &r.poly).is_zero());
            if hit {
                sys.inconsistent = true;
            }
        }
    }

    fn set_inequation(&self, sys: &mut Sys<T>, p: &P<T>) {
        let p = content_free(&self.tidy(sys, p));
        let x = p.leader().expect("nonconstant").clone();
        sys.candidate.insert(x, Relation::neq(p));
    }

    /// Splits on content or factors. `None` when the relation is left as is.
    fn factor_step(&self, sys: &Sys<T>, q: &Rel<T>) -> Option<Vec<Sys<T>>> {
        let x = q.leader()?.clone();
        match q.kind {
            Kind::Neq => {
                let f = factor(&q.poly);
                if f.factors.len() == 1 && f.factors[0].1 == 1 {
                    return None;
                }
                let mut s = sys.clone();
                for (g, _) in f.factors {
                    self.push(&mut s, Relation::neq(g));
                }
                Some(vec![s])
            }
            Kind::Eq => {
                let c = content_in(&q.poly, &x);
                if !c.is_constant() {
                    let pp = q.poly.div_exact(&c).expect("content divides");
                    let (mut s1, s2) = self.split(sys, &c);
                    self.push(&mut s1, Relation::eq(pp));
                    self.splits.fetch_add(1, Ordering::Relaxed);
                    return Some(vec![s2, s1]);
                }
                let r = squarefree_part_rational(&q.poly, &x);
                if r.mdeg() == q.poly.mdeg() {
                    return None;
                }
                let mut s = sys.clone();
                self.push(&mut s, Relation::eq(r));
                Some(vec![s])
            }
        }
    }

    /// One iteration on a system with a nonempty queue. Returns the systems to continue with,
    /// the main branch last.
    pub fn step(&self, mut sys: Sys<T>) -> Vec<Sys<T>> {
        let idx = select_index(&sys.queue, self.opts.strategy);
        if !selection_respects_axioms(&sys.queue, idx) {
            self.select_violations.fetch_add(1, Ordering::Relaxed);
        }
        let original = sys.queue.remove(idx);
        let reduced = self.reduce(&sys, &original.poly);
        let q = Relation { poly: reduced, kind: original.kind };
        if q.is_discard_marker() {
            sys.inconsistent = true;
            return vec![sys];
        }
        if q.poly.is_constant() {
            if let Some(c) = q.poly.constant_value() {
                self.record(&c);
            }
            return vec![sys];
        }
        if self.opts.factor {
            if let Some(next) = self.factor_step(&sys, &q) {
                return next;
            }
        }
        let x = q.leader().unwrap().clone();
        let slot = sys.candidate.get(&x).map(|r| r.kind);
        match (q.kind, slot) {
            (Kind::Eq, Some(Kind::Eq)) => self.equation_on_equation(sys, q, &x),
            (Kind::Eq, _) => self.equation_on_free(sys, q, &x),
            (Kind::Neq, Some(Kind::Eq)) => self.inequation_on_equation(sys, q, &x),
            (Kind::Neq, _) => self.inequation_on_free(sys, q, &x),
        }
    }

    fn equation_on_equation(&self, mut sys: Sys<T>, q: Rel<T>, x: &T::Var) -> Vec<Sys<T>> {
        let t = sys.equation(x).unwrap().clone();
        let prs = self.prs(&t, &q.poly, x);
        let r0 = self.reduce(&sys, prs.res(0));
        if !r0.is_zero() {
            self.push(&mut sys, Relation::eq(r0));
            self.push(&mut sys, q);
            return vec![sys];
        }
        let (mut s1, s2, g) = self.res_split_gcd(sys, &q);
        self.insert_equation(&mut s1, &g);
        let mut out: Vec<_> = s2.into_iter().collect();
        out.push(s1);
        out
    }

    fn equation_on_free(&self, mut sys: Sys<T>, q: Rel<T>, x: &T::Var) -> Vec<Sys<T>> {
        if let Some(old) = sys.candidate.remove(x) {
            self.push(&mut sys, old);
        }
        let mut out = Vec::new();
        let (s1, s2) = self.init_split(sys, &q);
        out.extend(s2);
        if self.opts.delay_squarefree && self.theory.allows_delayed_squarefree() {
            let mut s1 = s1;
            self.insert_equation(&mut s1, &q.poly);
            s1.pending_squarefree.insert(x.clone());
            out.push(s1);
            return out;
        }
        let (mut s1, s2, r) = self.res_split_squarefree(s1, &q.poly, &q);
        out.extend(s2);
        self.insert_equation(&mut s1, &r);
        out.push(s1);
        out
    }

    fn inequation_on_equation(&self, mut sys: Sys<T>, q: Rel<T>, x: &T::Var) -> Vec<Sys<T>> {
        if sys.pending_squarefree.contains(x) {
            self.push(&mut sys, q);
            return self.resolve_pending(sys, x.clone());
        }
        let t = sys.equation(x).unwrap().clone();
        let (i, mut s1, s2, quo) = self.res_split_divide(sys, &t, &q.poly, &q);
        let mut out: Vec<_> = s2.into_iter().collect();
        if quo.degree(x) == 0 {
            s1.inconsistent = true;
        } else if i > 0 {
            self.insert_equation(&mut s1, &quo);
        }
        out.push(s1);
        out
    }

    fn inequation_on_free(&self, sys: Sys<T>, q: Rel<T>, x: &T::Var) -> Vec<Sys<T>> {
        let mut out = Vec::new();
        let (s1, s2) = self.init_split(sys, &q);
        out.extend(s2);
        let (s1, s2, r) = self.res_split_squarefree(s1, &q.poly, &q);
        out.extend(s2);
        let old = s1.candidate.get(x).cloned();
        match old {
            Some(old) => {
                let requeue = Relation::neq(r.clone());
                let (_, mut s1, s2, quo) = self.res_split_divide(s1, &old.poly, &r, &requeue);
                out.extend(s2);
                if quo.degree(x) == 0 {
                    self.set_inequation(&mut s1, &r);
                } else {
                    self.set_inequation(&mut s1, &(&quo * &r));
                }
                out.push(s1);
            }
            None => {
                let mut s1 = s1;
                self.set_inequation(&mut s1, &r);
                out.push(s1);
            }
        }
        out
    }

    /// Runs the postponed square-free split of the equation at `x`.
    fn resolve_pending(&self, mut sys: Sys<T>, x: T::Var) -> Vec<Sys<T>> {
        sys.pending_squarefree.remove(&x);
        let t = sys.candidate.remove(&x).expect("pending equation present");
        let (mut s1, s2, r) = self.res_split_squarefree(sys, &t.poly, &t);
        let mut out: Vec<_> = s2.into_iter().collect();
        self.insert_equation(&mut s1, &r);
        out.push(s1);
        out
    }

    fn advance(&self, sys: Sys<T>) -> Result<Advance<T>, DecomposeError> {
        if sys.inconsistent {
            self.discarded.fetch_add(1, Ordering::Relaxed);
            return Ok(Advance::Next(Vec::new()));
        }
        let n = self.steps.fetch_add(1, Ordering::Relaxed) + 1;
        if self.opts.step_budget > 0 && n > self.opts.step_budget {
            return Err(DecomposeError::BudgetExhausted(self.opts.step_budget));
        }
        if sys.queue.is_empty() {
            if let Some(x) = sys.pending_squarefree.iter().next().cloned() {
                return Ok(Advance::Next(self.resolve_pending(sys, x)));
            }
            return Ok(Advance::Done(SimpleSystem { relations: sys.candidate.into_values().collect() }));
        }
        Ok(Advance::Next(self.step(sys)))
    }

    /// Decomposes the input relations into simple systems.
    pub fn decompose(&self, input: Vec<Rel<T>>) -> Result<Decomposition<T::Var>, DecomposeError> {
        let mut start = System::new();
        for r in &input {
            self.push(&mut start, r.clone());
        }
        let mut systems = if self.opts.threads > 1 {
            self.run_parallel(start)?
        } else {
            self.run_serial(start)?
        };
        systems.sort();
        systems.dedup();
        Ok(Decomposition { input, systems, stats: self.stats(), critical: self.critical_constants() })
    }

    fn run_serial(&self, start: Sys<T>) -> Result<Vec<SimpleSystem<T::Var>>, DecomposeError> {
        let mut work = vec![start];
        let mut done = Vec::new();
        while let Some(sys) = work.pop() {
            match self.advance(sys)? {
                Advance::Next(next) => work.extend(next),
                Advance::Done(s) => done.push(s),
            }
        }
        Ok(done)
    }

    fn run_parallel(&self, start: Sys<T>) -> Result<Vec<SimpleSystem<T::Var>>, DecomposeError> {
        struct Shared<S> {
            work: Vec<S>,
            active: usize,
        }
        let shared = Mutex::new(Shared { work: vec![start], active: 0 });
        let cv = Condvar::new();
        let done = Mutex::new(Vec::new());
        let failed: Mutex<Option<DecomposeError>> = Mutex::new(None);
        let stop = AtomicBool::new(false);
        std::thread::scope(|scope| {
            for _ in 0..self.opts.threads {
                scope.spawn(|| loop {
                    let sys = {
                        let mut g = shared.lock();
                        loop {
                            if stop.load(Ordering::Relaxed) {
                                return;
                            }
                            if let Some(s) = g.work.pop() {
                                g.active += 1;
                                break s;
                            }
                            if g.active == 0 {
                                cv.notify_all();
                                return;
                            }
                            cv.wait(&mut g);
                        }
                    };
                    let result = self.advance(sys);
                    let mut g = shared.lock();
                    g.active -= 1;
                    match result {
                        Ok(Advance::Next(next)) => g.work.extend(next),
                        Ok(Advance::Done(s)) => done.lock().push(s),
                        Err(e) => {
                            *failed.lock() = Some(e);
                            stop.store(true, Ordering::Relaxed);
                        }
                    }
                    cv.notify_all();
                });
            }
        });
        if let Some(e) = failed.into_inner() {
            return Err(e);
        }
        Ok(done.into_inner())
    }
}

enum Advance<T: Theory> {
    Next(Vec<Sys<T>>),
    Done(SimpleSystem<T::Var>),
}
