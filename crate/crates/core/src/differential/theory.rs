use std::collections::{BTreeSet, HashMap, HashSet};

use parking_lot::Mutex;

use super::janet::{janet_assign, janet_completion, nu_generators, JanetTable};
use super::{DiffRanking, DiffVar, Jet};
use crate::poly::{primitive_rational, Poly};
use crate::thomas::{Decomposition, DecomposeError, Engine, Kind, Options, Relation, SimpleSystem, System, Theory};

/// Candidate-side state of a differential system.
#[derive(Clone, Debug, Default)]
pub struct DiffState {
    pub table: JanetTable,
    /// Non-reductive prolongations already queued.
    pub memo: HashSet<Poly<Jet>>,
}

pub type DiffSystem = System<Jet, DiffState>;

/// The differential theory: Janet reduction and insertion with prolongations.
pub struct Differential {
    pub ranking: DiffRanking,
    pub scan: Vec<usize>,
    prolongations: Mutex<HashMap<(Poly<Jet>, Vec<u32>), Poly<Jet>>>,
}

impl Differential {
    /// `scan` defaults to the declaration order of the derivations.
    pub fn new(ranking: DiffRanking, scan: Option<Vec<usize>>) -> Self {
        let scan = scan.unwrap_or_else(|| (0..ranking.num_derivations()).collect());
        assert_eq!(scan.len(), ranking.num_derivations(), "scan order arity");
        Differential { ranking, scan, prolongations: Mutex::new(HashMap::new()) }
    }

    /// Total derivative by the `k`-th derivation.
    pub fn derive(&self, p: &Poly<Jet>, k: usize) -> Poly<Jet> {
        let mut acc = Poly::zero();
        for v in p.variables() {
            let d = p.derivative(&v);
            acc = &acc + &(&d * &Poly::var(self.ranking.shift(&v, k)));
        }
        acc
    }

    /// `∂^i p`.
    pub fn prolong(&self, p: &Poly<Jet>, i: &[u32]) -> Poly<Jet> {
        let key = (p.clone(), i.to_vec());
        if let Some(q) = self.prolongations.lock().get(&key) {
            return q.clone();
        }
        let mut q = p.clone();
        for (k, &e) in i.iter().enumerate() {
            for _ in 0..e {
                q = self.derive(&q, k);
            }
        }
        self.prolongations.lock().insert(key, q.clone());
        q
    }

    fn reassign(&self, sys: &mut DiffSystem) {
        let leaders: Vec<DiffVar> = sys.equations().map(|(v, _)| v.var().clone()).collect();
        sys.state.table = janet_assign(&leaders, &self.scan);
    }

    fn queue(sys: &mut DiffSystem, r: Relation<Jet>) {
        if !sys.queue.contains(&r) {
            sys.queue.push(r);
        }
    }
}

impl Theory for Differential {
    type Var = Jet;
    type State = DiffState;

    fn reductor(&self, sys: &DiffSystem, x: &Jet, deg: u32) -> Option<Poly<Jet>> {
        let apex = sys.state.table.find_cone(x.var())?;
        let i = apex.divides(x.var()).expect("cone member");
        let q = sys.equation(&self.ranking.jet(apex.clone()))?;
        if i.iter().all(|&e| e == 0) {
            return (deg >= q.mdeg()).then(|| q.clone());
        }
        Some(self.prolong(q, &i))
    }

    fn insert_equation(&self, sys: &mut DiffSystem, p: Poly<Jet>) {
        diff_insert_equation(self, sys, p)
    }

    fn allows_delayed_squarefree(&self) -> bool {
        false
    }
}

/// Inserts `p = 0`, moving relations whose leader is a proper derivative of `ld(p)`
/// back to the queue and queueing the new non-reductive prolongations.
/// An equation already stored at `ld(p)` is replaced.
pub fn diff_insert_equation(theory: &Differential, sys: &mut DiffSystem, p: Poly<Jet>) {
    let w = p.leader().expect("nonconstant equation").clone();
    let evicted: Vec<Jet> = sys
        .candidate
        .keys()
        .filter(|v| **v != w && w.var().divides(v.var()).is_some())
        .cloned()
        .collect();
    for v in evicted {
        let r = sys.candidate.remove(&v).unwrap();
        Differential::queue(sys, r);
    }
    if let Some(old) = sys.candidate.remove(&w) {
        if old.kind == Kind::Neq {
            Differential::queue(sys, old);
        }
    }
    sys.candidate.insert(w, Relation::eq(p));
    theory.reassign(sys);
    for r in nonreductive_prolongations(theory, sys) {
        if sys.state.memo.insert(r.poly.clone()) {
            Differential::queue(sys, r);
        }
    }
}

/// `(∂_k q) = 0` for each equation `q` of the candidate and each derivation `k`
/// that is not reductive for it.
pub fn nonreductive_prolongations(theory: &Differential, sys: &DiffSystem) -> Vec<Relation<Jet>> {
    let mut out = Vec::new();
    for (v, k) in sys.state.table.nonreductive() {
        let q = sys.equation(&theory.ranking.jet(v)).expect("table entry has an equation");
        let d = primitive_rational(&theory.derive(q, k)).1;
        out.push(Relation::eq(d));
    }
    out
}

/// Differential reduction of `p` modulo the equations of `sys`.
pub fn diff_reduce(theory: &Differential, sys: &DiffSystem, p: &Poly<Jet>, opts: &Options) -> Poly<Jet> {
    Engine::new(theory, opts.clone()).reduce(sys, p)
}

/// Thomas decomposition of a differential system.
pub fn diff_decompose(
    theory: &Differential,
    input: &[Relation<Jet>],
    opts: &Options,
) -> Result<Decomposition<Jet>, DecomposeError> {
    Engine::new(theory, opts.clone()).decompose(input.to_vec())
}

/// A system holding the relations of `s` in its candidate, with Janet data assigned.
pub fn system_from_simple(theory: &Differential, s: &SimpleSystem<Jet>) -> DiffSystem {
    let mut sys = DiffSystem::new();
    for r in &s.relations {
        let x = r.leader().expect("nonconstant relation").clone();
        sys.candidate.insert(x, r.clone());
    }
    theory.reassign(&mut sys);
    sys
}

/// Whether every non-reductive prolongation reduces to zero.
pub fn involutivity_check(theory: &Differential, s: &SimpleSystem<Jet>, opts: &Options) -> bool {
    let sys = system_from_simple(theory, s);
    let engine = Engine::new(theory, opts.clone());
    nonreductive_prolongations(theory, &sys)
        .iter()
        .all(|r| engine.reduce(&sys, &r.poly).is_zero())
}

/// Whether no inequation is Janet-reducible modulo the equations.
pub fn inequations_irreducible(theory: &Differential, s: &SimpleSystem<Jet>) -> bool {
    let sys = system_from_simple(theory, s);
    s.inequations().all(|r| {
        let x = r.leader().expect("nonconstant");
        theory.reductor(&sys, x, r.poly.mdeg()).is_none()
    })
}

/// Whether the equation leaders equal the Janet completion of their minimal generators.
pub fn leaders_minimal(theory: &Differential, s: &SimpleSystem<Jet>) -> bool {
    let w: Vec<DiffVar> = s.equations().map(|r| r.leader().unwrap().var().clone()).collect();
    let nu: Vec<DiffVar> = nu_generators(&w).into_iter().collect();
    janet_completion(&nu, &theory.scan) == w.into_iter().collect::<BTreeSet<_>>()
}
