//! The decomposition engine shared by the algebraic and differential front ends.
//!
//! A [`Theory`] supplies the two operations that differ between the settings:
//! finding a reductor for a leader, and inserting an equation into the
//! triangular part. Everything else (splits, selection, the work-list loop)
//! lives in [`Engine`].

mod engine;
mod select;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{format_poly, Poly, Variable};

pub use engine::Engine;
pub use select::{select_index, selection_respects_axioms};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Eq,
    Neq,
}

impl Kind {
    pub fn symbol(self) -> &'static str {
        match self {
            Kind::Eq => "=",
            Kind::Neq => "<>",
        }
    }
}

/// A polynomial equation `p = 0` or inequation `p <> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation<V: Variable> {
    pub poly: Poly<V>,
    pub kind: Kind,
}

impl<V: Variable> Relation<V> {
    pub fn eq(poly: Poly<V>) -> Self {
        Relation { poly, kind: Kind::Eq }
    }

    pub fn neq(poly: Poly<V>) -> Self {
        Relation { poly, kind: Kind::Neq }
    }

    pub fn is_equation(&self) -> bool {
        self.kind == Kind::Eq
    }

    pub fn leader(&self) -> Option<&V> {
        self.poly.leader()
    }

    /// `0 <> 0` or `c = 0` with a nonzero constant `c`.
    pub fn is_discard_marker(&self) -> bool {
        match self.kind {
            Kind::Neq => self.poly.is_zero(),
            Kind::Eq => self.poly.is_constant() && !self.poly.is_zero(),
        }
    }

    pub fn format(&self, name: &dyn Fn(&V) -> String) -> String {
        format!("{} {} 0", format_poly(&self.poly, name), self.kind.symbol())
    }
}

/// Free-standing form of [`Relation::is_discard_marker`].
pub fn is_discard_marker<V: Variable>(q: &Relation<V>) -> bool {
    q.is_discard_marker()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Strategy {
    #[default]
    EquationsFirst,
    LeaderFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub strategy: Strategy,
    /// Split equations on their content and inequations into factors.
    pub factor: bool,
    /// Reduce coefficients modulo equations of lower leader.
    pub coeff_reduce: bool,
    /// Postpone square-free splits of equations until the queue is empty (algebraic only).
    pub delay_squarefree: bool,
    /// Reduce queued inequations after every equation insertion.
    pub early_check: bool,
    /// Maximum number of loop iterations, 0 for unlimited.
    pub step_budget: u64,
    /// Worker threads for the work list.
    pub threads: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strategy: Strategy::EquationsFirst,
            factor: true,
            coeff_reduce: true,
            delay_squarefree: false,
            early_check: true,
            step_budget: 0,
            threads: 1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("step budget of {0} exhausted")]
    BudgetExhausted(u64),
}

/// A system under construction: triangular candidate plus work queue.
#[derive(Clone, Debug)]
pub struct System<V: Variable, S> {
    pub candidate: BTreeMap<V, Relation<V>>,
    pub queue: Vec<Relation<V>>,
    pub state: S,
    /// Leaders whose equation still awaits its square-free split.
    pub pending_squarefree: BTreeSet<V>,
    pub inconsistent: bool,
}

impl<V: Variable, S: Default> System<V, S> {
    pub fn new() -> Self {
        System {
            candidate: BTreeMap::new(),
            queue: Vec::new(),
            state: S::default(),
            pending_squarefree: BTreeSet::new(),
            inconsistent: false,
        }
    }
}

impl<V: Variable, S: Default> Default for System<V, S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<V: Variable, S> System<V, S> {
    pub fn equation(&self, x: &V) -> Option<&Poly<V>> {
        match self.candidate.get(x) {
            Some(r) if r.kind == Kind::Eq => Some(&r.poly),
            _ => None,
        }
    }

    pub fn equations(&self) -> impl Iterator<Item = (&V, &Poly<V>)> {
        self.candidate.iter().filter(|(_, r)| r.kind == Kind::Eq).map(|(v, r)| (v, &r.poly))
    }
}

/// The setting-specific half of the algorithm.
pub trait Theory: Sync {
    type Var: Variable;
    type State: Clone + Default + Send + fmt::Debug;

    /// A polynomial with leader `x` by which a polynomial of degree `deg` in `x`
    /// may be pseudo-reduced, if one exists.
    fn reductor(&self, sys: &System<Self::Var, Self::State>, x: &Self::Var, deg: u32) -> Option<Poly<Self::Var>>;

    /// Puts the equation `p = 0` into the candidate. Displaced relations go back to the queue.
    fn insert_equation(&self, sys: &mut System<Self::Var, Self::State>, p: Poly<Self::Var>);

    /// Whether square-free splits of equations may be postponed.
    fn allows_delayed_squarefree(&self) -> bool {
        true
    }
}

/// A finished simple system, relations ascending by leader.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSystem<V: Variable> {
    pub relations: Vec<Relation<V>>,
}

impl<V: Variable> SimpleSystem<V> {
    pub fn equations(&self) -> impl Iterator<Item = &Relation<V>> {
        self.relations.iter().filter(|r| r.kind == Kind::Eq)
    }

    pub fn inequations(&self) -> impl Iterator<Item = &Relation<V>> {
        self.relations.iter().filter(|r| r.kind == Kind::Neq)
    }

    pub fn at(&self, x: &V) -> Option<&Relation<V>> {
        self.relations.iter().find(|r| r.leader() == Some(x))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub steps: u64,
    pub splits: u64,
    pub discarded: u64,
    pub prs_cache_hits: u64,
    pub prs_cache_misses: u64,
    pub select_violations: u64,
}

#[derive(Clone, Debug)]
pub struct Decomposition<V: Variable> {
    pub input: Vec<Relation<V>>,
    pub systems: Vec<SimpleSystem<V>>,
    pub stats: Stats,
    /// Integers whose non-vanishing the run relied on; a prime dividing one of
    /// them may legitimately break the result after reduction mod p.
    pub critical: Vec<BigInt>,
}
