//! Differential polynomials: jet variables, differential rankings, Janet division
//! and the differential decomposition.

mod janet;
mod theory;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::poly::{format_poly, parse_poly, ParseError, Poly};
use crate::thomas::Relation;

pub use janet::{in_cone, janet_assign, janet_completion, nu_generators, JanetTable};
pub use theory::{
    diff_decompose, diff_insert_equation, diff_reduce, inequations_irreducible, involutivity_check,
    leaders_minimal, nonreductive_prolongations, system_from_simple, DiffState, DiffSystem,
    Differential,
};

/// The derivative `u^(indet)_index` of a differential indeterminate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffVar {
    pub indet: u32,
    pub index: Vec<u32>,
}

impl DiffVar {
    pub fn new(indet: u32, index: Vec<u32>) -> Self {
        DiffVar { indet, index }
    }

    pub fn order(&self) -> u32 {
        self.index.iter().sum()
    }

    /// `∂_k` applied once.
    pub fn shift(&self, k: usize) -> DiffVar {
        let mut index = self.index.clone();
        index[k] += 1;
        DiffVar { indet: self.indet, index }
    }

    /// The multi-index `i` with `∂^i self = other`, if `other` is a derivative of `self`.
    pub fn divides(&self, other: &DiffVar) -> Option<Vec<u32>> {
        if self.indet != other.indet || self.index.len() != other.index.len() {
            return None;
        }
        self.index
            .iter()
            .zip(&other.index)
            .map(|(a, b)| b.checked_sub(*a))
            .collect()
    }
}

/// A `DiffVar` carrying its rank key; the derived order is the ranking.
#[derive(Clone, Debug)]
pub struct Jet {
    key: Arc<[i64]>,
    var: DiffVar,
}

impl Jet {
    pub fn var(&self) -> &DiffVar {
        &self.var
    }

    pub fn indet(&self) -> u32 {
        self.var.indet
    }

    pub fn index(&self) -> &[u32] {
        &self.var.index
    }
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var
    }
}

impl Eq for Jet {}

impl Hash for Jet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.var.hash(state)
    }
}

impl Ord for Jet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key).then_with(|| self.var.cmp(&other.var))
    }
}

impl PartialOrd for Jet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type KeyFn = Arc<dyn Fn(&DiffVar) -> Vec<i64> + Send + Sync>;

#[derive(Clone)]
pub enum RankingOrder {
    /// Total order first, then the multi-index in tie order, then the indeterminate.
    Orderly,
    /// Blocks of indeterminates, highest first, orderly inside a block.
    Elimination(Vec<Vec<u32>>),
    /// Any key compatible with the ranking axioms.
    Custom(KeyFn),
}

impl fmt::Debug for RankingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankingOrder::Orderly => write!(f, "Orderly"),
            RankingOrder::Elimination(b) => write!(f, "Elimination({b:?})"),
            RankingOrder::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffRankingError {
    #[error("duplicate name '{0}'")]
    Duplicate(String),
    #[error("unknown indeterminate '{0}'")]
    UnknownIndeterminate(String),
    #[error("indeterminate '{0}' appears in two blocks")]
    RepeatedInBlocks(String),
    #[error("tie order must be a permutation of the derivations")]
    BadTieOrder,
    #[error("ranking axiom violated: {0}")]
    Axiom(String),
}

#[derive(Clone, Debug)]
pub struct DiffRanking {
    derivations: Vec<String>,
    indeterminates: Vec<String>,
    order: RankingOrder,
    /// Derivation indices, most significant first, for comparing multi-indices.
    tie: Vec<usize>,
}

fn check_unique(names: &[String]) -> Result<(), DiffRankingError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(DiffRankingError::Duplicate(n.clone()));
        }
    }
    Ok(())
}

impl DiffRanking {
    /// Orderly ranking; indeterminates are listed in ascending order.
    pub fn orderly<S: AsRef<str>>(derivations: &[S], indeterminates: &[S]) -> Result<Self, DiffRankingError> {
        let derivations: Vec<String> = derivations.iter().map(|s| s.as_ref().to_string()).collect();
        let indeterminates: Vec<String> = indeterminates.iter().map(|s| s.as_ref().to_string()).collect();
        let mut all = derivations.clone();
        all.extend(indeterminates.iter().cloned());
        check_unique(&all)?;
        let tie = (0..derivations.len()).rev().collect();
        Ok(DiffRanking { derivations, indeterminates, order: RankingOrder::Orderly, tie })
    }

    /// Block elimination ranking; `blocks` are listed from highest to lowest.
    /// Indeterminates not mentioned form one lowest block.
    pub fn elimination<S: AsRef<str>>(
        derivations: &[S],
        indeterminates: &[S],
        blocks: &[Vec<S>],
    ) -> Result<Self, DiffRankingError> {
        let mut r = Self::orderly(derivations, indeterminates)?;
        let mut seen = vec![false; r.indeterminates.len()];
        let mut out = Vec::new();
        for b in blocks {
            let mut ids = Vec::new();
            for name in b {
                let name = name.as_ref();
                let j = r
                    .indeterminate(name)
                    .ok_or_else(|| DiffRankingError::UnknownIndeterminate(name.to_string()))?;
                if seen[j as usize] {
                    return Err(DiffRankingError::RepeatedInBlocks(name.to_string()));
                }
                seen[j as usize] = true;
                ids.push(j);
            }
            out.push(ids);
        }
        let rest: Vec<u32> = (0..seen.len() as u32).filter(|j| !seen[*j as usize]).collect();
        if !rest.is_empty() {
            out.push(rest);
        }
        r.order = RankingOrder::Elimination(out);
        Ok(r)
    }

    /// A ranking given by an arbitrary key; checked against the axioms on random samples.
    pub fn custom<S: AsRef<str>>(derivations: &[S], indeterminates: &[S], key: KeyFn) -> Result<Self, DiffRankingError> {
        let mut r = Self::orderly(derivations, indeterminates)?;
        r.order = RankingOrder::Custom(key);
        r.check_axioms(0, 500, 4)?;
        Ok(r)
    }

    /// Replaces the tie order used to compare multi-indices of equal rank.
    pub fn with_tie_order(mut self, tie: Vec<usize>) -> Result<Self, DiffRankingError> {
        let mut sorted = tie.clone();
        sorted.sort_unstable();
        if sorted != (0..self.derivations.len()).collect::<Vec<_>>() {
            return Err(DiffRankingError::BadTieOrder);
        }
        self.tie = tie;
        Ok(self)
    }

    pub fn derivations(&self) -> &[String] {
        &self.derivations
    }

    pub fn indeterminates(&self) -> &[String] {
        &self.indeterminates
    }

    pub fn order(&self) -> &RankingOrder {
        &self.order
    }

    pub fn tie_order(&self) -> &[usize] {
        &self.tie
    }

    pub fn num_derivations(&self) -> usize {
        self.derivations.len()
    }

    pub fn indeterminate(&self, name: &str) -> Option<u32> {
        self.indeterminates.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn derivation(&self, name: &str) -> Option<usize> {
        self.derivations.iter().position(|n| n == name)
    }

    fn orderly_key(&self, v: &DiffVar, rank: i64, out: &mut Vec<i64>) {
        out.push(v.order() as i64);
        for &k in &self.tie {
            out.push(v.index[k] as i64);
        }
        out.push(rank);
    }

    pub fn key(&self, v: &DiffVar) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.derivations.len() + 3);
        match &self.order {
            RankingOrder::Orderly => self.orderly_key(v, v.indet as i64, &mut out),
            RankingOrder::Elimination(blocks) => {
                let b = blocks.iter().position(|b| b.contains(&v.indet)).expect("indeterminate in a block");
                out.push((blocks.len() - b) as i64);
                self.orderly_key(v, v.indet as i64, &mut out);
            }
            RankingOrder::Custom(f) => out = f(v),
        }
        out
    }

    pub fn jet(&self, v: DiffVar) -> Jet {
        assert_eq!(v.index.len(), self.derivations.len(), "jet index arity");
        Jet { key: self.key(&v).into(), var: v }
    }

    pub fn jet_of(&self, indet: u32, index: &[u32]) -> Jet {
        self.jet(DiffVar::new(indet, index.to_vec()))
    }

    /// The indeterminate itself, i.e. its derivative of order zero.
    pub fn base(&self, indet: u32) -> Jet {
        self.jet(DiffVar::new(indet, vec![0; self.derivations.len()]))
    }

    pub fn shift(&self, j: &Jet, k: usize) -> Jet {
        self.jet(j.var.shift(k))
    }

    pub fn compare(&self, a: &DiffVar, b: &DiffVar) -> Ordering {
        self.key(a).cmp(&self.key(b)).then_with(|| a.cmp(b))
    }

    /// Checks `u < ∂u` and `u < v ⇒ ∂u < ∂v` on random triples.
    pub fn check_axioms(&self, seed: u64, samples: usize, max_order: u32) -> Result<(), DiffRankingError> {
        let n = self.derivations.len();
        let m = self.indeterminates.len() as u32;
        if n == 0 || m == 0 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = |rng: &mut ChaCha8Rng| {
            DiffVar::new(rng.gen_range(0..m), (0..n).map(|_| rng.gen_range(0..=max_order)).collect())
        };
        for _ in 0..samples {
            let u = random(&mut rng);
            let v = random(&mut rng);
            let k = rng.gen_range(0..n);
            if self.compare(&u, &u.shift(k)) != Ordering::Less {
                return Err(DiffRankingError::Axiom(format!("{u:?} is not below its derivative by {k}")));
            }
            if self.compare(&u, &v) == Ordering::Less && self.compare(&u.shift(k), &v.shift(k)) != Ordering::Less {
                return Err(DiffRankingError::Axiom(format!("derivation {k} does not preserve {u:?} < {v:?}")));
            }
        }
        Ok(())
    }

    pub fn jet_name(&self, j: &Jet) -> String {
        let name = &self.indeterminates[j.var.indet as usize];
        if j.var.order() == 0 {
            name.clone()
        } else {
            let idx: Vec<String> = j.var.index.iter().map(|i| i.to_string()).collect();
            format!("{}[{}]", name, idx.join(","))
        }
    }

    pub fn parse(&self, text: &str) -> Result<Poly<Jet>, ParseError> {
        let n = self.derivations.len();
        parse_poly(text, |name, idx| {
            let j = self
                .indeterminate(name)
                .ok_or_else(|| format!("undeclared indeterminate '{name}'"))?;
            let index = match idx {
                None => vec![0; n],
                Some(i) if i.len() == n => i.to_vec(),
                Some(i) => return Err(format!("jet index arity mismatch: '{name}' has {} indices, expected {n}", i.len())),
            };
            Ok(self.jet(DiffVar::new(j, index)))
        })
    }

    pub fn format(&self, p: &Poly<Jet>) -> String {
        format_poly(p, &|j| self.jet_name(j))
    }

    pub fn format_relation(&self, r: &Relation<Jet>) -> String {
        r.format(&|j| self.jet_name(j))
    }
}
