//! Algebraic systems over a fixed ranking of named variables.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::poly::{parse_poly, ParseError, Poly};
use crate::thomas::{Decomposition, DecomposeError, Engine, Options, Relation, System, Theory};

/// A variable, identified by its position in the ranking (larger is higher).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RankingError {
    #[error("duplicate variable '{0}'")]
    Duplicate(String),
    #[error("invalid variable name '{0}'")]
    BadName(String),
}

/// Variable names in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Ranking {
    pub fn new<S: AsRef<str>>(ascending: &[S]) -> Result<Self, RankingError> {
        let mut index = HashMap::new();
        let mut names = Vec::new();
        for (i, n) in ascending.iter().enumerate() {
            let n = n.as_ref().to_string();
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(RankingError::BadName(n));
            }
            if index.insert(n.clone(), i as u32).is_some() {
                return Err(RankingError::Duplicate(n));
            }
            names.push(n);
        }
        Ok(Ranking { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.index.get(name).map(|&i| Var(i))
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.names.len() as u32).map(Var)
    }

    pub fn parse(&self, text: &str) -> Result<Poly<Var>, ParseError> {
        parse_poly(text, |name, idx| {
            if idx.is_some() {
                return Err(format!("jet index on algebraic variable '{name}'"));
            }
            self.var(name).ok_or_else(|| format!("undeclared variable '{name}'"))
        })
    }

    pub fn format(&self, p: &Poly<Var>) -> String {
        crate::poly::format_poly(p, &|v| self.name(*v).to_string())
    }

    pub fn format_relation(&self, r: &Relation<Var>) -> String {
        r.format(&|v| self.name(*v).to_string())
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" < "))
    }
}

/// The algebraic theory: reductors are the candidate equations themselves.
#[derive(Clone, Copy, Debug, Default)]
pub struct Algebraic;

pub type AlgSystem = System<Var, ()>;

impl Theory for Algebraic {
    type Var = Var;
    type State = ();

    fn reductor(&self, sys: &AlgSystem, x: &Var, deg: u32) -> Option<Poly<Var>> {
        sys.equation(x).filter(|t| deg >= t.mdeg()).cloned()
    }

    fn insert_equation(&self, sys: &mut AlgSystem, p: Poly<Var>) {
        let x = *p.leader().expect("nonconstant equation");
        sys.candidate.insert(x, Relation::eq(p));
    }
}

/// Thomas decomposition of an algebraic system.
pub fn decompose(input: &[Relation<Var>], opts: &Options) -> Result<Decomposition<Var>, DecomposeError> {
    Engine::new(&Algebraic, opts.clone()).decompose(input.to_vec())
}

/// Reduction of `p` modulo the equations of `sys`.
pub fn reduce(sys: &AlgSystem, p: &Poly<Var>, opts: &Options) -> Poly<Var> {
    Engine::new(&Algebraic, opts.clone()).reduce(sys, p)
}
