//! Finite-field checks of decompositions, a determinant resultant and a random
//! system generator.
//!
//! Decompositions are checked one prime at a time. Every point of F_p^(n-1) for
//! the variables below the highest one is enumerated; over each such point the
//! conditions on the highest variable are compared as subsets of the algebraic
//! closure, so the union and disjointness verdicts are exact on that grid.
//! Small grids are additionally enumerated point by point, which yields counts.
//! For large primes the lower grid is a seeded product subgrid.

mod modp;
mod random;
mod simple;
mod sylvester;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebraic::Var;
use crate::poly::Fp;
use crate::thomas::{Kind, Relation, SimpleSystem};

pub use modp::{FiberSet, ModPoly};
pub use random::{random_system, RandomParams};
pub use simple::{check_simple, SimpleReport};
pub use sylvester::sylvester_resultant;

/// Largest `p^n` for which points are enumerated one by one.
pub const GRID_LIMIT: u64 = 50_000;

/// Largest number of lower points visited per prime. Beyond it the lower
/// grid is restricted to `T^(n-1)` for a seeded subset `T` of F_p that
/// contains the small values and their negatives.
pub const PREFIX_LIMIT: u64 = 1 << 15;

/// The default prime ladder.
pub const DEFAULT_PRIMES: [u64; 3] = [101, 1009, 10007];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BadPrime {
    #[error("a coefficient denominator vanishes mod {0}")]
    Denominator(u64),
    #[error("a degree is not below {0}")]
    Degree(u64),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub prime: u64,
    /// Values of the variables below the highest one (all of them in grid mode).
    pub point: Vec<u64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub prime: u64,
    /// Points of the lower grid visited.
    pub points: u64,
    /// Whether the lower grid was all of F_p^(n-1).
    pub exhaustive: bool,
    /// Solution counts over F_p, when the full grid was enumerated.
    pub input_count: Option<u64>,
    pub system_counts: Option<Vec<u64>>,
    pub union_equal: bool,
    pub disjoint: bool,
    pub simple: Vec<SimpleReport>,
    pub counterexample: Option<Counterexample>,
}

impl PrimeReport {
    pub fn passed(&self) -> bool {
        self.union_equal && self.disjoint && self.simple.iter().all(|s| s.failures.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedPrime {
    pub prime: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub primes: Vec<PrimeReport>,
    pub skipped: Vec<SkippedPrime>,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn usable_primes(&self) -> usize {
        self.primes.len()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn field(p: u64) -> Result<Fp, BadPrime> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(BadPrime::NotPrime(p));
    }
    Ok(Fp::new(p))
}

struct ModRel {
    poly: ModPoly,
    eq: bool,
}

fn images(rels: &[Relation<Var>], n: usize, f: Fp) -> Result<Vec<ModRel>, BadPrime> {
    rels.iter()
        .map(|r| {
            let poly = ModPoly::new(&r.poly, n, f).ok_or(BadPrime::Denominator(f.p))?;
            if poly.max_deg() as u64 >= f.p {
                return Err(BadPrime::Degree(f.p));
            }
            Ok(ModRel { poly, eq: r.kind == Kind::Eq })
        })
        .collect()
}

fn specialize_all(rels: &[ModRel], f: Fp, pows: &[Vec<u64>], top: usize) -> Vec<(Vec<u64>, bool)> {
    rels.iter().map(|r| (r.poly.specialize(f, pows, top), r.eq)).collect()
}

fn fiber(rels: &[(Vec<u64>, bool)], f: Fp) -> FiberSet {
    let mut set = FiberSet::everything();
    for (u, eq) in rels {
        set = set.intersect(&modp::relation_fiber(f, u, *eq), f);
        if set.is_empty() {
            break;
        }
    }
    set
}

fn holds(rels: &[(Vec<u64>, bool)], f: Fp, x: u64) -> bool {
    rels.iter().all(|(u, eq)| (modp::eval(f, u, x) == 0) == *eq)
}

/// Odometer over `T^k` for a finite `T` of field elements.
struct Grid {
    values: Vec<u64>,
    idx: Vec<usize>,
    cur: Vec<u64>,
    started: bool,
}

impl Grid {
    fn new(p: u64, k: usize) -> Self {
        Self::over((0..p).collect(), k)
    }

    fn over(values: Vec<u64>, k: usize) -> Self {
        let cur = vec![values[0]; k];
        Grid { values, idx: vec![0; k], cur, started: false }
    }

    fn next(&mut self) -> Option<&[u64]> {
        if !self.started {
            self.started = true;
            return Some(&self.cur);
        }
        for i in (0..self.cur.len()).rev() {
            self.idx[i] += 1;
            if self.idx[i] < self.values.len() {
                self.cur[i] = self.values[self.idx[i]];
                return Some(&self.cur);
            }
            self.idx[i] = 0;
            self.cur[i] = self.values[0];
        }
        None
    }
}

/// Coordinate values for the lower grid, all of F_p when it is small enough.
fn lower_values(p: u64, k: usize) -> Vec<u64> {
    if k == 0 || (p as f64).powi(k as i32) <= PREFIX_LIMIT as f64 {
        return (0..p).collect();
    }
    let size = ((PREFIX_LIMIT as f64).powf(1.0 / k as f64).floor() as u64).max(5);
    let mut set: BTreeSet<u64> = [0, 1, 2, p - 1, p - 2].into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    while (set.len() as u64) < size {
        set.insert(rng.gen_range(0..p));
    }
    set.into_iter().collect()
}

fn max_degree(rels: &[&[ModRel]]) -> u32 {
    rels.iter().flat_map(|r| r.iter()).map(|r| r.poly.max_deg()).max().unwrap_or(0)
}

/// All points of `F_p^n` satisfying every relation.
pub fn enumerate_solutions(rels: &[Relation<Var>], n: usize, p: u64) -> Result<Vec<Vec<u64>>, BadPrime> {
    let f = field(p)?;
    let imgs = images(rels, n, f)?;
    let md = max_degree(&[&imgs]);
    let mut out = Vec::new();
    let mut grid = Grid::new(p, n);
    while let Some(pt) = grid.next() {
        let pows = modp::power_table(f, pt, md);
        if imgs.iter().all(|r| {
            let v = r.poly.specialize(f, &pows, usize::MAX);
            let v = v.first().copied().unwrap_or(0);
            (v == 0) == r.eq
        }) {
            out.push(pt.to_vec());
        }
    }
    Ok(out)
}

/// Whether `p` divides one of the integers a decomposition relied on.
pub fn divides_any(p: u64, critical: &[BigInt]) -> bool {
    let p = BigInt::from(p);
    critical.iter().any(|c| (c % &p).is_zero())
}

/// Checks one prime. Errors mean the prime cannot be used at all.
pub fn check_prime(
    input: &[Relation<Var>],
    systems: &[SimpleSystem<Var>],
    n: usize,
    p: u64,
    samples: usize,
) -> Result<PrimeReport, BadPrime> {
    let f = field(p)?;
    let inp = images(input, n, f)?;
    let outs: Vec<Vec<ModRel>> = systems.iter().map(|s| images(&s.relations, n, f)).collect::<Result<_, _>>()?;
    let mut all: Vec<&[ModRel]> = vec![&inp];
    all.extend(outs.iter().map(|o| o.as_slice()));
    let md = max_degree(&all);
    let top = n.saturating_sub(1);
    let grid_mode = n > 0 && (p as f64).powi(n as i32) <= GRID_LIMIT as f64;

    let mut report = PrimeReport {
        prime: p,
        points: 0,
        exhaustive: true,
        input_count: grid_mode.then_some(0),
        system_counts: grid_mode.then(|| vec![0; systems.len()]),
        union_equal: true,
        disjoint: true,
        simple: Vec::new(),
        counterexample: None,
    };
    let values = lower_values(p, top);
    report.exhaustive = values.len() as u64 == p;
    let mut grid = Grid::over(values, top);
    while let Some(prefix) = grid.next() {
        report.points += 1;
        let mut point = prefix.to_vec();
        point.push(0);
        let pows = modp::power_table(f, &point, md);
        let inp_sp = specialize_all(&inp, f, &pows, top);
        let out_sp: Vec<_> = outs.iter().map(|o| specialize_all(o, f, &pows, top)).collect();
        let target = fiber(&inp_sp, f);
        let mut union = FiberSet::empty();
        let mut problem = None;
        let parts: Vec<FiberSet> = out_sp.iter().map(|o| fiber(o, f)).collect();
        for (i, part) in parts.iter().enumerate() {
            if !union.intersect(part, f).is_empty() {
                report.disjoint = false;
                problem.get_or_insert_with(|| format!("system {i} overlaps an earlier system"));
            }
            union = union.union(part, f);
        }
        if union != target {
            report.union_equal = false;
            problem.get_or_insert_with(|| format!("union {union:?} differs from input {target:?}"));
        }
        if grid_mode {
            for x in 0..p {
                if holds(&inp_sp, f, x) {
                    *report.input_count.as_mut().unwrap() += 1;
                }
                for (i, o) in out_sp.iter().enumerate() {
                    if holds(o, f, x) {
                        report.system_counts.as_mut().unwrap()[i] += 1;
                    }
                }
            }
        }
        if let Some(detail) = problem {
            if report.counterexample.is_none() {
                report.counterexample = Some(Counterexample { prime: p, point: prefix.to_vec(), detail });
            }
        }
    }
    if samples > 0 {
        for s in systems {
            report.simple.push(check_simple(s, n, p, samples, p)?);
        }
    }
    Ok(report)
}

/// Checks that `systems` decompose `input` disjointly over each usable prime.
/// A failing prime that divides one of the `critical` integers is skipped as a bad
/// specialization; any other failure fails the whole report.
pub fn check_decomposition(
    input: &[Relation<Var>],
    systems: &[SimpleSystem<Var>],
    critical: &[BigInt],
    n: usize,
    primes: &[u64],
    samples: usize,
) -> VerifyReport {
    let mut out = VerifyReport { verdict: Verdict::Inconclusive, primes: Vec::new(), skipped: Vec::new(), counterexample: None };
    let mut failed = false;
    for &p in primes {
        match check_prime(input, systems, n, p, samples) {
            Err(e) => out.skipped.push(SkippedPrime { prime: p, reason: e.to_string() }),
            Ok(r) if !r.passed() && divides_any(p, critical) => out.skipped.push(SkippedPrime {
                prime: p,
                reason: format!("fails, but {p} divides a constant the decomposition assumed nonzero"),
            }),
            Ok(r) => {
                if !r.passed() {
                    failed = true;
                    if out.counterexample.is_none() {
                        out.counterexample = r.counterexample.clone().or_else(|| {
                            r.simple.iter().flat_map(|s| s.failures.first()).next().map(|d| Counterexample {
                                prime: p,
                                point: Vec::new(),
                                detail: d.clone(),
                            })
                        });
                    }
                }
                out.primes.push(r);
            }
        }
    }
    out.verdict = if failed {
        Verdict::Fail
    } else if out.primes.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    out
}
