use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::{self, ModPoly};
use super::{field, BadPrime};
use crate::algebraic::Var;
use crate::poly::Fp;
use crate::thomas::{Kind, SimpleSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleReport {
    pub prime: u64,
    pub fibers_checked: u64,
    pub failures: Vec<String>,
}

/// Values tried for a variable without an equation.
const BRANCH: usize = 6;

struct Level {
    poly: ModPoly,
    eq: bool,
    mdeg: usize,
}

/// Samples F_p-points of the system below each relation and checks that the
/// initial does not vanish there and that the specialized polynomial has
/// `mdeg` distinct roots in the algebraic closure.
pub fn check_simple(s: &SimpleSystem<Var>, n: usize, p: u64, samples: usize, seed: u64) -> Result<SimpleReport, BadPrime> {
    let f = field(p)?;
    let mut levels: Vec<Option<Level>> = (0..n).map(|_| None).collect();
    let mut max_deg = 0;
    for r in &s.relations {
        let x = r.leader().expect("nonconstant relation").0 as usize;
        let poly = ModPoly::new(&r.poly, n, f).ok_or(BadPrime::Denominator(p))?;
        if poly.max_deg() as u64 >= p {
            return Err(BadPrime::Degree(p));
        }
        max_deg = max_deg.max(poly.max_deg());
        levels[x] = Some(Level { poly, eq: r.kind == Kind::Eq, mdeg: r.poly.mdeg() as usize });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SimpleReport { prime: p, fibers_checked: 0, failures: Vec::new() };
    for k in 0..n {
        let Some(level) = &levels[k] else { continue };
        let mut points = Vec::new();
        let mut partial = vec![0; n];
        collect(&levels, f, max_deg, 0, k, &mut partial, &mut points, samples, &mut rng);
        for pt in points {
            report.fibers_checked += 1;
            let pows = modp::power_table(f, &pt, max_deg);
            let u = level.poly.specialize(f, &pows, k);
            let what = if level.eq { "equation" } else { "inequation" };
            if modp::deg(&u) != Some(level.mdeg) {
                report.failures.push(format!("initial of the {what} at variable {k} vanishes at {:?}", &pt[..k]));
            } else if modp::deg(&modp::radical(f, &u)) != Some(level.mdeg) {
                report.failures.push(format!("{what} at variable {k} is not square-free at {:?}", &pt[..k]));
            }
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn collect(
    levels: &[Option<Level>],
    f: Fp,
    max_deg: u32,
    j: usize,
    k: usize,
    partial: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    cap: usize,
    rng: &mut ChaCha8Rng,
) {
    if out.len() >= cap {
        return;
    }
    if j == k {
        out.push(partial.clone());
        return;
    }
    let candidates: Vec<u64> = match &levels[j] {
        Some(level) => {
            let pows = modp::power_table(f, partial, max_deg);
            let u = level.poly.specialize(f, &pows, j);
            let ok: Vec<u64> = (0..f.p).filter(|&x| (modp::eval(f, &u, x) == 0) == level.eq).collect();
            if level.eq {
                ok
            } else {
                pick(ok, rng)
            }
        }
        None => pick((0..f.p).collect(), rng),
    };
    for v in candidates {
        partial[j] = v;
        collect(levels, f, max_deg, j + 1, k, partial, out, cap, rng);
    }
    partial[j] = 0;
}

fn pick(mut values: Vec<u64>, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if values.len() <= BRANCH {
        return values;
    }
    let ends = [values[0], values[values.len() - 1]];
    values.shuffle(rng);
    let mut out: Vec<u64> = values.into_iter().filter(|v| !ends.contains(v)).take(BRANCH - 2).collect();
    out.extend(ends);
    out.sort_unstable();
    out.dedup();
    out
}
