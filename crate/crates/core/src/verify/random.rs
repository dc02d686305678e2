use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebraic::Var;
use crate::poly::{Monomial, Poly, Rational};
use crate::thomas::Relation;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n_vars: usize,
    /// Bound on the total degree of each term.
    pub max_deg: u32,
    pub n_rels: usize,
    /// Probability that a relation is an inequation.
    pub ineq_ratio: f64,
    pub max_terms: usize,
    /// Coefficients are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { n_vars: 3, max_deg: 3, n_rels: 3, ineq_ratio: 0.25, max_terms: 4, coeff_bound: 5 }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, params: &RandomParams) -> Poly<Var> {
    loop {
        let terms = rng.gen_range(1..=params.max_terms.max(1));
        let mut p = Poly::zero();
        for _ in 0..terms {
            let mut exps = vec![0u32; params.n_vars];
            for _ in 0..rng.gen_range(0..=params.max_deg) {
                exps[rng.gen_range(0..params.n_vars)] += 1;
            }
            let pairs: Vec<(Var, u32)> =
                exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(v, e)| (Var(v as u32), *e)).collect();
            let c = rng.gen_range(-params.coeff_bound..=params.coeff_bound);
            if c != 0 {
                p = &p + &Poly::monomial(Monomial::from_pairs(pairs), Rational::from_integer(c.into()));
            }
        }
        if !p.is_constant() {
            return p;
        }
    }
}

/// A reproducible random system over the variables `Var(0)..Var(n_vars)`.
pub fn random_system(seed: u64, params: &RandomParams) -> Vec<Relation<Var>> {
    assert!(params.n_vars > 0, "need at least one variable");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..params.n_rels)
        .map(|_| {
            let p = random_poly(&mut rng, params);
            if rng.gen_bool(params.ineq_ratio.clamp(0.0, 1.0)) {
                Relation::neq(p)
            } else {
                Relation::eq(p)
            }
        })
        .collect()
}
