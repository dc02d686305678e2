use num_bigint::BigInt;
use proptest::prelude::*;
use thomas_core::poly::{subresultant_prs, Monomial};
use thomas_core::verify::*;
use thomas_core::{algebraic, Options, Poly, Ranking, Rational, Relation, SimpleSystem, Var};

fn rk(vars: &[&str]) -> Ranking {
    Ranking::new(vars).unwrap()
}

fn eq(r: &Ranking, s: &str) -> Relation<Var> {
    Relation::eq(r.parse(s).unwrap())
}

fn neq(r: &Ranking, s: &str) -> Relation<Var> {
    Relation::neq(r.parse(s).unwrap())
}

#[test]
fn enumeration_counts_over_f7() {
    let r = rk(&["a", "x"]);
    let one = enumerate_solutions(&[eq(&r, "x^2 + x + 1")], 2, 7).unwrap();
    assert_eq!(one.len(), 14);
    assert!(one.iter().all(|pt| pt[1] == 2 || pt[1] == 4));
    let two = enumerate_solutions(&[eq(&r, "x^2 + x + 1"), neq(&r, "x + a")], 2, 7).unwrap();
    assert_eq!(two.len(), 12);
    assert!(!two.contains(&vec![5, 2]) && !two.contains(&vec![3, 4]));
    assert!(enumerate_solutions(&[Relation::eq(Poly::one())], 2, 7).unwrap().is_empty());
}

#[test]
fn enumeration_rejects_bad_primes() {
    let r = rk(&["x"]);
    assert_eq!(enumerate_solutions(&[eq(&r, "1/7*x + 1")], 1, 7), Err(BadPrime::Denominator(7)));
    assert_eq!(enumerate_solutions(&[eq(&r, "x")], 1, 8), Err(BadPrime::NotPrime(8)));
}

#[test]
fn worked_example_counts() {
    let r = rk(&["a", "x"]);
    let input = vec![eq(&r, "x^2 + x + 1"), neq(&r, "x + a")];
    let s1 = SimpleSystem { relations: vec![neq(&r, "a^2 - a + 1"), eq(&r, "x^2 + x + 1")] };
    let s2 = SimpleSystem { relations: vec![eq(&r, "a^2 - a + 1"), eq(&r, "x - a + 1")] };
    let rep = check_prime(&input, &[s1.clone(), s2.clone()], 2, 7, 20).unwrap();
    assert_eq!(rep.input_count, Some(12));
    assert_eq!(rep.system_counts, Some(vec![10, 2]));
    assert!(rep.passed() && rep.exhaustive);
    assert_eq!(enumerate_solutions(&s2.relations, 2, 7).unwrap(), vec![vec![3, 2], vec![5, 4]]);
    let s1_points = enumerate_solutions(&s1.relations, 2, 7).unwrap();
    assert!(s1_points.iter().all(|pt| pt[0] != 3 && pt[0] != 5));
}

#[test]
fn goldens_pass_on_two_primes() {
    let cases: Vec<(Ranking, Vec<&str>, Vec<&str>)> = vec![
        (rk(&["a", "b", "c", "x"]), vec!["a*x^2 + b*x + c"], vec![]),
        (rk(&["y", "x"]), vec!["x^3 + (3*y + 1)*x^2 + (3*y^2 + 2*y)*x + y^3"], vec![]),
        (rk(&["a", "x"]), vec!["x^2 + x + 1"], vec!["x + a"]),
    ];
    for (r, eqs, neqs) in cases {
        let mut input: Vec<_> = eqs.iter().map(|s| eq(&r, s)).collect();
        input.extend(neqs.iter().map(|s| neq(&r, s)));
        let d = algebraic::decompose(&input, &Options::default()).unwrap();
        let rep = check_decomposition(&input, &d.systems, &d.critical, r.len(), &[11, 101, 1009], 20);
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep.counterexample);
        assert!(rep.usable_primes() >= 2);
    }
}

#[test]
fn quadratic_over_f11_is_exhaustive() {
    let r = rk(&["a", "b", "c", "x"]);
    let input = vec![eq(&r, "a*x^2 + b*x + c")];
    let d = algebraic::decompose(&input, &Options::default()).unwrap();
    let rep = check_prime(&input, &d.systems, 4, 11, 20).unwrap();
    assert!(rep.union_equal && rep.disjoint && rep.exhaustive);
    let counts = rep.system_counts.unwrap();
    assert_eq!(counts.iter().sum::<u64>(), rep.input_count.unwrap());
    let full = enumerate_solutions(&input, 4, 11).unwrap().len() as u64;
    assert_eq!(rep.input_count, Some(full));
}

#[test]
fn identity_decomposition_passes() {
    let r = rk(&["a", "x"]);
    let input = vec![eq(&r, "x^2 + x + 1")];
    let same = vec![SimpleSystem { relations: input.clone() }];
    let rep = check_decomposition(&input, &same, &[], 2, &[7, 13], 20);
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn missing_system_fails_with_a_counterexample() {
    let r = rk(&["a", "x"]);
    let input = vec![eq(&r, "x^2 + x + 1"), neq(&r, "x + a")];
    let partial = vec![SimpleSystem { relations: vec![neq(&r, "a^2 - a + 1"), eq(&r, "x^2 + x + 1")] }];
    let rep = check_decomposition(&input, &partial, &[], 2, &[7, 13], 0);
    assert_eq!(rep.verdict, Verdict::Fail);
    let ce = rep.counterexample.unwrap();
    assert_eq!(ce.prime, 7);
    assert!(ce.point == vec![3] || ce.point == vec![5]);
}

#[test]
fn overlapping_systems_fail() {
    let r = rk(&["a", "x"]);
    let input = vec![eq(&r, "x^2 + x + 1")];
    let twice = vec![SimpleSystem { relations: input.clone() }, SimpleSystem { relations: input.clone() }];
    let rep = check_prime(&input, &twice, 2, 7, 0).unwrap();
    assert!(!rep.disjoint);
    assert_eq!(check_decomposition(&input, &twice, &[], 2, &[7], 0).verdict, Verdict::Fail);
}

#[test]
fn critical_primes_are_skipped_not_failed() {
    let r = rk(&["a", "x"]);
    let input = vec![eq(&r, "x^2 + x + 1")];
    let twice = vec![SimpleSystem { relations: input.clone() }, SimpleSystem { relations: input.clone() }];
    let rep = check_decomposition(&input, &twice, &[BigInt::from(21)], 2, &[7], 0);
    assert_eq!(rep.verdict, Verdict::Inconclusive);
    assert_eq!(rep.skipped.len(), 1);
    assert!(divides_any(3, &[BigInt::from(21)]));
    assert!(!divides_any(5, &[BigInt::from(21)]));
}

#[test]
fn all_bad_primes_are_inconclusive() {
    let r = rk(&["x"]);
    let input = vec![eq(&r, "1/7*x + 1/11")];
    let d = algebraic::decompose(&input, &Options::default()).unwrap();
    let rep = check_decomposition(&input, &d.systems, &d.critical, 1, &[7, 11, 4], 5);
    assert_eq!(rep.verdict, Verdict::Inconclusive);
    assert_eq!(rep.skipped.len(), 3);
    let rep = check_decomposition(&input, &d.systems, &d.critical, 1, &[7, 13], 5);
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn large_primes_use_a_subgrid() {
    let r = rk(&["a", "b", "x"]);
    let input = vec![eq(&r, "a*x^2 + b")];
    let d = algebraic::decompose(&input, &Options::default()).unwrap();
    let rep = check_prime(&input, &d.systems, 3, 1009, 10).unwrap();
    assert!(!rep.exhaustive);
    assert!(rep.points <= PREFIX_LIMIT);
    assert!(rep.input_count.is_none());
    assert!(rep.passed());
}

#[test]
fn simple_check_on_golden_systems() {
    let r = rk(&["a", "b", "c", "x"]);
    let s = SimpleSystem { relations: vec![neq(&r, "a"), neq(&r, "4*a*c - b^2"), eq(&r, "a*x^2 + b*x + c")] };
    let rep = check_simple(&s, 4, 101, 50, 1).unwrap();
    assert!(rep.failures.is_empty() && rep.fibers_checked > 0);

    let s = SimpleSystem { relations: vec![eq(&r, "a"), eq(&r, "b"), eq(&r, "c")] };
    assert!(check_simple(&s, 4, 101, 50, 1).unwrap().failures.is_empty());

    let r = rk(&["y", "x"]);
    let s = SimpleSystem {
        relations: vec![eq(&r, "27*y^3 - 4*y"), eq(&r, "6*x^2 + (-27*y^2 + 12*y + 6)*x - 3*y^2 + 2*y")],
    };
    let rep = check_simple(&s, 2, 101, 50, 1).unwrap();
    assert!(rep.failures.is_empty());
    let roots = enumerate_solutions(&s.relations[..1], 1, 101).unwrap().len() as u64;
    assert_eq!(rep.fibers_checked, 1 + roots);
}

#[test]
fn simple_check_catches_non_simple_systems() {
    let r = rk(&["a", "x"]);
    let s = SimpleSystem { relations: vec![eq(&r, "x^2 - a")] };
    let rep = check_simple(&s, 2, 11, 20, 1).unwrap();
    assert!(rep.failures.iter().any(|f| f.contains("square-free")));
    let s = SimpleSystem { relations: vec![eq(&r, "a*x - 1")] };
    let rep = check_simple(&s, 2, 11, 20, 1).unwrap();
    assert!(rep.failures.iter().any(|f| f.contains("initial")));
}

#[test]
fn sylvester_examples() {
    let r = rk(&["a", "x"]);
    let x = r.var("x").unwrap();
    let p = r.parse("x^2 - a").unwrap();
    assert_eq!(sylvester_resultant(&p, &r.parse("2*x").unwrap(), &x), r.parse("-4*a").unwrap());
    assert!(sylvester_resultant(&p, &p, &x).is_zero());
    let q = r.parse("x^3 + a*x - 1").unwrap();
    assert_eq!(sylvester_resultant(&q, &p, &x), subresultant_prs(&q, &p, &x).res(0).clone());
}

#[test]
fn random_systems_are_reproducible() {
    let params = RandomParams::default();
    assert_eq!(random_system(42, &params), random_system(42, &params));
    assert_ne!(random_system(42, &params), random_system(43, &params));
    for rel in random_system(7, &params) {
        let total: u32 = rel.poly.terms().iter().map(|(m, _)| m.pairs().iter().map(|(_, e)| *e).sum::<u32>()).max().unwrap();
        assert!(total <= params.max_deg);
    }
}

#[test]
fn empty_random_system() {
    let params = RandomParams { n_rels: 0, ..RandomParams::default() };
    let input = random_system(3, &params);
    assert!(input.is_empty());
    let d = algebraic::decompose(&input, &Options::default()).unwrap();
    assert_eq!(d.systems, vec![SimpleSystem { relations: vec![] }]);
    let rep = check_prime(&input, &d.systems, 3, 11, 5).unwrap();
    assert_eq!(rep.input_count, Some(11 * 11 * 11));
    assert!(rep.passed());
}

#[test]
fn small_fuzz_batch() {
    let params = RandomParams { n_vars: 2, ..RandomParams::default() };
    for seed in 0..25 {
        let input = random_system(seed, &params);
        let d = algebraic::decompose(&input, &Options::default()).unwrap();
        let rep = check_decomposition(&input, &d.systems, &d.critical, 2, &[101, 211], 10);
        assert_eq!(rep.verdict, Verdict::Pass, "seed {seed}: {:?}", rep.counterexample);
    }
}

fn arb_coeff_poly(max_deg: u32) -> impl Strategy<Value = Poly<Var>> {
    // coefficients in Z[a] with small entries, then x^k
    prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..=(max_deg as usize + 1)).prop_map(|cs| {
        Poly::from_terms(cs.into_iter().enumerate().flat_map(|(k, ab)| {
            let k = k as u32;
            [
                (Monomial::from_pairs(vec![(Var(1), k)]), Rational::from_integer(ab[0].into())),
                (Monomial::from_pairs(vec![(Var(0), 1), (Var(1), k)]), Rational::from_integer(ab[1].into())),
            ]
        }))
    })
}

fn enumerate_grid(input: &[Relation<Var>], n: usize, p: u64) -> Vec<Vec<u64>> {
    enumerate_solutions(input, n, p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sylvester_matches_prs(p in arb_coeff_poly(4), q in arb_coeff_poly(4)) {
        let x = Var(1);
        let (p, q) = if p.degree(&x) >= q.degree(&x) { (p, q) } else { (q, p) };
        prop_assume!(q.degree(&x) >= 1 && p.degree(&x) > q.degree(&x));
        let s = sylvester_resultant(&p, &q, &x);
        let prs = subresultant_prs(&p, &q, &x);
        prop_assert_eq!(&s, prs.res(0));
        let sign = if (p.degree(&x) * q.degree(&x)) % 2 == 0 { s.clone() } else { -&s };
        prop_assert_eq!(sylvester_resultant(&q, &p, &x), sign);
    }

    #[test]
    fn enumeration_is_compositional(seed in any::<u64>()) {
        let params = RandomParams { n_vars: 2, n_rels: 3, ineq_ratio: 0.4, ..RandomParams::default() };
        let input = random_system(seed, &params);
        let all = enumerate_grid(&input, 2, 7);
        let mut meet: Vec<Vec<u64>> = enumerate_grid(&[], 2, 7);
        for r in &input {
            let here = enumerate_grid(std::slice::from_ref(r), 2, 7);
            meet.retain(|pt| here.contains(pt));
        }
        prop_assert_eq!(all, meet);
    }
}
