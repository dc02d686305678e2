use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use thomas_core::poly::{
    content_free, evaluate, evaluate_below, evaluate_mod, factor, gcd, normalize_sign, parse_poly, pquo, prem,
    prem_multiplier, primitive_rational, squarefree_decomposition, squarefree_part_rational, subresultant_prs, Fp,
    Monomial, PrsCache,
};
use thomas_core::{Poly, Ranking, Rational, Var};

fn r(vars: &[&str]) -> Ranking {
    Ranking::new(vars).unwrap()
}

fn p(rk: &Ranking, s: &str) -> Poly<Var> {
    rk.parse(s).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[test]
fn prem_example_needs_one_multiplication() {
    let rk = r(&["y", "x"]);
    let x = rk.var("x").unwrap();
    let a = p(&rk, "x^2 + y^2*x + x + y");
    let b = p(&rk, "y*x^2 - 1");
    assert_eq!(prem(&a, &b, &x), p(&rk, "(y^3 + y)*x + y^2 + 1"));
    assert_eq!(prem_multiplier(&a, &b, &x), p(&rk, "y"));
    let lhs = &prem_multiplier(&a, &b, &x) * &a;
    let rhs = &(&pquo(&a, &b, &x) * &b) + &prem(&a, &b, &x);
    assert_eq!(lhs, rhs);
}

#[test]
fn prem_by_itself_vanishes() {
    let rk = r(&["a", "x"]);
    let x = rk.var("x").unwrap();
    let a = p(&rk, "a*x^3 - x + a^2");
    assert!(prem(&a, &a, &x).is_zero());
}

#[test]
fn prem_by_linear_is_evaluation() {
    let rk = r(&["x"]);
    let x = rk.var("x").unwrap();
    assert_eq!(prem(&p(&rk, "x^3"), &p(&rk, "x - 1"), &x), Poly::one());
    assert!(prem_multiplier(&p(&rk, "x^3"), &p(&rk, "x - 1"), &x).is_one());
}

#[test]
fn prs_of_square_and_derivative() {
    let rk = r(&["a", "x"]);
    let x = rk.var("x").unwrap();
    let s = subresultant_prs(&p(&rk, "x^2 - a"), &p(&rk, "2*x"), &x);
    assert_eq!(s.res(0), &p(&rk, "-4*a"));
    assert_eq!(s.res(1), &Poly::int(2));
    assert_eq!(s.res(2), &Poly::one());
}

#[test]
fn prs_cubic_and_quadratic() {
    let rk = r(&["y", "x"]);
    let x = rk.var("x").unwrap();
    let s = subresultant_prs(&p(&rk, "x^3 + y"), &p(&rk, "x^2 + x + y + 1"), &x);
    assert_eq!(s.res(0), &p(&rk, "y^3 + 7*y^2 + 5*y + 1"));
    assert_eq!(s.res(1), &p(&rk, "-y"));
    assert_eq!(s.res(2), &Poly::one());
    assert_eq!(s.res(3), &Poly::one());
    assert_eq!(s.prs(3), &p(&rk, "x^3 + y"));
    assert_eq!(s.prs(2), &p(&rk, "x^2 + x + y + 1"));
}

#[test]
fn prs_boundary_conventions() {
    let rk = r(&["a", "x"]);
    let x = rk.var("x").unwrap();
    let s = subresultant_prs(&p(&rk, "x^4 + a"), &p(&rk, "x - a"), &x);
    assert!(s.res(4).is_one());
    assert!(s.prs(3).is_zero() && s.prs(2).is_zero());
    assert_eq!(s.res(1), &Poly::one());
    assert_eq!(s.res(0), &p(&rk, "a^4 + a"));
}

#[test]
fn prs_cache_counts() {
    let rk = r(&["a", "x"]);
    let x = rk.var("x").unwrap();
    let cache = PrsCache::new();
    let (f, g) = (p(&rk, "x^2 - a"), p(&rk, "2*x"));
    let first = cache.get(&f, &g, &x);
    let second = cache.get(&f, &g, &x);
    assert_eq!(first.res(0), second.res(0));
    assert_eq!((cache.hits(), cache.misses()), (1, 1));
}

#[test]
fn derivatives() {
    let rk = r(&["a", "b", "c", "y", "x"]);
    let x = rk.var("x").unwrap();
    assert_eq!(p(&rk, "a*x^2 + b*x + c").derivative(&x), p(&rk, "2*a*x + b"));
    assert!(p(&rk, "y^3").derivative(&x).is_zero());
    assert_eq!(p(&rk, "x^2 + x + y + 1").derivative(&x), p(&rk, "2*x + 1"));
}

#[test]
fn content_and_sign() {
    let rk = r(&["y", "x"]);
    assert_eq!(content_free(&p(&rk, "y^2*x^2 + y^2")), p(&rk, "x^2 + 1"));
    assert_eq!(content_free(&p(&rk, "2*x + 4")), p(&rk, "x + 2"));
    assert_eq!(normalize_sign(&p(&rk, "-x + 1")), p(&rk, "x - 1"));
    let (c, pp) = primitive_rational(&p(&rk, "-3/2*x + 6"));
    assert_eq!(c, Rational::new((-3).into(), 2.into()));
    assert_eq!(pp, p(&rk, "x - 4"));
}

#[test]
fn squarefree_and_factor() {
    let rk = r(&["y", "x"]);
    let x = rk.var("x").unwrap();
    assert_eq!(squarefree_part_rational(&p(&rk, "(x + 1)^2"), &x), p(&rk, "x + 1"));
    let f = factor(&p(&rk, "x^2 - 1"));
    let mut fs: Vec<Poly<Var>> = f.factors.iter().map(|(g, e)| {
        assert_eq!(*e, 1);
        g.clone()
    }).collect();
    fs.sort();
    let mut want = vec![p(&rk, "x - 1"), p(&rk, "x + 1")];
    want.sort();
    assert_eq!(fs, want);
    assert_eq!(f.expand(), p(&rk, "x^2 - 1"));
}

#[test]
fn factor_splits_content_and_powers() {
    let rk = r(&["y", "x"]);
    let f = factor(&p(&rk, "6*y^2*(x + y)^3*(x - 2)"));
    assert_eq!(f.expand(), p(&rk, "6*y^2*(x + y)^3*(x - 2)"));
    assert!(f.factors.contains(&(p(&rk, "y"), 2)));
    assert!(f.factors.contains(&(p(&rk, "x + y"), 3)));
    assert!(f.factors.contains(&(p(&rk, "x - 2"), 1)));
}

#[test]
fn yun_decomposition() {
    let rk = r(&["x"]);
    let x = rk.var("x").unwrap();
    let d = squarefree_decomposition(&p(&rk, "(x - 1)*(x + 2)^2*(x^2 + 1)^3"), &x);
    assert_eq!(d, vec![(p(&rk, "x - 1"), 1), (p(&rk, "x + 2"), 2), (p(&rk, "x^2 + 1"), 3)]);
}

#[test]
fn evaluation_examples() {
    let rk = r(&["y", "x"]);
    let (y, x) = (rk.var("y").unwrap(), rk.var("x").unwrap());
    let v = evaluate(&p(&rk, "x + y"), &|v: &Var| if *v == x { q(1) } else { q(2) });
    assert_eq!(v, q(3));

    let rk = r(&["a", "b", "c", "x"]);
    let (a, x) = (rk.var("a").unwrap(), rk.var("x").unwrap());
    let quad = p(&rk, "a*x^2 + b*x + c");
    let at = evaluate_below(&quad, &x, &|v: &Var| if *v == a { q(0) } else { q(3) });
    assert_eq!(at, p(&rk, "3*x + 3"));

    let rk1 = r(&["x"]);
    let v = evaluate_mod(&p(&rk1, "x^2 + x + 1"), Fp::new(7), &|_| 2).unwrap();
    assert_eq!(v, 0);
    let _ = y;
}

#[test]
fn gcd_examples() {
    let rk = r(&["a", "x"]);
    let g = gcd(&p(&rk, "(x - a)*(x + 1)*a"), &p(&rk, "(x - a)*(x - 1)*a^2"));
    assert_eq!(g, p(&rk, "a*x - a^2"));
    assert!(gcd(&p(&rk, "x^2 + 1"), &p(&rk, "x + a")).is_one());
}

#[test]
fn parse_errors_and_round_trip() {
    let rk = r(&["a", "x"]);
    let e = rk.parse("x^2 + ").unwrap_err();
    assert_eq!(e.offset, 4);
    let e = rk.parse("x^").unwrap_err();
    assert!(e.message.contains("exponent"));
    assert!(rk.parse("z + 1").unwrap_err().message.contains("undeclared"));
    let s = p(&rk, "(a - 1/2)*x^3 - 7*a*x + 2");
    assert_eq!(rk.parse(&rk.format(&s)).unwrap(), s);
    let jet = parse_poly::<Var, _>("u[1,0]", |_, idx| {
        assert_eq!(idx, Some(&[1u32, 0][..]));
        Ok(Var(0))
    });
    assert_eq!(jet.unwrap(), Poly::var(Var(0)));
}

#[test]
fn init_tail_and_coefficients() {
    let rk = r(&["a", "b", "x"]);
    let x = rk.var("x").unwrap();
    let f = p(&rk, "(a + b)*x^2 - b*x + 3");
    assert_eq!(f.leader(), Some(&x));
    assert_eq!(f.mdeg(), 2);
    assert_eq!(f.init(), p(&rk, "a + b"));
    assert_eq!(f.tail(), p(&rk, "-b*x + 3"));
    assert_eq!(Poly::from_coefficients(&x, &f.coefficients(&x)), f);
    assert_eq!(Poly::<Var>::int(5).leader(), None);
}

// generators over three variables

fn arb_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Poly<Var>> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, 0..=max_exp, -6i64..=6), 0..=max_terms).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|(e0, e1, e2, c)| {
            let m = Monomial::from_pairs(vec![(Var(0), e0), (Var(1), e1), (Var(2), e2)]);
            (m, q(c))
        }))
    })
}

fn with_x(max_terms: usize) -> impl Strategy<Value = Poly<Var>> {
    arb_poly(max_terms, 3).prop_filter("involves the top variable", |p| p.degree(&Var(2)) > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pseudo_division_identity(a in with_x(5), b in with_x(4)) {
        let x = Var(2);
        let m = prem_multiplier(&a, &b, &x);
        let rem = prem(&a, &b, &x);
        prop_assert_eq!(&m * &a, &(&pquo(&a, &b, &x) * &b) + &rem);
        prop_assert!(rem.is_zero() || rem.degree(&x) < b.degree(&x));
        let init = b.init();
        let mut power = Poly::one();
        let mut found = false;
        for _ in 0..=a.degree(&x) + 1 {
            if power.div_exact(&m).is_some() {
                found = true;
                break;
            }
            power = &power * &init;
        }
        prop_assert!(found, "multiplier does not divide a power of the initial");
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_poly(4, 2), b in arb_poly(4, 2), c in arb_poly(4, 2), pt in prop::array::uniform3(-5i64..5)) {
        let val = |v: &Var| q(pt[v.0 as usize]);
        let lhs = evaluate(&(&(&a * &b) + &c), &val);
        prop_assert_eq!(lhs, evaluate(&a, &val) * evaluate(&b, &val) + evaluate(&c, &val));
    }

    #[test]
    fn factor_product_is_input(a in with_x(3), b in with_x(3)) {
        let f = &a * &b;
        let fac = factor(&f);
        prop_assert!(fac.unit > Rational::zero() || fac.unit < Rational::zero());
        prop_assert_eq!(fac.expand(), f);
    }

    #[test]
    fn content_free_is_idempotent(a in with_x(5)) {
        let c = content_free(&a);
        prop_assert_eq!(content_free(&c), c.clone());
        prop_assert_eq!(normalize_sign(&normalize_sign(&a)), normalize_sign(&a));
        prop_assert!(a.div_exact(&c).is_some());
    }

    #[test]
    fn gcd_divides_both(a in arb_poly(3, 2), b in arb_poly(3, 2), g in with_x(2)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let fa = &a * &g;
        let fb = &b * &g;
        let d = gcd(&fa, &fb);
        prop_assert!(fa.div_exact(&d).is_some());
        prop_assert!(fb.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&primitive_rational(&g).1).is_some());
    }

    #[test]
    fn squarefree_part_has_simple_roots(a in with_x(3), e in 1u32..3) {
        let x = Var(2);
        let f = &a.pow(e + 1) * &a;
        let s = squarefree_part_rational(&f, &x);
        let t = squarefree_part_rational(&a, &x);
        prop_assert_eq!(s, t);
    }

    #[test]
    fn format_parse_round_trip(a in arb_poly(6, 3)) {
        let rk = r(&["a", "b", "x"]);
        prop_assert_eq!(rk.parse(&rk.format(&a)).unwrap(), a);
    }
}

#[test]
fn rational_arithmetic_keeps_lowest_terms() {
    let rk = r(&["x"]);
    let f = p(&rk, "2/4*x + 3/9");
    for (_, c) in f.terms() {
        assert!(num_integer::Integer::gcd(c.numer(), c.denom()).is_one());
    }
    assert_eq!(f, p(&rk, "1/2*x + 1/3"));
}
