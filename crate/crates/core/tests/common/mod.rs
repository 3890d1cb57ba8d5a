#![allow(dead_code)]

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use regulous::blowup::{decide_regulous2, Budget, Verdict};
use regulous::ideal::{verify_nss_certificate, NssCert};
use regulous::poly::gcd;
use regulous::ratfun::{arc_limit, jet, multi_indices};
use regulous::rational::{rat, ratio};
use regulous::{parse_expr, Ambient, Arc, Expr, ExtValue, Monomial, Poly, RatFun, Rational, Side};

pub const CASES: u32 = 200;

pub fn config() -> Config {
    Config { cases: CASES, failure_persistence: None, ..Config::default() }
}

/// Runs `check` on `CASES` inputs; `Err` carries the minimal failing input.
pub fn run<S, F>(strategy: S, check: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    TestRunner::new(config()).run(&strategy, check).map_err(|e| e.to_string())
}

pub fn poly2(terms: Vec<(u32, u32, i64)>) -> Poly {
    let a = Ambient::xy();
    Poly::from_terms(&a, terms.into_iter().map(|(i, j, c)| (Monomial(vec![i, j]), rat(c))))
}

pub fn small_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -5i64..=5), 0..=max_terms).prop_map(poly2)
}

pub fn nonzero_poly(max_deg: u32) -> impl Strategy<Value = Poly> {
    small_poly(max_deg, 4).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn point2() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d)), 2)
}

pub fn ratfun2() -> impl Strategy<Value = RatFun> {
    (small_poly(3, 4), nonzero_poly(2)).prop_map(|(p, q)| RatFun::new(p, q).unwrap())
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn triples() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (small_poly(3, 4), small_poly(3, 4), small_poly(3, 4))
}

pub fn ring_axioms((a, b, c): (Poly, Poly, Poly)) -> Result<(), TestCaseError> {
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a + &(-&a), Poly::zero(a.ambient()));
    prop_assert_eq!(&a * &Poly::one(a.ambient()), a.clone());
    prop_assert!((&a * &b).is_canonical());
    Ok(())
}

pub fn gcd_triples() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (nonzero_poly(2), nonzero_poly(2), nonzero_poly(2))
}

/// gcd(ac, bc) divides both products and is divisible by c.
pub fn gcd_divides((a, b, c): (Poly, Poly, Poly)) -> Result<(), TestCaseError> {
    let (ac, bc) = (&a * &c, &b * &c);
    let g = gcd(&ac, &bc);
    prop_assert!(ac.div_exact(&g).is_some());
    prop_assert!(bc.div_exact(&g).is_some());
    prop_assert!(g.div_exact(&c).is_some());
    let (u, v) = (ac.div_exact(&g).unwrap(), bc.div_exact(&g).unwrap());
    prop_assert!(gcd(&u, &v).is_one());
    Ok(())
}

pub fn pairs() -> impl Strategy<Value = (RatFun, RatFun)> {
    (ratfun2(), ratfun2())
}

/// Every entry of the order-2 jet of fg against the Leibniz sum.
pub fn jet_leibniz((f, g): (RatFun, RatFun)) -> Result<(), TestCaseError> {
    let fg = f.mul(&g).unwrap();
    let (jf, jg, jfg) = (jet(&f, 2), jet(&g, 2), jet(&fg, 2));
    for idx in multi_indices(2, 2) {
        let mut sum = RatFun::zero(f.ambient());
        for i in 0..=idx[0] {
            for j in 0..=idx[1] {
                let c = rat(binom(idx[0], i) * binom(idx[1], j));
                let term = jf.get(&[i, j]).unwrap().mul(jg.get(&[idx[0] - i, idx[1] - j]).unwrap()).unwrap();
                sum = sum.add(&term.scale(&c)).unwrap();
            }
        }
        prop_assert_eq!(jfg.get(&idx).unwrap(), &sum);
    }
    Ok(())
}

pub type ArcCase = (Poly, i64, (u32, u32), i64, Vec<i64>, (i64, i64));

/// `q + c x^i y^j / (x^2 + d y^2)` with `i + j >= 3`, and an arc at one of a few base points.
pub fn arc_cases() -> impl Strategy<Value = ArcCase> {
    (
        small_poly(2, 3),
        -4i64..=4,
        (0u32..=3, 0u32..=3).prop_filter("order >= 3", |(i, j)| i + j >= 3),
        1i64..=3,
        prop::collection::vec(-3i64..=3, 4).prop_filter("nonconstant", |c| c[0] != 0 || c[2] != 0),
        prop::sample::select(vec![(0i64, 0i64), (0, 0), (1, 0), (0, -1), (2, 1)]),
    )
}

/// Both one-sided arc limits equal the value of the decided extension, and at
/// the origin that value is `q(0)`.
pub fn arc_limit_agrees((q, c, (i, j), d, coeffs, base): ArcCase) -> Result<(), TestCaseError> {
    let den = poly2(vec![(2, 0, 1), (0, 2, d)]);
    let f = RatFun::from_poly(q.clone()).add(&RatFun::new(poly2(vec![(i, j, c)]), den).unwrap()).unwrap();
    let b = [rat(base.0), rat(base.1)];
    let arc = Arc::polynomial(&b, &[vec![rat(coeffs[0]), rat(coeffs[1])], vec![rat(coeffs[2]), rat(coeffs[3])]]);
    let Verdict::Regulous { values, .. } = decide_regulous2(&f, 0, Budget::default()).unwrap() else {
        return Err(TestCaseError::fail("not decided regulous"));
    };
    let expected = match f.evaluate(&b).unwrap() {
        Some(v) => v,
        None => values.iter().find(|(p, _)| p[..] == b[..]).map(|(_, v)| v.clone()).unwrap(),
    };
    if b.iter().all(Zero::is_zero) {
        prop_assert_eq!(&expected, &q.evaluate(&b).unwrap());
    }
    prop_assert_eq!(arc_limit(&f, &arc, Side::Plus).unwrap(), ExtValue::Finite(expected.clone()));
    prop_assert_eq!(arc_limit(&f, &arc, Side::Minus).unwrap(), ExtValue::Finite(expected));
    Ok(())
}

pub type NssCase = (Vec<Poly>, Vec<Poly>, i64);

pub fn nss_cases() -> impl Strategy<Value = NssCase> {
    (prop::collection::vec(nonzero_poly(2), 1..=3), prop::collection::vec(small_poly(2, 3), 3), -3i64..=3)
}

/// Builds a valid certificate, round-trips it through JSON, re-verifies it,
/// and checks that a perturbed target is rejected.
pub fn nss_round_trip((gens, hs, c): NssCase) -> Result<(), TestCaseError> {
    let a = Ambient::xy();
    let canopy = parse_expr("x^3/(x^2+y^2)", &a).unwrap();
    let multipliers: Vec<Expr> = gens
        .iter()
        .zip(&hs)
        .map(|(_, h)| Expr::add(Expr::from_poly(h), Expr::mul(Expr::num(rat(c)), canopy.clone())))
        .collect();
    let mut target = RatFun::zero(&a);
    for (g, h) in gens.iter().zip(&multipliers) {
        target = target.add(&RatFun::from_poly(g.clone()).mul(&h.to_ratfun(&a).unwrap()).unwrap()).unwrap();
    }
    let cert = NssCert {
        ambient: a.clone(),
        generators: gens.iter().map(Expr::from_poly).collect(),
        target: Expr::from_ratfun(&target),
        k: 0,
        n: 1,
        multipliers,
    };
    let j = serde_json::to_string(&cert.to_json()).unwrap();
    let back = NssCert::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    prop_assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), j);
    prop_assert!(verify_nss_certificate(&back, Budget::default()).unwrap().is_valid());
    let mut tampered = back.clone();
    tampered.target = Expr::add(tampered.target, Expr::num(Rational::one()));
    prop_assert!(!verify_nss_certificate(&tampered, Budget::default()).unwrap().is_valid());
    Ok(())
}
