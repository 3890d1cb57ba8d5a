mod common;

use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;

use common::*;
use regulous::blowup::{
    battery_plane, blowup_point, decide_regulous2, kmax, pullback, stratify2, Budget, Chart, KMax, Verdict,
};
use regulous::consets::{closure_algorithm, zero_set2, ArcSymIncidence, ConstructibleSet, TableEntry};
use regulous::fixtures::{embedded, incidence};
use regulous::ideal::{loja_exponent, radical_generator, radical_membership, LojaCert, LojaOutcome, RadicalOutcome};
use regulous::poly::{gcd, isolate_real_roots};
use regulous::ratfun::{arc_limit, glue_regular, indeterminacy_candidates};
use regulous::rational::{rat, ratio};
use regulous::{parse_expr, parse_poly, Ambient, Arc, Expr, ExtValue, Poly, RatFun, Rational, Side, UniPoly};

fn f2(s: &str) -> RatFun {
    let a = Ambient::xy();
    parse_expr(s, &a).unwrap().to_ratfun(&a).unwrap()
}

fn cfg() -> ProptestConfig {
    config()
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn gcd_of_multiples_is_associate(a in nonzero_poly(2), b in nonzero_poly(2), g in nonzero_poly(2)) {
        let base = gcd(&a, &b);
        let lifted = gcd(&(&a * &g), &(&b * &g));
        prop_assert_eq!(lifted, (&g * &base).normalized());
    }

    #[test]
    fn root_count(roots in prop::collection::btree_set((-8i64..=8, 1i64..=3), 1..=4), c in 1i64..=5) {
        let rs: BTreeSet<Rational> = roots.iter().map(|(n, d)| ratio(*n, *d)).collect();
        let mut u = UniPoly::from_ints(&[c, 0, 1]);
        for r in &rs {
            u = u.mul(&UniPoly::new(vec![-r.clone(), rat(1)]));
        }
        let found = isolate_real_roots(&u).unwrap();
        prop_assert_eq!(found.len(), rs.len());
        for (root, r) in found.iter().zip(&rs) {
            prop_assert!(root.lower() <= r && r <= root.upper());
        }
        // Sign changes on a grid finer than the root spacing.
        let grid: Vec<Rational> = (-60..=60).map(|i| ratio(i, 6)).collect();
        let changes = grid.windows(2).filter(|w| u.sign_at(&w[0]) * u.sign_at(&w[1]) < 0).count();
        let on_grid = grid.iter().filter(|x| u.sign_at(x) == 0).count();
        prop_assert!(changes + on_grid >= rs.len().min(1) && changes <= rs.len());
    }

    #[test]
    fn arc_limit_on_domain(f in ratfun2(), base in point2(), dir in prop::collection::vec(-3i64..=3, 4)) {
        prop_assume!(dir[0] != 0 || dir[2] != 0);
        let arc = Arc::polynomial(&base, &[vec![rat(dir[0]), rat(dir[1])], vec![rat(dir[2]), rat(dir[3])]]);
        if let Some(v) = f.evaluate(&base).unwrap() {
            prop_assert_eq!(arc_limit(&f, &arc, Side::Plus).unwrap(), ExtValue::Finite(v));
        }
    }

    #[test]
    fn glue_agrees(f in ratfun2(), s in prop::collection::vec(nonzero_poly(1), 1..=3), x in point2()) {
        let pieces: Vec<(Poly, Poly, Poly)> = s.iter().map(|s| (f.num().clone(), f.den().clone(), s.clone())).collect();
        let glued = glue_regular(&pieces).unwrap();
        if let (Some(a), Some(b)) = (glued.evaluate(&x).unwrap(), f.evaluate(&x).unwrap()) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn chart_maps_compose(
        f in ratfun2(),
        path in prop::collection::vec((any::<bool>(), -1i64..=1, -1i64..=1), 1..=3),
    ) {
        let mut chart = Chart::root(&f);
        for (first, a, b) in path {
            let parent = chart.clone();
            let (ca, cb) = blowup_point(&parent, &[rat(a), rat(b)]);
            chart = if first { ca } else { cb };
            let local = if first {
                [parse_poly(&format!("{a} + u"), &["u", "v"]).unwrap(), parse_poly(&format!("{b} + u*v"), &["u", "v"]).unwrap()]
            } else {
                [parse_poly(&format!("{a} + u*v"), &["u", "v"]).unwrap(), parse_poly(&format!("{b} + v"), &["u", "v"]).unwrap()]
            };
            let images: Vec<RatFun> = local.iter().cloned().map(RatFun::from_poly).collect();
            prop_assert_eq!(&pullback(&f, &chart).unwrap(), &parent.pullback.substitute(&images).unwrap());
            prop_assert_eq!(&chart.pullback, &pullback(&f, &chart).unwrap());
        }
    }

    #[test]
    fn refutations_reverify(c in 1i64..=4, (i, j) in (0u32..=2, 0u32..=2).prop_filter("low order", |(i, j)| i + j <= 2), d in 1i64..=3) {
        let f = RatFun::new(poly2(vec![(i, j, c)]), poly2(vec![(2, 0, 1), (0, 2, d)])).unwrap();
        match decide_regulous2(&f, 0, Budget::default()).unwrap() {
            Verdict::NotRegulous(w) => prop_assert!(w.verify(&f).unwrap()),
            v => return Err(TestCaseError::fail(format!("expected a refutation, got {v}"))),
        }
    }

    #[test]
    fn radical_generator_zero_set(fs in prop::collection::vec(small_poly(2, 3), 1..=3), x in prop::sample::select(vec![
        (0i64, 0i64), (1, 0), (0, 1), (1, 1), (-1, 2), (2, -1), (3, 3),
    ])) {
        let a = Ambient::xy();
        let p = [rat(x.0), rat(x.1)];
        let exprs: Vec<Expr> = fs.iter().map(Expr::from_poly).collect();
        let g = radical_generator(&exprs).unwrap().to_poly(&a).unwrap();
        let all = fs.iter().all(|f| f.evaluate(&p).unwrap().is_zero());
        prop_assert_eq!(ConstructibleSet::zero_set(&g).unwrap().member(&p).unwrap(), all);
    }

    #[test]
    fn zero_set_matches_extension(i in -12i64..=12, j in -12i64..=12, d in 1i64..=3, which in 0usize..3) {
        let f = [f2("(y^2+x^2-x^3)/(x^2+y^2)"), f2("x^3/(x^2+y^2)"), f2("1-x^6/(x^2+y^2)^2")][which].clone();
        let p = if i == 0 && j == 0 { vec![rat(0), rat(0)] } else { vec![ratio(i, d), ratio(j, d)] };
        let s = zero_set2(&f, Budget::default()).unwrap();
        let st = stratify2(&f, Budget::default()).unwrap();
        let v = st.value(&f, &p).unwrap().unwrap();
        prop_assert_eq!(s.member(&p).unwrap(), v.is_zero());
    }

    #[test]
    fn closure_monotone(extra in prop::collection::vec((0usize..4, prop::collection::btree_set(0usize..4, 1..=4), prop::option::of(0u32..=1)), 0..=6)) {
        let base = incidence(embedded("ex-algo.json").unwrap()).unwrap();
        let before = closure_algorithm(&base).unwrap();
        let mut j = base.to_json();
        let ids = ["W", "Z2a", "Z2b", "Z1"];
        for (c, cur, d) in extra {
            let comp = ids[c];
            let current: Vec<String> = cur.iter().map(|k| ids[*k].to_string()).collect();
            let dim = d.map(|x| x.min(base.component_dim(comp).unwrap()));
            let key: BTreeSet<&String> = current.iter().collect();
            if j.table.iter().any(|e| e.component == comp && e.current.iter().collect::<BTreeSet<_>>() == key) {
                continue;
            }
            j.table.push(TableEntry { component: comp.into(), current, dim });
        }
        let after = closure_algorithm(&ArcSymIncidence::from_json(&j).unwrap()).unwrap();
        prop_assert!(before.included.iter().all(|c| after.included.contains(c)));
        prop_assert_eq!(after.replay(), after.included.clone());
        prop_assert_eq!(closure_algorithm(&ArcSymIncidence::from_json(&j).unwrap()).unwrap(), after);
    }
}

#[test]
fn decided_values_match_battery_limits() {
    for s in ["x^3/(x^2+y^2)", "(y^2+x^2-x^3)/(x^2+y^2)", "x^2*y^2/(x^2+y^2)", "x^4*y/(x^4+y^2)", "(x-1)^3/((x-1)^2+y^2) + x"] {
        let f = f2(s);
        let Verdict::Regulous { values, .. } = decide_regulous2(&f, 0, Budget::default()).unwrap() else { panic!("{s}") };
        assert!(!values.is_empty(), "{s}");
        for (p, c) in &values {
            for arc in battery_plane(&[p[0].clone(), p[1].clone()], 3) {
                assert_eq!(arc_limit(&f, &arc, Side::Plus).unwrap(), ExtValue::Finite(c.clone()), "{s} along {arc}");
            }
        }
    }
}

#[test]
fn kmax_is_finite_with_indeterminacy() {
    for (s, k) in [
        ("x^3/(x^2+y^2)", 0),
        ("x^4/(x^2+y^2)", 1),
        ("x^5/(x^2+y^2)", 2),
        ("(y^2+x^2-x^3)/(x^2+y^2)", 0),
        ("x^2*y^2/(x^2+y^2)", 1),
    ] {
        match kmax(&f2(s), 5, Budget::default()).unwrap() {
            KMax::Exact { k: got, .. } => assert_eq!(got, k, "{s}"),
            other => panic!("{s}: {other}"),
        }
    }
}

#[test]
fn strata_are_the_denominator_candidates() {
    for s in ["x^3/(x^2+y^2)", "(y^2+x^2-x^3)/(x^2+y^2)", "x^3/(x^2+y^2) + y^3/((x-1)^2+y^2)", "1/(1+x^2)"] {
        let f = f2(s);
        let st = stratify2(&f, Budget::default()).unwrap();
        let pts: BTreeSet<Vec<Rational>> = st.points.iter().map(|(p, _)| p.clone()).collect();
        let cands: BTreeSet<Vec<Rational>> =
            indeterminacy_candidates(&f).unwrap().rational_points.iter().map(|p| p.to_vec()).collect();
        assert_eq!(pts, cands, "{s}");
        assert_eq!(st.open, f.den().normalized());
    }
}

#[test]
fn loja_monotone_and_reverifiable() {
    let a = Ambient::xy();
    let b = Budget::default();
    for (f, g, k) in [("x^2+y^2", "1/(x^2+2*y^2)", 0), ("x^2+y^2", "1/(x^2+2*y^2)", 1), ("x", "y/(x^2+y^2)", 0)] {
        let (fe, ge) = (parse_expr(f, &a).unwrap(), parse_expr(g, &a).unwrap());
        let LojaOutcome::Found(c) = loja_exponent(&fe, &ge, &a, k, 6, b).unwrap() else { panic!("{f}, {g}") };
        let next = Expr::mul(Expr::pow(fe.clone(), c.n + 1), ge.clone()).to_ratfun(&a).unwrap();
        assert!(decide_regulous2(&next, k, b).unwrap().is_regulous());
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let back = LojaCert::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.verify(b).unwrap().is_valid());
    }
}

#[test]
fn radical_outcomes_are_coherent() {
    let a = Ambient::xy();
    let grid: Vec<Vec<Rational>> = (-3..=3).flat_map(|i| (-3..=3).map(move |j| vec![rat(i), rat(j)])).collect();
    for (f, g) in [("x", "x^2+y^2"), ("x", "y"), ("x*y", "x"), ("x+y", "x^2+y^2"), ("y", "x^2*y^2")] {
        let (fe, ge) = (parse_expr(f, &a).unwrap(), parse_expr(g, &a).unwrap());
        let (fr, gr) = (fe.to_ratfun(&a).unwrap(), ge.to_ratfun(&a).unwrap());
        match radical_membership(&fe, &ge, &a, 0, 4, Budget::default()).unwrap() {
            RadicalOutcome::Member(c) => {
                assert!(c.verify(Budget::default()).unwrap().is_valid());
                for p in &grid {
                    let gz = gr.evaluate(p).unwrap().unwrap().is_zero();
                    assert!(!gz || fr.evaluate(p).unwrap().unwrap().is_zero(), "{f}, {g} at {p:?}");
                }
            }
            RadicalOutcome::Refuted(p) => {
                assert!(gr.evaluate(&p).unwrap().unwrap().is_zero());
                assert!(!fr.evaluate(&p).unwrap().unwrap().is_zero());
            }
            RadicalOutcome::Unknown(r) => panic!("{f}, {g}: {r}"),
        }
    }
}

#[test]
fn krull_chain_in_space() {
    let vars = ["x", "y", "z"];
    let chain: Vec<ConstructibleSet> = ["x^2+y^2+z^2", "x^2+y^2", "x", "0"]
        .iter()
        .map(|s| ConstructibleSet::zero_set(&parse_poly(s, &vars).unwrap()).unwrap())
        .collect();
    let witnesses = [[0, 0, 1], [0, 1, 0], [1, 0, 0]];
    let grid: Vec<Vec<Rational>> = (-2..=2)
        .flat_map(|i| (-2..=2).flat_map(move |j| (-2..=2).map(move |k| vec![rat(i), rat(j), rat(k)])))
        .collect();
    for (step, w) in witnesses.iter().enumerate() {
        let (small, big) = (&chain[step], &chain[step + 1]);
        let w: Vec<Rational> = w.iter().map(|c| rat(*c)).collect();
        assert!(big.member(&w).unwrap() && !small.member(&w).unwrap());
        for p in &grid {
            assert!(!small.member(p).unwrap() || big.member(p).unwrap());
        }
        assert_eq!(small.pieces().len(), 1);
        assert_eq!(small.pieces()[0].equations.len(), 1);
    }
}
