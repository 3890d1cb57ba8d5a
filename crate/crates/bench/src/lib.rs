//! Benchmark inputs shared by the criterion targets.

use regulous::{parse_expr, Ambient, Poly, RatFun};

pub fn ratfun(s: &str) -> RatFun {
    let a = Ambient::xy();
    parse_expr(s, &a).and_then(|e| e.to_ratfun(&a)).expect("benchmark input parses")
}

pub fn poly(s: &str) -> Poly {
    let a = Ambient::xy();
    parse_expr(s, &a).and_then(|e| e.to_poly(&a)).expect("benchmark input parses")
}

/// Pairs `(a g, b g)` with a shared factor `g`.
pub fn gcd_inputs() -> Vec<(Poly, Poly)> {
    let g = poly("x^3 - 2*x*y^2 + y + 5");
    [("x^2 + y^3 - 1", "x*y - 7"), ("(x + y)^4 - 3", "x^5 - y^2 + x*y"), ("y^6 + x", "x^6 + y")]
        .iter()
        .map(|(a, b)| (&poly(a) * &g, &poly(b) * &g))
        .collect()
}

pub const DECIDE: [&str; 4] = ["x^3/(x^2+y^2)", "x*y/(x^2+y^2)", "x^4*y/(x^4+y^2)", "(x^2+y^2)^2/(x^2+2*y^2)"];
