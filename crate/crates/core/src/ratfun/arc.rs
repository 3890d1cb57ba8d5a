use std::fmt;

use num_traits::{One, Signed, Zero};

use super::RatFun;
use crate::error::{Error, Result};
use crate::parse::parse_expr;
use crate::poly::{Ambient, UniPoly};
use crate::rational::{fmt_rational, Rational};

/// Extended value of a one-sided limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtValue {
    Finite(Rational),
    PlusInfinity,
    MinusInfinity,
    IndeterminateTwoSided,
}

impl ExtValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::PlusInfinity | ExtValue::MinusInfinity)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(r) => write!(f, "{}", fmt_rational(r)),
            ExtValue::PlusInfinity => write!(f, "+inf"),
            ExtValue::MinusInfinity => write!(f, "-inf"),
            ExtValue::IndeterminateTwoSided => write!(f, "two-sided mismatch"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

/// A rational curve `t -> (c_1(t), ..., c_n(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    components: Vec<RatFun>,
}

impl Arc {
    pub fn new(components: Vec<RatFun>) -> Result<Self> {
        let t = Ambient::t();
        for c in &components {
            t.check(c.ambient())?;
        }
        if components.is_empty() {
            return Err(Error::Empty("arc components"));
        }
        Ok(Arc { components })
    }

    /// Parses the textual form `c_1, ..., c_n` with each `c_i` an expression in `t`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = Ambient::t();
        let comps = text
            .split(',')
            .map(|s| parse_expr(s, &t)?.to_ratfun(&t))
            .collect::<Result<Vec<_>>>()?;
        Arc::new(comps)
    }

    /// The straight or polynomial arc `base + sum_k coeffs[k] t^(k+1)` per coordinate.
    pub fn polynomial(base: &[Rational], coeffs: &[Vec<Rational>]) -> Self {
        let t = Ambient::t();
        let comps = base
            .iter()
            .zip(coeffs)
            .map(|(b, cs)| {
                let mut c = vec![b.clone()];
                c.extend(cs.iter().cloned());
                RatFun::from_poly(crate::poly::Poly::from_uni(&t, 0, &UniPoly::new(c)))
            })
            .collect();
        Arc { components: comps }
    }

    pub fn components(&self) -> &[RatFun] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Limit point as t -> 0, when every component is finite there.
    pub fn base_point(&self) -> Option<Vec<Rational>> {
        self.components
            .iter()
            .map(|c| match limit_uni(c, Side::Plus) {
                ExtValue::Finite(r) => Some(r),
                _ => None,
            })
            .collect()
    }

    pub fn at(&self, t: &Rational) -> Option<Vec<Rational>> {
        self.components.iter().map(|c| c.evaluate(&[t.clone()]).ok().flatten()).collect()
    }

    /// Same curve traversed with `t -> -t`.
    pub fn reversed(&self) -> Arc {
        let t = Ambient::t();
        let minus_t = RatFun::var(&t, 0).neg();
        Arc {
            components: self
                .components
                .iter()
                .map(|c| c.substitute(&[minus_t.clone()]).expect("arity 1"))
                .collect(),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn to_uni(p: &crate::poly::Poly) -> UniPoly {
    p.to_uni(0).expect("univariate in t")
}

// One-sided limit at t = 0 of a univariate rational function in t.
fn limit_uni(g: &RatFun, side: Side) -> ExtValue {
    limit_parts(&to_uni(g.num()), &to_uni(g.den()), side)
}

fn limit_parts(n: &UniPoly, d: &UniPoly, side: Side) -> ExtValue {
    let Some(on) = n.order() else {
        return ExtValue::Finite(Rational::zero());
    };
    let od = d.order().expect("nonzero denominator");
    let ratio = &n.coeffs()[on] / &d.coeffs()[od];
    if on > od {
        return ExtValue::Finite(Rational::zero());
    }
    if on == od {
        return ExtValue::Finite(ratio);
    }
    let mut positive = ratio.is_positive();
    if side == Side::Minus && (od - on) % 2 == 1 {
        positive = !positive;
    }
    if positive {
        ExtValue::PlusInfinity
    } else {
        ExtValue::MinusInfinity
    }
}

/// Reduced restriction `f(γ(t))`.
pub fn restrict(f: &RatFun, gamma: &Arc) -> Result<RatFun> {
    if gamma.dim() != f.nvars() {
        return Err(Error::Arity { expected: f.nvars(), got: gamma.dim() });
    }
    let (n, d) = restrict_raw(f, gamma)?;
    let g = n.gcd(&d);
    let (n, d) = if g.degree() > 0 { (n.div_rem(&g).0, d.div_rem(&g).0) } else { (n, d) };
    let t = Ambient::t();
    RatFun::new(crate::poly::Poly::from_uni(&t, 0, &n), crate::poly::Poly::from_uni(&t, 0, &d))
}

// Unreduced numerator and denominator of f∘γ.
fn restrict_raw(f: &RatFun, gamma: &Arc) -> Result<(UniPoly, UniPoly)> {
    if gamma.dim() != f.nvars() {
        return Err(Error::Arity { expected: f.nvars(), got: gamma.dim() });
    }
    let comps: Vec<(UniPoly, UniPoly)> =
        gamma.components.iter().map(|c| (to_uni(c.num()), to_uni(c.den()))).collect();
    let degs: Vec<u32> = (0..f.nvars()).map(|v| f.num().degree_in(v).max(f.den().degree_in(v))).collect();
    let n = homog_uni(f.num(), &comps, &degs);
    let d = homog_uni(f.den(), &comps, &degs);
    if d.is_zero() {
        return Err(Error::ArcInPoleLocus);
    }
    Ok((n, d))
}

// p evaluated at the fractions a_i/b_i, times prod b_i^{deg_i}.
fn homog_uni(p: &crate::poly::Poly, comps: &[(UniPoly, UniPoly)], degs: &[u32]) -> UniPoly {
    let pows = |u: &UniPoly, d: u32| {
        let mut out = vec![UniPoly::constant(Rational::one())];
        for k in 1..=d as usize {
            out.push(out[k - 1].mul(u));
        }
        out
    };
    let np: Vec<Vec<UniPoly>> = comps.iter().zip(degs).map(|((a, _), &d)| pows(a, d)).collect();
    let dp: Vec<Vec<UniPoly>> = comps.iter().zip(degs).map(|((_, b), &d)| pows(b, d)).collect();
    let mut acc = UniPoly::zero();
    for (m, c) in p.terms() {
        let mut term = UniPoly::constant(c.clone());
        for (v, &e) in m.0.iter().enumerate() {
            let e = e as usize;
            if !np[v][e].is_one_const() {
                term = term.mul(&np[v][e]);
            }
            let rest = degs[v] as usize - e;
            if !dp[v][rest].is_one_const() {
                term = term.mul(&dp[v][rest]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// One-sided limit of `f` along `γ` at t = 0, from the valuation of `f∘γ`.
pub fn arc_limit(f: &RatFun, gamma: &Arc, side: Side) -> Result<ExtValue> {
    let (n, d) = restrict_raw(f, gamma)?;
    Ok(limit_parts(&n, &d, side))
}

/// The limits as t -> 0+ and t -> 0-.
pub fn one_sided_limits(f: &RatFun, gamma: &Arc) -> Result<(ExtValue, ExtValue)> {
    let (n, d) = restrict_raw(f, gamma)?;
    Ok((limit_parts(&n, &d, Side::Plus), limit_parts(&n, &d, Side::Minus)))
}

/// Both one-sided limits; `IndeterminateTwoSided` when they differ.
pub fn two_sided_limit(f: &RatFun, gamma: &Arc) -> Result<ExtValue> {
    let (a, b) = one_sided_limits(f, gamma)?;
    Ok(if a == b { a } else { ExtValue::IndeterminateTwoSided })
}

/// Vanishing order at t = 0 of `f∘γ` (negative for a pole); `None` if identically 0.
pub fn order_along(f: &RatFun, gamma: &Arc) -> Result<Option<i64>> {
    let (n, d) = restrict_raw(f, gamma)?;
    Ok(n.order().map(|on| on as i64 - d.order().expect("nonzero") as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use crate::rational::{rat, ratio};

    fn f(s: &str) -> RatFun {
        let a = Ambient::xy();
        parse_expr(s, &a).unwrap().to_ratfun(&a).unwrap()
    }

    #[test]
    fn limits() {
        let g = f("x*y/(x^2+y^2)");
        let diag = Arc::parse("t, t").unwrap();
        assert_eq!(arc_limit(&g, &diag, Side::Plus).unwrap(), ExtValue::Finite(ratio(1, 2)));
        let axis = Arc::parse("t, 0").unwrap();
        assert_eq!(arc_limit(&g, &axis, Side::Plus).unwrap(), ExtValue::Finite(rat(0)));
        assert_eq!(arc_limit(&f("x^3/(x^2+y^2)"), &diag, Side::Plus).unwrap(), ExtValue::Finite(rat(0)));
    }

    #[test]
    fn infinite_limits() {
        let axis = Arc::parse("t, 0").unwrap();
        assert_eq!(arc_limit(&f("1/(x^2+y^2)"), &axis, Side::Minus).unwrap(), ExtValue::PlusInfinity);
        assert_eq!(arc_limit(&f("1/x"), &axis, Side::Minus).unwrap(), ExtValue::MinusInfinity);
        assert_eq!(two_sided_limit(&f("1/x"), &axis).unwrap(), ExtValue::IndeterminateTwoSided);
        assert_eq!(arc_limit(&f("1/y"), &axis, Side::Plus), Err(Error::ArcInPoleLocus));
    }

    #[test]
    fn base_points() {
        let a = Arc::parse("1 + t, t^2 - 3").unwrap();
        assert_eq!(a.base_point(), Some(vec![rat(1), rat(-3)]));
        assert_eq!(Arc::parse("1/t, t").unwrap().base_point(), None);
        assert_eq!(a.reversed().at(&rat(1)), Some(vec![rat(0), rat(-2)]));
    }
}
