//! Compositional k-regulous certification of expressions in any dimension.

use super::decide::decide_regulous2;
use super::refute::{default_battery, refute_by_arcs};
use super::resolve::Budget;
use super::witness::{Verdict, Witness};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::Ambient;
use crate::ratfun::{Arc, RatFun};

enum Cert {
    Certified,
    Failed(Witness),
    Undecided(String),
}

/// Certifies `e` k-regulous on all of R^n by structural rules: polynomials are
/// regulous, sub-expressions in at most two variables are decided exactly, and
/// ring operations and compositions preserve regulousness. Division is accepted
/// only by a polynomial that is evidently positive. When no rule applies, the
/// default arc battery is tried before answering `Unknown`.
pub fn certify_regulous(e: &Expr, ambient: &Ambient, k: u32, budget: Budget) -> Result<Verdict> {
    let f = e.to_ratfun(ambient)?;
    if ambient.len() == 2 {
        return decide_regulous2(&f, k, budget);
    }
    match cert(e, ambient, k, budget)? {
        Cert::Certified => Ok(Verdict::Regulous { k, values: Vec::new() }),
        Cert::Failed(w) => Ok(Verdict::NotRegulous(w)),
        Cert::Undecided(reason) => match refute_by_arcs(&f, &default_battery(ambient.len()))? {
            Some(w) if k == 0 => Ok(Verdict::NotRegulous(w)),
            _ => Ok(Verdict::Unknown(reason)),
        },
    }
}

fn cert(e: &Expr, ambient: &Ambient, k: u32, budget: Budget) -> Result<Cert> {
    let f = e.to_ratfun(ambient)?;
    if f.is_polynomial() {
        return Ok(Cert::Certified);
    }
    let support = e.support();
    if support.len() <= 2 {
        return planar(e, &support, ambient, k, budget);
    }
    let both = |a: &Expr, b: &Expr| -> Result<Cert> {
        Ok(match (cert(a, ambient, k, budget)?, cert(b, ambient, k, budget)?) {
            (Cert::Certified, Cert::Certified) => Cert::Certified,
            (Cert::Undecided(r), _) | (_, Cert::Undecided(r)) => Cert::Undecided(r),
            _ => Cert::Undecided("an operand is not regulous".into()),
        })
    };
    match e {
        Expr::Num(_) | Expr::Var(_) => Ok(Cert::Certified),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => both(a, b),
        Expr::Neg(a) | Expr::Pow(a, _) => cert(a, ambient, k, budget),
        Expr::Div(a, b) => {
            let d = b.to_ratfun(ambient)?;
            match d.as_poly() {
                Some(p) if p.is_zero() => Err(Error::DivisionByZero),
                Some(p) if p.is_constant() || p.is_evidently_positive() || (-&p).is_evidently_positive() => {
                    cert(a, ambient, k, budget)
                }
                _ => Ok(Cert::Undecided(format!("cannot certify the division by {}", d.to_string_with(ambient.names())))),
            }
        }
        Expr::Apply { outer, args } => {
            let outer_ok = if outer.is_polynomial() {
                true
            } else if outer.nvars() == 2 {
                decide_regulous2(outer, k, budget)?.is_regulous()
            } else {
                false
            };
            if !outer_ok {
                return Ok(Cert::Undecided("the outer function is not certified".into()));
            }
            for a in args {
                if !matches!(cert(a, ambient, k, budget)?, Cert::Certified) {
                    return Ok(Cert::Undecided("an argument is not certified".into()));
                }
            }
            Ok(Cert::Certified)
        }
    }
}

// Decides a sub-expression that only involves the coordinates in `support`.
fn planar(e: &Expr, support: &[usize], ambient: &Ambient, k: u32, budget: Budget) -> Result<Cert> {
    let mut chosen = support.to_vec();
    for i in 0..ambient.len() {
        if chosen.len() == 2 {
            break;
        }
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    chosen.sort_unstable();
    let names: Vec<String> = chosen.iter().map(|&i| ambient.names()[i].clone()).collect();
    let plane = Ambient::new(names);
    let g = remap(e, &chosen).to_ratfun(&plane)?;
    Ok(match decide_regulous2(&g, k, budget)? {
        Verdict::Regulous { .. } => Cert::Certified,
        Verdict::NotRegulous(w) => Cert::Failed(embed(&w, &chosen, ambient.len())),
        Verdict::Unknown(r) => Cert::Undecided(r),
    })
}

fn remap(e: &Expr, chosen: &[usize]) -> Expr {
    let r = |a: &Expr| Box::new(remap(a, chosen));
    match e {
        Expr::Num(c) => Expr::Num(c.clone()),
        Expr::Var(i) => Expr::Var(chosen.iter().position(|j| j == i).expect("variable in support")),
        Expr::Add(a, b) => Expr::Add(r(a), r(b)),
        Expr::Sub(a, b) => Expr::Sub(r(a), r(b)),
        Expr::Mul(a, b) => Expr::Mul(r(a), r(b)),
        Expr::Div(a, b) => Expr::Div(r(a), r(b)),
        Expr::Neg(a) => Expr::Neg(r(a)),
        Expr::Pow(a, n) => Expr::Pow(r(a), *n),
        Expr::Apply { outer, args } => {
            Expr::Apply { outer: outer.clone(), args: args.iter().map(|a| remap(a, chosen)).collect() }
        }
    }
}

fn embed(w: &Witness, chosen: &[usize], n: usize) -> Witness {
    let coeff = |c: &[u32]| {
        let mut out = vec![0; n];
        for (slot, &i) in chosen.iter().enumerate() {
            out[i] = c.get(slot).copied().unwrap_or(0);
        }
        out
    };
    let arc = |a: &Arc| {
        let t = Ambient::t();
        let mut comps = vec![RatFun::zero(&t); n];
        for (slot, &i) in chosen.iter().enumerate() {
            comps[i] = a.components()[slot].clone();
        }
        Arc::new(comps).expect("components over t")
    };
    let point = |p: &[crate::rational::Rational]| {
        let mut out = vec![crate::rational::rat(0); n];
        for (slot, &i) in chosen.iter().enumerate() {
            out[i] = p[slot].clone();
        }
        out
    };
    match w {
        Witness::ArcPair { coefficient, arcs, limits } => Witness::ArcPair {
            coefficient: coeff(coefficient),
            arcs: [arc(&arcs[0]), arc(&arcs[1])],
            limits: limits.clone(),
        },
        Witness::Unbounded { coefficient, arc: a, limit } => {
            Witness::Unbounded { coefficient: coeff(coefficient), arc: arc(a), limit: limit.clone() }
        }
        Witness::PoleCurve { coefficient, positive, negative } => Witness::PoleCurve {
            coefficient: coeff(coefficient),
            positive: point(positive),
            negative: point(negative),
        },
    }
}
