use num_traits::Zero;

use super::json::Check;
use super::{extension_value, regulous_verdict};
use crate::blowup::{decide_regulous2, Budget, Verdict};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::{isolate_real_roots, Ambient};
use crate::ratfun::{real_zeros2, RatFun};
use crate::rational::{height_bounded, Rational};

/// `f^N = g h` with `h` k-regulous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalCert {
    pub ambient: Ambient,
    pub f: Expr,
    pub g: Expr,
    pub k: u32,
    pub n: u32,
    pub h: RatFun,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalOutcome {
    Member(RadicalCert),
    /// A rational point where `g` vanishes and `f` does not.
    Refuted(Vec<Rational>),
    Unknown(String),
}

/// Decides `f ∈ Rad(g)` in the ring of k-regulous functions by certificate search.
pub fn radical_membership(f: &Expr, g: &Expr, ambient: &Ambient, k: u32, ncap: u32, budget: Budget) -> Result<RadicalOutcome> {
    let fr = f.to_ratfun(ambient)?;
    let gr = g.to_ratfun(ambient)?;
    if gr.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(p) = refuting_point(&fr, &gr, ambient, budget)? {
        return Ok(RadicalOutcome::Refuted(p));
    }
    let mut last = String::from("no attempt");
    for n in 0..=ncap {
        let (h, verdict) = quotient(f, g, n, ambient, k, budget)?;
        if verdict.is_regulous() {
            return Ok(RadicalOutcome::Member(RadicalCert {
                ambient: ambient.clone(),
                f: f.clone(),
                g: g.clone(),
                k,
                n,
                h,
                verdict,
            }));
        }
        last = format!("N = {n}: {verdict}");
    }
    Ok(RadicalOutcome::Unknown(format!("no exponent up to {ncap}; {last}")))
}

fn quotient(f: &Expr, g: &Expr, n: u32, ambient: &Ambient, k: u32, budget: Budget) -> Result<(RatFun, Verdict)> {
    let e = Expr::div(Expr::pow(f.clone(), n), g.clone());
    let h = e.to_ratfun(ambient)?;
    let verdict = regulous_verdict(&e, ambient, k, budget)?;
    Ok((h, verdict))
}

// 1, -1, 0, 2, -2, ...
fn samples() -> Vec<Rational> {
    let mut s = height_bounded(3);
    let zero = s.remove(0);
    s.insert(2, zero);
    s
}

// Rational points of Z(g), in a fixed order, checked against f.
fn refuting_point(f: &RatFun, g: &RatFun, ambient: &Ambient, budget: Budget) -> Result<Option<Vec<Rational>>> {
    let fv = continuity(f, budget)?;
    let gv = continuity(g, budget)?;
    let refutes = |p: &[Rational]| -> Result<bool> {
        let gz = extension_value(g, &gv, p)?.is_some_and(|v| v.is_zero());
        let fnz = extension_value(f, &fv, p)?.is_some_and(|v| !v.is_zero());
        Ok(gz && fnz)
    };
    for p in candidates(g, ambient)? {
        if refutes(&p)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn continuity(f: &RatFun, budget: Budget) -> Result<Verdict> {
    if f.is_polynomial() || f.nvars() != 2 {
        return Ok(Verdict::Regulous { k: 0, values: Vec::new() });
    }
    decide_regulous2(f, 0, budget)
}

fn candidates(g: &RatFun, ambient: &Ambient) -> Result<Vec<Vec<Rational>>> {
    let s = samples();
    if ambient.len() != 2 {
        let mut pts = vec![Vec::new()];
        for _ in 0..ambient.len() {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<Rational>| {
                    s.iter().take(5).map(move |x| {
                        let mut q = p.clone();
                        q.push(x.clone());
                        q
                    })
                })
                .collect();
        }
        return Ok(pts.into_iter().filter(|p| g.num().evaluate(p).is_ok_and(|v| v.is_zero())).collect());
    }
    let z = real_zeros2(g.num())?;
    let mut out: Vec<Vec<Rational>> = z.points.iter().map(|p| p.to_vec()).collect();
    if z.curve {
        for x in &s {
            let fiber = g.num().specialize(0, x).to_uni(1).expect("univariate in y");
            if fiber.is_zero() {
                out.extend(s.iter().map(|y| vec![x.clone(), y.clone()]));
                continue;
            }
            for r in isolate_real_roots(&fiber)? {
                if let Some(y) = r.exact() {
                    out.push(vec![x.clone(), y.clone()]);
                }
            }
        }
    }
    Ok(out)
}

impl RadicalCert {
    pub fn verify(&self, budget: Budget) -> Result<Check> {
        let fr = self.f.to_ratfun(&self.ambient)?;
        let gr = self.g.to_ratfun(&self.ambient)?;
        if gr.mul(&self.h)? != fr.pow(self.n) {
            return Ok(Check::Invalid("f^N differs from g h".into()));
        }
        let verdict = super::regulous_verdict(&Expr::from_ratfun(&self.h), &self.ambient, self.k, budget)?;
        if !verdict.is_regulous() {
            return Ok(Check::Invalid(format!("h is not certified: {verdict}")));
        }
        if verdict != self.verdict {
            return Ok(Check::Invalid("recorded verdict does not match".into()));
        }
        Ok(Check::Valid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use crate::rational::rat;

    fn e(s: &str) -> Expr {
        parse_expr(s, &Ambient::xy()).unwrap()
    }

    #[test]
    fn examples() {
        let a = Ambient::xy();
        let b = Budget::default();
        let RadicalOutcome::Member(c) = radical_membership(&e("x"), &e("x^2+y^2"), &a, 0, 5, b).unwrap() else {
            panic!()
        };
        assert_eq!(c.n, 3);
        assert_eq!(c.h.to_string(), "x^3/(x^2 + y^2)");
        assert_eq!(c.verify(b).unwrap(), Check::Valid);
        let RadicalOutcome::Member(c) = radical_membership(&e("x"), &e("x"), &a, 0, 5, b).unwrap() else { panic!() };
        assert_eq!((c.n, c.h.to_string()), (1, "1".to_string()));
        assert_eq!(
            radical_membership(&e("x"), &e("y"), &a, 0, 5, b).unwrap(),
            RadicalOutcome::Refuted(vec![rat(1), rat(0)])
        );
        assert!(radical_membership(&e("x"), &e("0"), &a, 0, 5, b).is_err());
    }

    #[test]
    fn forged_exponent_rejected() {
        let a = Ambient::xy();
        let b = Budget::default();
        let RadicalOutcome::Member(mut c) = radical_membership(&e("x"), &e("x^2+y^2"), &a, 0, 5, b).unwrap() else {
            panic!()
        };
        c.n = 1;
        c.h = e("x/(x^2+y^2)").to_ratfun(&a).unwrap();
        assert!(matches!(c.verify(b).unwrap(), Check::Invalid(_)));
    }
}
