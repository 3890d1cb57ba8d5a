use num_traits::Zero;

use super::json::Check;
use super::{extension_value, regulous_verdict};
use crate::blowup::{decide_regulous2, Budget, Verdict};
use crate::error::Result;
use crate::expr::Expr;
use crate::poly::{squarefree_part, Ambient, Poly};
use crate::ratfun::{real_zeros2, RatFun};
use crate::rational::{fmt_point, Rational};

/// Evidence that the extension of `h` vanishes on `Z(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    /// Rational points of `Z(f)` where the extension value was checked to be 0.
    pub points: Vec<Vec<Rational>>,
    /// Squarefree part of `num f`, when it divides `num h`.
    pub divisor: Option<Poly>,
}

/// `f^N g = h` with `h` k-regulous and zero on `Z(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LojaCert {
    pub ambient: Ambient,
    pub f: Expr,
    pub g: Expr,
    pub k: u32,
    pub n: u32,
    pub h: RatFun,
    pub verdict: Verdict,
    pub vanishing: VanishingReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LojaOutcome {
    Found(LojaCert),
    Unknown(String),
}

/// Smallest `N <= ncap` for which `f^N g` extends by zero to a k-regulous function.
/// `N = 0` is returned when `g` itself is k-regulous.
pub fn loja_exponent(f: &Expr, g: &Expr, ambient: &Ambient, k: u32, ncap: u32, budget: Budget) -> Result<LojaOutcome> {
    let fr = f.to_ratfun(ambient)?;
    let mut last = String::from("no attempt");
    for n in 0..=ncap {
        let (h, verdict) = product(f, g, n, ambient, k, budget)?;
        if !verdict.is_regulous() {
            last = format!("N = {n}: {verdict}");
            continue;
        }
        let vanishing = if n == 0 {
            VanishingReport { points: Vec::new(), divisor: None }
        } else {
            match vanishing(&fr, &h, &verdict, ambient, budget)? {
                Ok(v) => v,
                Err(reason) => {
                    last = format!("N = {n}: {reason}");
                    continue;
                }
            }
        };
        return Ok(LojaOutcome::Found(LojaCert {
            ambient: ambient.clone(),
            f: f.clone(),
            g: g.clone(),
            k,
            n,
            h,
            verdict,
            vanishing,
        }));
    }
    Ok(LojaOutcome::Unknown(format!("no exponent up to {ncap}; {last}")))
}

fn product(f: &Expr, g: &Expr, n: u32, ambient: &Ambient, k: u32, budget: Budget) -> Result<(RatFun, Verdict)> {
    let e = Expr::mul(Expr::pow(f.clone(), n), g.clone());
    let h = e.to_ratfun(ambient)?;
    let verdict = regulous_verdict(&e, ambient, k, budget)?;
    Ok((h, verdict))
}

fn vanishing(
    f: &RatFun,
    h: &RatFun,
    hv: &Verdict,
    ambient: &Ambient,
    budget: Budget,
) -> Result<std::result::Result<VanishingReport, String>> {
    if f.is_zero() {
        return Ok(if h.is_zero() {
            Ok(VanishingReport { points: Vec::new(), divisor: None })
        } else {
            Err("f is identically zero but h is not".into())
        });
    }
    if f.num().is_constant() {
        return Ok(Ok(VanishingReport { points: Vec::new(), divisor: None }));
    }
    let s = squarefree_part(f.num())?.normalized();
    let divides = h.num().div_exact(&s).is_some();
    if ambient.len() != 2 {
        return Ok(if divides && (h.den().is_constant() || h.den().is_evidently_positive()) {
            Ok(VanishingReport { points: Vec::new(), divisor: Some(s) })
        } else {
            Err("vanishing on Z(f) is only established in the plane or for evidently positive denominators".into())
        });
    }
    let fv = if f.is_polynomial() { Verdict::Regulous { k: 0, values: Vec::new() } } else { decide_regulous2(f, 0, budget)? };
    let in_zf = |p: &[Rational]| -> Result<bool> {
        Ok(extension_value(f, &fv, p)?.is_some_and(|v| v.is_zero()))
    };
    let mut points = Vec::new();
    let (candidates, divisor) = if divides {
        let zh = real_zeros2(h.den())?;
        if zh.nonrational {
            return Ok(Err("h may have indeterminacy points with irrational coordinates".into()));
        }
        (zh.points, Some(s))
    } else {
        let zn = real_zeros2(f.num())?;
        if zn.curve {
            return Ok(Err("f vanishes along a curve that does not divide h".into()));
        }
        if zn.nonrational {
            return Ok(Err("f may vanish at points with irrational coordinates".into()));
        }
        (zn.points, None)
    };
    for p in candidates {
        if !in_zf(&p)? {
            continue;
        }
        match extension_value(h, hv, &p)? {
            Some(v) if v.is_zero() => points.push(p.to_vec()),
            Some(v) => return Ok(Err(format!("the extension takes the value {v} at {}", fmt_point(&p)))),
            None => return Ok(Err(format!("no extension value at {}", fmt_point(&p)))),
        }
    }
    Ok(Ok(VanishingReport { points, divisor }))
}

impl LojaCert {
    /// Re-derives every part of the certificate.
    pub fn verify(&self, budget: Budget) -> Result<Check> {
        let (h, verdict) = product(&self.f, &self.g, self.n, &self.ambient, self.k, budget)?;
        if h != self.h {
            return Ok(Check::Invalid("f^N g differs from h".into()));
        }
        if !verdict.is_regulous() {
            return Ok(Check::Invalid(format!("h is not certified: {verdict}")));
        }
        if verdict != self.verdict {
            return Ok(Check::Invalid("recorded verdict does not match".into()));
        }
        if self.n > 0 {
            let fr = self.f.to_ratfun(&self.ambient)?;
            match vanishing(&fr, &h, &verdict, &self.ambient, budget)? {
                Ok(v) if v == self.vanishing => {}
                Ok(_) => return Ok(Check::Invalid("recorded vanishing evidence does not match".into())),
                Err(r) => return Ok(Check::Invalid(r)),
            }
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
    fn quadratic_forms() {
        let a = Ambient::xy();
        let b = Budget::default();
        let LojaOutcome::Found(c) = loja_exponent(&e("x^2+y^2"), &e("1/(x^2+2*y^2)"), &a, 0, 6, b).unwrap() else {
            panic!()
        };
        assert_eq!(c.n, 2);
        assert_eq!(c.h.to_string(), "(x^4 + 2*x^2*y^2 + y^4)/(x^2 + 2*y^2)");
        assert_eq!(c.vanishing.points, vec![vec![rat(0), rat(0)]]);
        assert_eq!(c.verify(b).unwrap(), Check::Valid);
        let ns: Vec<u32> = (0..3)
            .map(|k| match loja_exponent(&e("x^2+y^2"), &e("1/(x^2+2*y^2)"), &a, k, 6, b).unwrap() {
                LojaOutcome::Found(c) => c.n,
                LojaOutcome::Unknown(r) => panic!("{r}"),
            })
            .collect();
        assert_eq!(ns, vec![2, 2, 3]);
    }

    #[test]
    fn trivial_and_capped() {
        let a = Ambient::xy();
        let b = Budget::default();
        let LojaOutcome::Found(c) = loja_exponent(&e("x"), &e("1"), &a, 0, 3, b).unwrap() else { panic!() };
        assert_eq!(c.n, 0);
        let r = loja_exponent(&e("x^2+y^2"), &e("1/(x^2+2*y^2)"), &a, 6, 3, b).unwrap();
        assert!(matches!(r, LojaOutcome::Unknown(_)));
    }

    #[test]
    fn curve_zero_set() {
        let a = Ambient::xy();
        let b = Budget::default();
        // g has its poles on Z(f) = {x = 0} only at the origin.
        let LojaOutcome::Found(c) = loja_exponent(&e("x"), &e("y/(x^2+y^2)"), &a, 0, 4, b).unwrap() else { panic!() };
        assert_eq!(c.n, 2);
        assert_eq!(c.vanishing.divisor.as_ref().unwrap().to_string(), "x");
        assert_eq!(c.verify(b).unwrap(), Check::Valid);
    }

    #[test]
    fn tampered_certificate() {
        let a = Ambient::xy();
        let b = Budget::default();
        let LojaOutcome::Found(mut c) = loja_exponent(&e("x^2+y^2"), &e("1/(x^2+2*y^2)"), &a, 0, 6, b).unwrap() else {
            panic!()
        };
        c.n = 1;
        assert!(matches!(c.verify(b).unwrap(), Check::Invalid(_)));
    }
}
