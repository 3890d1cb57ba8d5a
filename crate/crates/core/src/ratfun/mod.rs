//! Reduced rational functions p/q over Q.

mod arc;
mod jet;
mod plane;

pub use arc::{arc_limit, one_sided_limits, order_along, restrict, two_sided_limit, Arc, ExtValue, Side};
pub use jet::{jet, multi_indices, Jet, JetEntry, JetJson};
pub use plane::{glue_regular, indeterminacy_candidates, real_zeros2, IndeterminacyReport, PlaneZeros};

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{gcd, Ambient, Poly};
use crate::rational::Rational;

/// `num / den` with `gcd(num, den) = 1` and `den` integer-primitive with positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(p: Poly, q: Poly) -> Result<Self> {
        p.ambient().check(q.ambient())?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if p.is_zero() {
            return Ok(RatFun { den: Poly::one(q.ambient()), num: p });
        }
        let (p, q) = if q.is_constant() {
            (p, q)
        } else {
            let g = gcd(&p, &q);
            if g.is_one() {
                (p, q)
            } else {
                (p.div_exact(&g).expect("gcd divides"), q.div_exact(&g).expect("gcd divides"))
            }
        };
        let (den, s) = q.normalize_with_scale();
        let num = p.scale(&s.recip());
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.ambient());
        RatFun { num: p, den }
    }

    pub fn constant(ambient: &Ambient, c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(ambient, c))
    }

    pub fn zero(ambient: &Ambient) -> Self {
        RatFun::from_poly(Poly::zero(ambient))
    }

    pub fn one(ambient: &Ambient) -> Self {
        RatFun::from_poly(Poly::one(ambient))
    }

    pub fn var(ambient: &Ambient, i: usize) -> Self {
        RatFun::from_poly(Poly::var(ambient, i))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn ambient(&self) -> &Ambient {
        self.num.ambient()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.constant_value().map(|c| c / self.den.constant_value().unwrap())
        } else {
            None
        }
    }

    /// The polynomial itself, when the denominator is constant.
    pub fn as_poly(&self) -> Option<Poly> {
        self.den.constant_value().map(|c| self.num.scale(&c.recip()))
    }

    /// Checks the reduced-form invariant.
    pub fn is_reduced(&self) -> bool {
        !self.den.is_zero()
            && gcd(&self.num, &self.den).is_one()
            && self.den == self.den.normalized()
            && (!self.num.is_zero() || self.den.is_one())
    }

    /// Variables occurring in numerator or denominator.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&v| self.num.degree_in(v) > 0 || self.den.degree_in(v) > 0)
            .collect()
    }

    // `num / den` with gcd(num, den) = 1 already known.
    fn coprime(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun { den: Poly::one(den.ambient()), num };
        }
        let (den, s) = den.normalize_with_scale();
        RatFun { num: num.scale(&s.recip()), den }
    }

    // Only the common factor of the denominators can cancel.
    pub fn add(&self, g: &RatFun) -> Result<RatFun> {
        self.ambient().check(g.ambient())?;
        if self.den.is_one() && g.den.is_one() {
            return Ok(RatFun::from_poly(&self.num + &g.num));
        }
        let d = gcd(&self.den, &g.den);
        let q1 = self.den.div_exact(&d).expect("gcd divides");
        let q2 = g.den.div_exact(&d).expect("gcd divides");
        let num = &(&self.num * &q2) + &(&g.num * &q1);
        let h = if d.is_one() || num.is_zero() { d.clone() } else { gcd(&num, &d) };
        let num = num.div_exact(&h).expect("gcd divides");
        let rest = d.div_exact(&h).expect("gcd divides");
        Ok(RatFun::coprime(num, &(&q1 * &q2) * &rest))
    }

    pub fn sub(&self, g: &RatFun) -> Result<RatFun> {
        self.add(&g.neg())
    }

    pub fn mul(&self, g: &RatFun) -> Result<RatFun> {
        self.ambient().check(g.ambient())?;
        if self.is_zero() || g.is_zero() {
            return Ok(RatFun::zero(self.ambient()));
        }
        let g1 = gcd(&self.num, &g.den);
        let g2 = gcd(&g.num, &self.den);
        let num = &self.num.div_exact(&g1).expect("gcd divides") * &g.num.div_exact(&g2).expect("gcd divides");
        let den = &self.den.div_exact(&g2).expect("gcd divides") * &g.den.div_exact(&g1).expect("gcd divides");
        Ok(RatFun::coprime(num, den))
    }

    pub fn div(&self, g: &RatFun) -> Result<RatFun> {
        self.ambient().check(g.ambient())?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(&self.num * &g.den, &self.den * &g.num)
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero(self.ambient());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Value at `point`, or `None` when the denominator vanishes there.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Option<Rational>> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.num.evaluate(point)? / d))
    }

    pub fn derivative(&self, var: usize) -> RatFun {
        if self.is_polynomial() {
            let c = self.den.constant_value().unwrap();
            return RatFun::from_poly(self.num.derivative(var).scale(&c.recip()));
        }
        // With q = g s and q' = g w, the quotient is (p' s - p w) / (g s^2) and
        // only g can share a factor with the numerator.
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return RatFun::new(self.num.derivative(var), self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &dd);
        let s = self.den.div_exact(&g).expect("gcd divides");
        let w = dd.div_exact(&g).expect("gcd divides");
        let top = &(&self.num.derivative(var) * &s) - &(&self.num * &w);
        let h = if g.is_one() || top.is_zero() { g.clone() } else { gcd(&top, &g) };
        let top = top.div_exact(&h).expect("gcd divides");
        RatFun::coprime(top, &g.div_exact(&h).expect("gcd divides") * &s.pow(2))
    }

    /// Composition `self(images)`; all images share one ambient.
    pub fn substitute(&self, images: &[RatFun]) -> Result<RatFun> {
        if images.len() != self.nvars() {
            return Err(Error::Arity { expected: self.nvars(), got: images.len() });
        }
        if images.is_empty() {
            return Err(Error::Arity { expected: 1, got: 0 });
        }
        let target = images[0].ambient().clone();
        for im in images {
            target.check(im.ambient())?;
        }
        let degs: Vec<u32> =
            (0..self.nvars()).map(|v| self.num.degree_in(v).max(self.den.degree_in(v))).collect();
        let n = substitute_homog(&self.num, images, &degs, &target);
        let d = substitute_homog(&self.den, images, &degs, &target);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(n, d)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let n = self.num.to_string_with(names);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.to_string_with(names);
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        let d = if d.contains(['*', ' ']) { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

// Evaluates p at the images a_i/b_i multiplied by prod b_i^{deg_i}.
fn substitute_homog(p: &Poly, images: &[RatFun], degs: &[u32], target: &Ambient) -> Poly {
    let mut num_pows: Vec<Vec<Poly>> = Vec::with_capacity(images.len());
    let mut den_pows: Vec<Vec<Poly>> = Vec::with_capacity(images.len());
    for (im, &d) in images.iter().zip(degs) {
        let mut np = vec![Poly::one(target)];
        let mut dp = vec![Poly::one(target)];
        for k in 1..=d as usize {
            np.push(&np[k - 1] * im.num());
            dp.push(&dp[k - 1] * im.den());
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut out = Poly::zero(target);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            let e = e as usize;
            let d = degs[i] as usize;
            if e > 0 {
                t = &t * &num_pows[i][e];
            }
            if d > e {
                t = &t * &den_pows[i][d - e];
            }
        }
        out = &out + &t;
    }
    out
}

/// Substitutes rational functions into a polynomial.
pub fn substitute(p: &Poly, images: &[RatFun]) -> Result<RatFun> {
    RatFun::from_poly(p.clone()).substitute(images)
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.ambient().names()))
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::rat;

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    fn f(n: &str, d: &str) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn construction_reduces() {
        let c = f("x^3", "x^2+y^2");
        assert_eq!(c.num(), &p("x^3"));
        assert_eq!(f("x^2-y^2", "x-y"), RatFun::from_poly(p("x+y")));
        let z = f("0", "x^2+1");
        assert!(z.is_zero() && z.den().is_one());
        assert!(RatFun::new(p("x"), p("0")).is_err());
        let n = f("x", "-2*y");
        assert_eq!(n.den(), &p("y"));
        assert_eq!(n.num(), &p("-1/2*x"));
    }

    #[test]
    fn arithmetic() {
        let g = RatFun::one(&Ambient::xy()).sub(&f("x^3", "x^2+y^2")).unwrap();
        assert_eq!(g, f("y^2+x^2-x^3", "x^2+y^2"));
        let h = f("x^3", "x^2+y^2");
        assert!(h.add(&h.neg()).unwrap().is_zero());
        assert!(f("x", "y").mul(&f("y", "x")).unwrap().constant_value() == Some(rat(1)));
        assert!(h.div(&RatFun::zero(&Ambient::xy())).is_err());
    }

    #[test]
    fn substitution() {
        let t = Ambient::t();
        let tt = RatFun::var(&t, 0);
        let s = substitute(&p("x^2+y^2"), &[tt.clone(), tt.clone()]).unwrap();
        assert_eq!(s.to_string(), "2*t^2");
        let uv = Ambient::uv();
        let u = RatFun::var(&uv, 0);
        let v = RatFun::var(&uv, 1);
        let s = substitute(&p("x-y"), &[u.clone(), u.mul(&v).unwrap()]).unwrap();
        assert_eq!(s.num(), &parse_poly("u - u*v", &["u", "v"]).unwrap());
        let one = Ambient::new(["x"]);
        let x = RatFun::var(&Ambient::xy(), 0);
        let target = f("x^3", "x^2+y^2");
        let id = RatFun::var(&one, 0).substitute(&[target.clone()]).unwrap();
        assert_eq!(id, target);
        let _ = x;
    }

    #[test]
    fn display() {
        assert_eq!(f("x^3", "x^2+y^2").to_string(), "x^3/(x^2 + y^2)");
        assert_eq!(f("x+1", "y").to_string(), "(x + 1)/y");
    }
}
