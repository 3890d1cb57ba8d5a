//! Expression trees over an ordered variable list.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Ambient, Poly};
use crate::ratfun::RatFun;
use crate::rational::{fmt_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `outer(args[0], ..., args[m-1])` with `outer` over its own m variables.
    Apply { outer: RatFun, args: Vec<Expr> },
}

impl Expr {
    pub fn num(c: Rational) -> Expr {
        Expr::Num(c)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, e: u32) -> Expr {
        Expr::Pow(Box::new(a), e)
    }

    pub fn from_poly(p: &Poly) -> Expr {
        let mut acc: Option<Expr> = None;
        for (m, c) in p.terms().rev() {
            let mut t: Option<Expr> = if c.abs().is_one() { None } else { Some(Expr::Num(c.abs())) };
            for (v, &e) in m.0.iter().enumerate() {
                let f = match e {
                    0 => continue,
                    1 => Expr::Var(v),
                    _ => Expr::pow(Expr::Var(v), e),
                };
                t = Some(match t {
                    None => f,
                    Some(t) => Expr::mul(t, f),
                });
            }
            let t = t.unwrap_or_else(|| Expr::Num(Rational::one()));
            acc = Some(match (acc, c.is_negative()) {
                (None, false) => t,
                (None, true) => Expr::Neg(Box::new(t)),
                (Some(a), false) => Expr::add(a, t),
                (Some(a), true) => Expr::sub(a, t),
            });
        }
        acc.unwrap_or_else(|| Expr::Num(Rational::zero()))
    }

    pub fn from_ratfun(f: &RatFun) -> Expr {
        if f.den().is_one() {
            Expr::from_poly(f.num())
        } else {
            Expr::div(Expr::from_poly(f.num()), Expr::from_poly(f.den()))
        }
    }

    /// Polynomial value; division only by nonzero constants.
    pub fn to_poly(&self, ambient: &Ambient) -> Result<Poly> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(ambient, c.clone()),
            Expr::Var(i) => {
                if *i >= ambient.len() {
                    return Err(Error::VariableIndex(*i));
                }
                Poly::var(ambient, *i)
            }
            Expr::Add(a, b) => &a.to_poly(ambient)? + &b.to_poly(ambient)?,
            Expr::Sub(a, b) => &a.to_poly(ambient)? - &b.to_poly(ambient)?,
            Expr::Mul(a, b) => &a.to_poly(ambient)? * &b.to_poly(ambient)?,
            Expr::Neg(a) => -&a.to_poly(ambient)?,
            Expr::Pow(a, e) => a.to_poly(ambient)?.pow(*e),
            Expr::Div(a, b) => {
                let d = b.to_poly(ambient)?;
                match d.constant_value() {
                    Some(c) if c.is_zero() => return Err(Error::DivisionByZero),
                    Some(c) => a.to_poly(ambient)?.scale(&c.recip()),
                    None => return Err(Error::NonPolynomial),
                }
            }
            Expr::Apply { .. } => {
                return self.to_ratfun(ambient)?.as_poly().ok_or(Error::NonPolynomial);
            }
        })
    }

    pub fn to_ratfun(&self, ambient: &Ambient) -> Result<RatFun> {
        Ok(match self {
            Expr::Num(c) => RatFun::constant(ambient, c.clone()),
            Expr::Var(i) => {
                if *i >= ambient.len() {
                    return Err(Error::VariableIndex(*i));
                }
                RatFun::var(ambient, *i)
            }
            Expr::Add(a, b) => a.to_ratfun(ambient)?.add(&b.to_ratfun(ambient)?)?,
            Expr::Sub(a, b) => a.to_ratfun(ambient)?.sub(&b.to_ratfun(ambient)?)?,
            Expr::Mul(a, b) => a.to_ratfun(ambient)?.mul(&b.to_ratfun(ambient)?)?,
            Expr::Div(a, b) => a.to_ratfun(ambient)?.div(&b.to_ratfun(ambient)?)?,
            Expr::Neg(a) => a.to_ratfun(ambient)?.neg(),
            Expr::Pow(a, e) => a.to_ratfun(ambient)?.pow(*e),
            Expr::Apply { outer, args } => {
                let imgs = args.iter().map(|a| a.to_ratfun(ambient)).collect::<Result<Vec<_>>>()?;
                outer.substitute(&imgs)?
            }
        })
    }

    /// Indices of the variables that occur syntactically.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(i) => out.push(*i),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Apply { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(c) if c.is_negative() => 3,
            Expr::Num(c) if !c.is_integer() => 2,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Text in the parser's grammar; parsing it back gives an equal function.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write(names, &mut s);
        s
    }

    fn write(&self, names: &[String], s: &mut String) {
        let child = |e: &Expr, min: u8, s: &mut String| {
            if e.prec() < min {
                s.push('(');
                e.write(names, s);
                s.push(')');
            } else {
                e.write(names, s);
            }
        };
        match self {
            Expr::Num(c) => s.push_str(&fmt_rational(c)),
            Expr::Var(i) => s.push_str(&names[*i]),
            Expr::Add(a, b) => {
                child(a, 1, s);
                s.push_str(" + ");
                child(b, 2, s);
            }
            Expr::Sub(a, b) => {
                child(a, 1, s);
                s.push_str(" - ");
                child(b, 2, s);
            }
            Expr::Mul(a, b) => {
                child(a, 2, s);
                s.push('*');
                child(b, 3, s);
            }
            Expr::Div(a, b) => {
                child(a, 2, s);
                s.push('/');
                child(b, 4, s);
            }
            Expr::Neg(a) => {
                s.push('-');
                child(a, 3, s);
            }
            Expr::Pow(a, e) => {
                child(a, 5, s);
                let _ = write!(s, "^{e}");
            }
            Expr::Apply { outer, args } => {
                let inner: Vec<String> = args.iter().map(|a| format!("({})", a.to_text(names))).collect();
                s.push('(');
                s.push_str(&outer.to_string_with(&inner));
                s.push(')');
            }
        }
    }
}
