//! Recursive-descent parser for polynomial and rational expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | name | '(' expr ')'
//! ```
//!
//! `a/b` with integer literals is just division, so rationals need no special token.
//! A power binds tighter than unary minus: `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::{Ambient, Poly};
use crate::rational::Rational;

pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().unwrap()), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Name(chars[start..i].iter().collect()), start));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Op(c), i));
                i += 1;
            } else {
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
            }
        }
        toks.push((Tok::End, chars.len()));
        Ok(Lexer { toks })
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ambient: &'a Ambient,
    cap: u32,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let paren = self.peek() == &Tok::Op('(');
        if paren {
            self.bump();
        }
        let e = match self.bump() {
            Tok::Int(n) => n,
            _ => return Err(Error::Syntax { pos, msg: "expected a nonnegative integer exponent".into() }),
        };
        if paren && self.bump() != Tok::Op(')') {
            return self.syntax("expected `)`");
        }
        match e.to_u32() {
            Some(k) if k <= self.cap => Ok(Expr::Pow(Box::new(base), k)),
            _ => Err(Error::ExponentOverflow { exponent: e.to_string(), cap: self.cap }),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Num(Rational::from_integer(n))),
            Tok::Name(name) => match self.ambient.index_of(&name) {
                Some(i) => Ok(Expr::Var(i)),
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.bump() != Tok::Op(')') {
                    return Err(Error::Syntax { pos: self.toks[self.at.saturating_sub(1)].1, msg: "expected `)`".into() });
                }
                Ok(e)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            Tok::Op(c) => Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") }),
        }
    }
}

/// Parses an expression over the variables of `ambient`.
pub fn parse_expr(text: &str, ambient: &Ambient) -> Result<Expr> {
    parse_expr_capped(text, ambient, DEFAULT_EXPONENT_CAP)
}

pub fn parse_expr_capped(text: &str, ambient: &Ambient, cap: u32) -> Result<Expr> {
    let lexer = Lexer::new(text)?;
    let mut p = Parser { toks: lexer.toks, at: 0, ambient, cap };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a polynomial; division is only allowed by nonzero constants.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<Poly> {
    let ambient = Ambient::new(vars.iter().copied());
    parse_expr(text, &ambient)?.to_poly(&ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn transcriptions() {
        let p = parse_poly("x^2 + y^2", &["x", "y"]).unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
        let c = parse_poly("y^2 - x^2*(x-1)", &["x", "y"]).unwrap();
        assert_eq!(c.to_string(), "-x^3 + x^2 + y^2");
        let q = parse_poly("(x+2)*(x+1)*(x-1)*(x-2) + y^2", &["x", "y"]).unwrap();
        assert_eq!(q.to_string(), "x^4 - 5*x^2 + y^2 + 4");
        assert_eq!(parse_poly("  -x^2 ", &["x"]).unwrap().evaluate(&[rat(3)]).unwrap(), rat(-9));
        assert_eq!(parse_poly("3/4*x", &["x"]).unwrap().to_string(), "3/4*x");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("x + ", &["x"]), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x + z", &["x", "y"]), Err(Error::UnknownVariable { pos: 4, .. })));
        assert!(matches!(parse_poly("x^70000", &["x"]), Err(Error::ExponentOverflow { .. })));
        assert!(matches!(parse_poly("1/x", &["x"]), Err(Error::NonPolynomial)));
        assert!(matches!(parse_poly("x/0", &["x"]), Err(Error::DivisionByZero)));
        assert!(matches!(parse_poly("(x", &["x"]), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x $ 1", &["x"]), Err(Error::Syntax { pos: 2, .. })));
    }
}
