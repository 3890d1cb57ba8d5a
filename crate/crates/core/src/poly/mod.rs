//! Sparse multivariate polynomials over Q in graded-lexicographic order.

mod gcd;
mod roots;
mod uni;

pub use gcd::{content_in, gcd, resultant, squarefree_part};
pub use roots::{isolate_real_roots, refine, separating_samples, RealRoot};
pub use uni::UniPoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

/// Ordered variable names of a polynomial ring Q[x_1, ..., x_n].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient(Arc<[String]>);

impl Ambient {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ambient(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// Parses a comma-separated list such as `x,y`.
    pub fn parse(list: &str) -> Result<Self> {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().map_or(false, |c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Malformed(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Malformed(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Ambient::new(names))
    }

    pub fn xy() -> Self {
        Ambient::new(["x", "y"])
    }

    pub fn uv() -> Self {
        Ambient::new(["u", "v"])
    }

    pub fn t() -> Self {
        Ambient::new(["t"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn describe(&self) -> String {
        self.0.join(",")
    }

    pub(crate) fn check(&self, other: &Ambient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch { left: self.describe(), right: other.describe() })
        }
    }
}

/// Exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn meet(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ring operations exposed through [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial with rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Rational>,
}

/// Checked ring operation: fails on mismatched ambients instead of panicking.
pub fn arith(op: ArithOp, a: &Poly, b: &Poly) -> Result<Poly> {
    a.ambient.check(&b.ambient)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

impl Poly {
    pub fn zero(ambient: &Ambient) -> Self {
        Poly { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::constant(ambient, Rational::one())
    }

    pub fn constant(ambient: &Ambient, c: Rational) -> Self {
        let mut p = Self::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ambient.len()), c);
        }
        p
    }

    pub fn int(ambient: &Ambient, c: i64) -> Self {
        Self::constant(ambient, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(ambient: &Ambient, i: usize) -> Self {
        Self::term(ambient, Monomial::var(ambient.len(), i), Rational::one())
    }

    pub fn term(ambient: &Ambient, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ambient.len(), "monomial arity");
        let mut p = Self::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(ambient: &Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ambient);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ambient.len(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    /// Value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Lowest exponent of `var` over all terms.
    pub fn order_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Highest-index variable that occurs.
    pub fn main_var(&self) -> Option<usize> {
        (0..self.nvars()).rev().find(|&v| self.degree_in(v) > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ambient);
        }
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ambient);
        }
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ambient);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        assert!(var < self.nvars(), "variable index out of range");
        let mut out = Poly::zero(&self.ambient);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::Arity { expected: self.nvars(), got: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Sets `var := value`, keeping the ambient ring.
    pub fn specialize(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(&self.ambient);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let factor = if e == 0 {
                Rational::one()
            } else {
                num_traits::pow::pow(value.clone(), e as usize)
            };
            out.add_term(m2, c * factor);
        }
        out
    }

    /// Coefficients with respect to `var`, index = degree. The coefficients live
    /// in the same ambient and do not involve `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(&self.ambient); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(ambient: &Ambient, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(ambient);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.0[var] += e as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(&self.ambient));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ambient);
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Positive integer multiple `s` and normalized form `p / s`: integer
    /// coefficients with gcd 1 and positive leading coefficient. Returns `(p/s, s)`.
    pub fn normalize_with_scale(&self) -> (Poly, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut s = Rational::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            s = -s;
        }
        (self.scale(&s.recip()), s)
    }

    pub fn normalized(&self) -> Poly {
        self.normalize_with_scale().0
    }

    /// Re-expresses `self` in `target`, sending variable `i` to `map[i]`.
    pub fn embed(&self, target: &Ambient, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Univariate view when only `var` occurs.
    pub fn to_uni(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_uni(ambient: &Ambient, var: usize, u: &UniPoly) -> Poly {
        let mut out = Poly::zero(ambient);
        for (e, c) in u.coeffs().iter().enumerate() {
            let mut m = Monomial::one(ambient.len());
            m.0[var] = e as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Checks that every stored coefficient is nonzero.
    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
            && self.terms.keys().all(|m| m.0.len() == self.nvars())
    }

    /// Every exponent even and every coefficient positive, with a positive constant
    /// term: such a polynomial is strictly positive on R^n.
    pub fn is_evidently_positive(&self) -> bool {
        let has_constant = self
            .terms
            .iter()
            .any(|(m, c)| m.is_one() && c.is_positive());
        has_constant
            && self
                .terms
                .iter()
                .all(|(m, c)| c.is_positive() && m.0.iter().all(|e| e % 2 == 0))
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl Poly {
    /// Canonical text with the variables renamed; names are inserted verbatim.
    pub fn to_string_with(&self, names: &[String]) -> String {
        use std::fmt::Write;
        if self.is_zero() {
            return "0".into();
        }
        let mut f = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.push('-');
                }
            } else {
                let _ = write!(f, " {} ", if neg { '-' } else { '+' });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            if factors.is_empty() {
                f.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                f.push_str(&factors.join("*"));
            } else {
                let _ = write!(f, "{}*{}", fmt_rational(&a), factors.join("*"));
            }
        }
        f
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.ambient.names()))
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        let mut out = Poly::zero(&self.ambient);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn xy() -> (Ambient, Poly, Poly) {
        let a = Ambient::xy();
        let x = Poly::var(&a, 0);
        let y = Poly::var(&a, 1);
        (a, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let p = &(&x - &y) * &(&x + &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn additive_inverse_is_zero() {
        let (_, x, _) = xy();
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn square_of_sum_of_squares() {
        let (_, x, y) = xy();
        let s = &x.pow(2) + &y.pow(2);
        let expected = &(&x.pow(4) + &(&x.pow(2) * &y.pow(2)).scale(&rat(2))) + &y.pow(4);
        assert_eq!(s.pow(2), expected);
    }

    #[test]
    fn derivatives() {
        let (a, x, y) = xy();
        assert_eq!(x.pow(3).derivative(0), x.pow(2).scale(&rat(3)));
        assert_eq!((&x.pow(2) + &y.pow(2)).derivative(1), y.scale(&rat(2)));
        let q = &(&x.pow(4) - &x.pow(2).scale(&rat(5))) + &(&Poly::int(&a, 4) + &y.pow(2));
        assert_eq!(q.derivative(0), &x.pow(3).scale(&rat(4)) - &x.scale(&rat(10)));
    }

    #[test]
    fn evaluation() {
        let (a, x, y) = xy();
        let s = &x.pow(2) + &y.pow(2);
        assert_eq!(s.evaluate(&[rat(1), rat(2)]).unwrap(), rat(5));
        assert!(s.evaluate(&[rat(1)]).is_err());
        let cubic = &y.pow(2) - &(&x.pow(2) * &(&x - &Poly::one(&a)));
        assert_eq!(cubic.evaluate(&[rat(0), rat(0)]).unwrap(), rat(0));
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let p = &x.pow(2) - &y.pow(2);
        assert_eq!(p.div_exact(&(&x - &y)), Some(&x + &y));
        assert_eq!(x.pow(3).div_exact(&(&x.pow(2) + &y.pow(2))), None);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let (_, x, _) = xy();
        let other = Poly::var(&Ambient::uv(), 0);
        assert!(matches!(arith(ArithOp::Add, &x, &other), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn normalization_makes_integer_primitive() {
        let (_, x, y) = xy();
        let p = (&x.scale(&crate::rational::ratio(-1, 2)) + &y.scale(&crate::rational::ratio(3, 4))).normalized();
        assert_eq!(p.to_string(), "2*x - 3*y");
    }
}
