//! Helpers around `BigRational`, the coefficient field of every polynomial in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `a` or `a/b`, never a decimal.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(fmt_rational).collect();
    format!("({})", parts.join(","))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// All reduced fractions `p/q` with `|p| <= h` and `1 <= q <= h`, ordered by
/// denominator, then absolute value, positive before negative: 0, 1, -1, 2, -2, ...
pub fn height_bounded(h: i64) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for q in 1..=h {
        for p in 1..=h {
            if p.gcd(&q) != 1 {
                continue;
            }
            out.push(ratio(p, q));
            out.push(ratio(-p, q));
        }
    }
    out
}

/// The fraction with smallest denominator strictly inside `(lo, hi)`; ties go to
/// the one of smallest absolute value.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        simplest_nonneg(lo, hi)
    } else {
        -simplest_nonneg(&-hi, &-lo)
    }
}

// 0 <= lo < hi; hi may be "infinite" when None.
fn simplest_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    simplest_open(lo, Some(hi))
}

fn simplest_open(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let n = lo.floor();
    let next = &n + Rational::one();
    match hi {
        None => next,
        Some(hi) if &next < hi => next,
        Some(hi) => {
            // lo and hi share the integer part n (hi may equal n + 1).
            let lo_frac = lo - &n;
            let hi_frac = hi - &n;
            let inner_lo = hi_frac.recip();
            let inner = if lo_frac.is_zero() {
                simplest_open(&inner_lo, None)
            } else {
                let inner_hi = lo_frac.recip();
                simplest_open(&inner_lo, Some(&inner_hi))
            };
            n + inner.recip()
        }
    }
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_fractions() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(2, 5));
        assert_eq!(simplest_between(&ratio(-1, 2), &ratio(1, 2)), rat(0));
        assert_eq!(simplest_between(&ratio(3, 2), &ratio(7, 2)), rat(2));
        assert_eq!(simplest_between(&ratio(-7, 2), &ratio(-3, 2)), rat(-2));
        assert_eq!(simplest_between(&rat(1), &rat(2)), ratio(3, 2));
        assert_eq!(simplest_between(&ratio(141, 100), &ratio(142, 100)), ratio(17, 12));
    }

    #[test]
    fn heights() {
        let h = height_bounded(3);
        assert_eq!(h.len(), 15);
        assert_eq!(h[0], rat(0));
        assert!(h.contains(&ratio(-2, 3)));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(fmt_rational(&ratio(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
    }
}
