//! Real zero sets of bivariate polynomials, by projection onto the first axis.

use super::RatFun;
use crate::error::{Error, Result};
use crate::poly::{
    content_in, isolate_real_roots, refine, resultant, separating_samples, squarefree_part, Poly, RealRoot, UniPoly,
};
use crate::rational::{sign, Rational};

/// Description of the real zero set of a bivariate polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaneZeros {
    /// Rational isolated zeros (complete when `curve` is false).
    pub points: Vec<[Rational; 2]>,
    /// The zero set contains a curve.
    pub curve: bool,
    /// Two points with opposite signs of the squarefree part, when `curve` holds.
    pub sign_change: Option<([Rational; 2], [Rational; 2])>,
    /// Isolated zeros with irrational coordinates may exist.
    pub nonrational: bool,
}

/// Real zeros of `q` in Q[x, y]. Exact except that `nonrational` is conservative.
pub fn real_zeros2(q: &Poly) -> Result<PlaneZeros> {
    if q.nvars() != 2 {
        return Err(Error::Dimension { expected: 2, got: q.nvars() });
    }
    let mut out = PlaneZeros::default();
    if q.is_zero() {
        out.curve = true;
        return Ok(out);
    }
    if q.is_constant() {
        return Ok(out);
    }
    let g = squarefree_part(q)?;
    let c = content_in(&g, 1);
    let h = g.div_exact(&c).expect("content divides");
    if !c.is_constant() {
        let cu = c.to_uni(0).expect("content is univariate in x");
        if let Some(r) = isolate_real_roots(&cu)?.first() {
            out.curve = true;
            out.sign_change = vertical_sign_change(&g, &cu, r);
            return Ok(out);
        }
    }
    if h.degree_in(1) == 0 {
        return Ok(out);
    }
    let hy = h.derivative(1);
    let disc = resultant(&h, &hy, 1)?;
    let lc = h.coeffs_in(1).pop().unwrap();
    let crit = squarefree_part(&(&disc * &lc))?;
    let crit_u = crit.to_uni(0).expect("eliminant is univariate in x");
    let crit_roots = isolate_real_roots(&crit_u)?;
    for xs in separating_samples(&crit_roots) {
        let fiber = h.specialize(0, &xs).to_uni(1).expect("univariate in y");
        let roots = isolate_real_roots(&fiber)?;
        if let Some(r) = roots.first() {
            out.curve = true;
            out.sign_change = Some(horizontal_sign_change(&g, &fiber, &xs, r));
            return Ok(out);
        }
    }
    for r in &crit_roots {
        match r {
            RealRoot::Exact(xr) => {
                let fiber = h.specialize(0, xr).to_uni(1).expect("univariate in y");
                for y in isolate_real_roots(&fiber)? {
                    match y {
                        RealRoot::Exact(yr) => out.points.push([xr.clone(), yr]),
                        RealRoot::Isolated { .. } => out.nonrational = true,
                    }
                }
            }
            RealRoot::Isolated { .. } => out.nonrational = true,
        }
    }
    Ok(out)
}

// Vertical line x = r inside Z(g); sign change across it along a horizontal segment.
fn vertical_sign_change(g: &Poly, cu: &UniPoly, r: &RealRoot) -> Option<([Rational; 2], [Rational; 2])> {
    let width = Rational::new(1.into(), 1024.into());
    let r = refine(cu, r, &width);
    let (lo, hi) = match &r {
        RealRoot::Exact(x) => (x - &width, x + &width),
        RealRoot::Isolated { lo, hi } => (lo.clone(), hi.clone()),
    };
    for k in 0..64i64 {
        let y = Rational::from_integer(k.into());
        let a = [lo.clone(), y.clone()];
        let b = [hi.clone(), y];
        if sign(&g.evaluate(&a).ok()?) * sign(&g.evaluate(&b).ok()?) < 0 {
            return Some((a, b));
        }
    }
    None
}

fn horizontal_sign_change(g: &Poly, fiber: &UniPoly, xs: &Rational, r: &RealRoot) -> ([Rational; 2], [Rational; 2]) {
    let mut width = Rational::new(1.into(), 8.into());
    loop {
        let rr = refine(fiber, r, &width);
        let (lo, hi) = match &rr {
            RealRoot::Exact(y) => (y - &width, y + &width),
            RealRoot::Isolated { lo, hi } => (lo.clone(), hi.clone()),
        };
        let a = [xs.clone(), lo];
        let b = [xs.clone(), hi];
        let sa = sign(&g.evaluate(&a).unwrap());
        let sb = sign(&g.evaluate(&b).unwrap());
        if sa * sb < 0 {
            return (a, b);
        }
        width = width / Rational::from_integer(8.into());
    }
}

/// Candidate indeterminacy points of a bivariate rational function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndeterminacyReport {
    pub rational_points: Vec<[Rational; 2]>,
    pub nonrational_roots_flag: bool,
    pub curve_of_poles_flag: bool,
    pub sign_change: Option<([Rational; 2], [Rational; 2])>,
}

/// Zeros of the denominator. When the denominator vanishes only at finitely many
/// points, these are all critical points of it and contain every indeterminacy point.
pub fn indeterminacy_candidates(f: &RatFun) -> Result<IndeterminacyReport> {
    let z = real_zeros2(f.den())?;
    Ok(IndeterminacyReport {
        rational_points: z.points,
        nonrational_roots_flag: z.nonrational,
        curve_of_poles_flag: z.curve,
        sign_change: z.sign_change,
    })
}

/// `(Σ s_i² p_i q_i) / (Σ s_i² q_i²)`.
pub fn glue_regular(pieces: &[(Poly, Poly, Poly)]) -> Result<RatFun> {
    let Some(first) = pieces.first() else {
        return Err(Error::Empty("gluing pieces"));
    };
    let amb = first.0.ambient().clone();
    let mut num = Poly::zero(&amb);
    let mut den = Poly::zero(&amb);
    for (p, q, s) in pieces {
        if q.is_zero() || s.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let s2 = s.pow(2);
        num = &num + &(&(&s2 * p) * q);
        den = &den + &(&s2 * &q.pow(2));
    }
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    RatFun::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::{rat, ratio};

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn isolated_origin() {
        let f = RatFun::new(p("x^3"), p("x^2+y^2")).unwrap();
        let r = indeterminacy_candidates(&f).unwrap();
        assert_eq!(r.rational_points, vec![[rat(0), rat(0)]]);
        assert!(!r.curve_of_poles_flag && !r.nonrational_roots_flag);
    }

    #[test]
    fn pole_line() {
        let f = RatFun::new(p("x+y"), p("x-y")).unwrap();
        let r = indeterminacy_candidates(&f).unwrap();
        assert!(r.curve_of_poles_flag);
        let (a, b) = r.sign_change.unwrap();
        let q = p("x-y");
        assert!(q.evaluate(&a).unwrap() * q.evaluate(&b).unwrap() < rat(0));
        let v = indeterminacy_candidates(&RatFun::new(p("1"), p("x^2-2")).unwrap()).unwrap();
        assert!(v.curve_of_poles_flag);
    }

    #[test]
    fn polynomial_has_no_candidates() {
        let r = indeterminacy_candidates(&RatFun::from_poly(p("x+y"))).unwrap();
        assert_eq!(r, IndeterminacyReport::default());
    }

    #[test]
    fn two_points_and_irrational() {
        let z = real_zeros2(&p("x^2*(x-1)^2+y^2")).unwrap();
        assert_eq!(z.points, vec![[rat(0), rat(0)], [rat(1), rat(0)]]);
        let z = real_zeros2(&p("(x^2-2)^2+y^2")).unwrap();
        assert!(z.points.is_empty() && z.nonrational && !z.curve);
        let z = real_zeros2(&p("(2*x-1)^2+(3*y+2)^2")).unwrap();
        assert_eq!(z.points, vec![[ratio(1, 2), ratio(-2, 3)]]);
    }

    #[test]
    fn gluing() {
        let g = glue_regular(&[(p("x"), p("1"), p("y")), (p("x"), p("1"), p("x"))]).unwrap();
        assert_eq!(g, RatFun::from_poly(p("x")));
        let single = glue_regular(&[(p("x^3"), p("x^2+y^2"), p("1"))]).unwrap();
        assert_eq!(single, RatFun::new(p("x^3"), p("x^2+y^2")).unwrap());
        assert!(glue_regular(&[]).is_err());
    }
}
