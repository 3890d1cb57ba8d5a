use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly};
use crate::rational::Rational;
use crate::error::{Error, Result};

/// Greatest common divisor, integer-primitive with positive leading coefficient.
/// `gcd(0, b)` is the normalized `b`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    a.ambient.check(&b.ambient).expect("gcd: ambient mismatch");
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let a = a.normalized();
    let b = b.normalized();
    if a.is_constant() || b.is_constant() {
        return Poly::one(&a.ambient);
    }
    if a == b {
        return a;
    }
    if a.is_monomial() {
        return monomial_gcd(&a, &b);
    }
    if b.is_monomial() {
        return monomial_gcd(&b, &a);
    }
    if b.div_exact(&a).is_some() {
        return a;
    }
    if a.div_exact(&b).is_some() {
        return b;
    }
    if let Some(g) = heuristic(&a, &b) {
        return g.normalized();
    }
    gcd_rec(&a, &b).normalized()
}

fn int_coeffs(p: &Poly) -> Option<Vec<(Monomial, BigInt)>> {
    p.terms().map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer()))).collect()
}

fn int_poly(p: &Poly, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Poly {
    Poly::from_terms(&p.ambient, terms.into_iter().map(|(m, c)| (m, Rational::from_integer(c))))
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn int_content(p: &Poly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

// Evaluation at a large integer, recursive integer gcd, and xi-adic
// reconstruction. The answer is kept only after exact trial division.
fn heuristic(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut vars = a.vars_used();
    vars.extend(b.vars_used());
    vars.sort_unstable();
    vars.dedup();
    heu_rec(a, b, &vars, 0)
}

fn heu_rec(a: &Poly, b: &Poly, vars: &[usize], depth: u32) -> Option<Poly> {
    int_coeffs(a)?;
    int_coeffs(b)?;
    let ca = int_content(a);
    let cb = int_content(b);
    let scale = Rational::from_integer(ca.gcd(&cb));
    let Some((&v, rest)) = vars.split_last() else {
        return Some(Poly::constant(&a.ambient, scale));
    };
    let pa = a.scale(&Rational::from_integer(ca).recip());
    let pb = b.scale(&Rational::from_integer(cb).recip());
    if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
        let (free, other) = if pb.degree_in(v) == 0 { (&pb, &pa) } else { (&pa, &pb) };
        let mut g = free.clone();
        for c in other.coeffs_in(v).iter().filter(|c| !c.is_zero()) {
            g = heu_rec(&g, c, rest, depth + 1)?;
            if g.is_constant() {
                break;
            }
        }
        return Some(g.scale(&scale));
    }
    let mut xi: BigInt = 2 * max_norm(&pa).min(max_norm(&pb)) + 29;
    for _ in 0..4 {
        let x = Rational::from_integer(xi.clone());
        let av = pa.specialize(v, &x);
        let bv = pb.specialize(v, &x);
        if !av.is_zero() && !bv.is_zero() {
            let gamma = heu_rec(&av, &bv, rest, depth + 1)?;
            let g = reconstruct(&gamma, &xi, v);
            if !g.is_zero() {
                let g = g.scale(&Rational::from_integer(int_content(&g)).recip());
                if pa.div_exact(&g).is_some() && pb.div_exact(&g).is_some() {
                    return Some(g.scale(&scale));
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn reconstruct(gamma: &Poly, xi: &BigInt, v: usize) -> Poly {
    let half: BigInt = xi / 2;
    let mut g = int_coeffs(gamma).unwrap_or_default();
    let mut out = Vec::new();
    let mut i = 0u32;
    while !g.is_empty() {
        let mut next = Vec::new();
        for (m, c) in g {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                let mut mm = m.clone();
                mm.0[v] += i;
                out.push((mm, r.clone()));
            }
            let q = (c - r) / xi;
            if !q.is_zero() {
                next.push((m, q));
            }
        }
        g = next;
        i += 1;
    }
    int_poly(gamma, out)
}

// Monomial `m` against an arbitrary polynomial: only the shared power product survives.
fn monomial_gcd(m: &Poly, p: &Poly) -> Poly {
    let mut e = m.leading_term().unwrap().0.clone();
    for (k, _) in p.terms() {
        e = e.meet(k);
    }
    Poly::term(&m.ambient, e, num_traits::One::one())
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(&a.ambient);
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }
    let v = a.main_var().max(b.main_var()).unwrap();
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    if da == 0 {
        return gcd_rec(a, &content_in(b, v));
    }
    if db == 0 {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = if coprime_in(&pa, &pb, v) {
        Poly::one(&a.ambient)
    } else if da >= db {
        prs(&pa, &pb, v)
    } else {
        prs(&pb, &pa, v)
    };
    (&c * &g).normalized()
}

/// Content with respect to `var`: the gcd of the coefficients of `p` seen as a
/// polynomial in `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    let mut g = Poly::zero(&p.ambient);
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return Poly::one(&p.ambient);
        }
    }
    g.normalized()
}

// Sufficient test: a specialization of the other variables that keeps both
// leading coefficients nonzero and has coprime univariate images.
fn coprime_in(a: &Poly, b: &Poly, v: usize) -> bool {
    let n = a.nvars();
    for attempt in 0..3i64 {
        let point: Vec<Rational> = (0..n).map(|i| Rational::from_integer((attempt * 7 + 2 * i as i64 + 1).into())).collect();
        let special = |p: &Poly| {
            let mut q = p.clone();
            for (i, c) in point.iter().enumerate() {
                if i != v {
                    q = q.specialize(i, c);
                }
            }
            q
        };
        let (la, lb) = (special(&lc_in(a, v)), special(&lc_in(b, v)));
        if la.is_zero() || lb.is_zero() {
            continue;
        }
        let (Some(ua), Some(ub)) = (special(a).to_uni(v), special(b).to_uni(v)) else {
            return false;
        };
        return ua.gcd(&ub).degree() == 0;
    }
    false
}

fn lc_in(p: &Poly, v: usize) -> Poly {
    p.coeffs_in(v).pop().unwrap()
}

fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = b.degree_in(v);
    let lb = lc_in(b, v);
    let mut e = a.degree_in(v) - n + 1;
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= n {
        let dr = r.degree_in(v);
        let mut shift = Monomial::one(a.nvars());
        shift.0[v] = dr - n;
        let t = lc_in(&r, v).mul_monomial(&shift, &num_traits::One::one());
        r = &(&lb * &r) - &(&t * b);
        e -= 1;
    }
    if e > 0 {
        r = &r * &lb.pow(e);
    }
    r
}

// Subresultant PRS on polynomials primitive in `v` with deg_v a >= deg_v b > 0.
// Returns the primitive part of the last nonzero remainder.
fn prs(a: &Poly, b: &Poly, v: usize) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    let one = Poly::one(&a.ambient);
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return one;
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = lc_in(&a, v);
        if delta > 0 {
            let num = g.pow(delta);
            h = num.div_exact(&h.pow(delta - 1)).expect("subresultant division is exact");
        }
    }
    let c = content_in(&b, v);
    b.div_exact(&c).expect("content divides").normalized()
}

/// Product of the distinct irreducible factors of `p`.
pub fn squarefree_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(sqf(&p.normalized()))
}

fn sqf(p: &Poly) -> Poly {
    let Some(v) = p.main_var() else {
        return Poly::one(&p.ambient);
    };
    if p.is_monomial() {
        let (m, _) = p.leading_term().unwrap();
        let e = Monomial(m.0.iter().map(|&k| k.min(1)).collect());
        return Poly::term(&p.ambient, e, One::one());
    }
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    let g = gcd(&pp, &pp.derivative(v));
    let s = pp.div_exact(&g).expect("gcd divides");
    (&sqf(&c) * &s).normalized()
}

/// Sylvester resultant of `a` and `b` eliminating `var`.
pub fn resultant(a: &Poly, b: &Poly, var: usize) -> Result<Poly> {
    a.ambient.check(&b.ambient)?;
    if var >= a.nvars() {
        return Err(Error::VariableIndex(var));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = a.degree_in(var) as usize;
    let n = b.degree_in(var) as usize;
    if m == 0 && n == 0 {
        return Err(Error::ConstantInVariable);
    }
    if n == 0 {
        return Ok(b.pow(m as u32));
    }
    if m == 0 {
        return Ok(a.pow(n as u32));
    }
    let ca = a.coeffs_in(var);
    let cb = b.coeffs_in(var);
    let size = m + n;
    let zero = Poly::zero(&a.ambient);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for (j, c) in ca.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in cb.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let size = m.len();
    let amb = m[0][0].ambient.clone();
    let mut sign_flip = false;
    let mut prev = Poly::one(&amb);
    for k in 0..size {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero(&amb);
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ambient;
    use crate::rational::rat;

    fn xy() -> (Ambient, Poly, Poly) {
        let a = Ambient::xy();
        (a.clone(), Poly::var(&a, 0), Poly::var(&a, 1))
    }

    #[test]
    fn gcd_examples() {
        let (_, x, y) = xy();
        let a = &x.pow(2) - &y.pow(2);
        let b = &x.pow(2) - &(&x * &y);
        assert_eq!(gcd(&a, &b), &x - &y);
        assert!(gcd(&(&x.pow(2) + &y.pow(2)), &x.pow(3)).is_one());
        let p = (&x.scale(&rat(-2)) + &y.scale(&rat(4))).pow(2);
        assert_eq!(gcd(&p, &Poly::zero(x.ambient())), p.normalized());
    }

    #[test]
    fn gcd_needs_prs() {
        let (a, x, y) = xy();
        let one = Poly::one(&a);
        let g = &(&x * &y) + &one;
        let p = &g * &(&x.pow(2) + &y);
        let q = &g * &(&y.pow(3) - &x);
        assert_eq!(gcd(&p, &q), g);
    }

    #[test]
    fn squarefree_examples() {
        let (a, x, y) = xy();
        assert_eq!(squarefree_part(&(&x.pow(2) * &y)).unwrap(), &x * &y);
        let s = &x.pow(2) + &y.pow(2);
        assert_eq!(squarefree_part(&s).unwrap(), s);
        let c = (&x - &Poly::one(&a)).pow(3);
        assert_eq!(squarefree_part(&c).unwrap(), &x - &Poly::one(&a));
        let mixed = &(&x.pow(2) * &(&x + &y).pow(3)) * &(&y.pow(2) + &Poly::one(&a));
        assert_eq!(
            squarefree_part(&mixed).unwrap(),
            (&(&x * &(&x + &y)) * &(&y.pow(2) + &Poly::one(&a))).normalized()
        );
        assert!(squarefree_part(&Poly::zero(&a)).is_err());
    }

    #[test]
    fn resultant_examples() {
        let (_, x, y) = xy();
        let r = resultant(&(&y.pow(2) + &x.pow(2)), &(&y - &x), 1).unwrap();
        assert_eq!(r, x.pow(2).scale(&rat(2)));
        assert_eq!(resultant(&y, &x, 1).unwrap(), x);
        let r = resultant(&(&y.pow(2) + &x.pow(2)), &(&y.pow(2) - &x), 1).unwrap();
        assert_eq!(r, &(&x.pow(4) + &x.pow(3).scale(&rat(2))) + &x.pow(2));
        assert!(resultant(&x, &x, 1).is_err());
    }
}
