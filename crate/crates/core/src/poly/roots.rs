use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::UniPoly;
use crate::error::{Error, Result};
use crate::rational::{simplest_between, Rational};

/// A real root: either an exact rational, or an open interval with rational,
/// non-root endpoints containing exactly one (irrational) root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Isolated { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RealRoot::Exact(r) => Some(r),
            RealRoot::Isolated { .. } => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealRoot::Exact(_))
    }

    /// A rational approximation (the root itself or the interval midpoint).
    pub fn approx(&self) -> Rational {
        match self {
            RealRoot::Exact(r) => r.clone(),
            RealRoot::Isolated { lo, hi } => (lo + hi) / Rational::from_integer(BigInt::from(2)),
        }
    }

    pub fn lower(&self) -> &Rational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Isolated { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Isolated { hi, .. } => hi,
        }
    }
}

struct Sturm(Vec<UniPoly>);

impl Sturm {
    fn new(p: &UniPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        Sturm(seq)
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = 0;
        let mut v = 0;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    // Roots in (a, b] for a < b.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Isolates the distinct real roots of `u`, in increasing order. Rational roots
/// are reported exactly.
pub fn isolate_real_roots(u: &UniPoly) -> Result<Vec<RealRoot>> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if u.degree() == 0 {
        return Ok(Vec::new());
    }
    let p = u.squarefree();
    let sturm = Sturm::new(&p);
    let lead = p.lead();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| (c / &lead).abs())
        .max()
        .unwrap_or_else(Rational::zero)
        + Rational::one();
    let lo = -bound.clone();
    let total = sturm.count(&lo, &bound);
    let mut out = Vec::new();
    isolate(&p, &sturm, lo, bound, total, &mut out);
    let ints = p.primitive_integer();
    let an = ints.last().cloned().unwrap_or_else(BigInt::one);
    let resolution = Rational::new(BigInt::one(), &an * &an * BigInt::from(2));
    for root in &mut out {
        if let RealRoot::Isolated { lo, hi } = root {
            if let Some(r) = rational_inside(&p, lo.clone(), hi.clone(), &resolution) {
                *root = RealRoot::Exact(r);
            }
        }
    }
    Ok(out)
}

// (lo, hi] has `n` roots and lo, hi are not roots.
fn isolate(p: &UniPoly, s: &Sturm, lo: Rational, hi: Rational, n: usize, out: &mut Vec<RealRoot>) {
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealRoot::Isolated { lo, hi });
        return;
    }
    let two = Rational::from_integer(BigInt::from(2));
    let mid = (&lo + &hi) / &two;
    if p.eval(&mid).is_zero() {
        let mut e = (&hi - &lo) / Rational::from_integer(BigInt::from(4));
        loop {
            let a = &mid - &e;
            let b = &mid + &e;
            if !p.eval(&a).is_zero() && !p.eval(&b).is_zero() && s.count(&a, &b) == 1 {
                let left = s.count(&lo, &a);
                let right = s.count(&b, &hi);
                isolate(p, s, lo, a, left, out);
                out.push(RealRoot::Exact(mid));
                isolate(p, s, b, hi, right, out);
                return;
            }
            e /= &two;
        }
    }
    let left = s.count(&lo, &mid);
    isolate(p, s, lo, mid.clone(), left, out);
    isolate(p, s, mid, hi, n - left, out);
}

// A squarefree `p` with a single simple root in (lo, hi): returns it when rational.
// Any rational root has denominator dividing the leading integer coefficient a_n,
// and two such fractions are at least 1/a_n^2 apart, so once the interval is
// narrower than that the simplest fraction inside is the only candidate.
fn rational_inside(p: &UniPoly, mut lo: Rational, mut hi: Rational, resolution: &Rational) -> Option<Rational> {
    let slo = p.sign_at(&lo);
    let two = Rational::from_integer(BigInt::from(2));
    loop {
        let cand = simplest_between(&lo, &hi);
        let sc = p.sign_at(&cand);
        if sc == 0 {
            return Some(cand);
        }
        if &hi - &lo < *resolution {
            return None;
        }
        if sc == slo {
            lo = cand;
        } else {
            hi = cand;
        }
        let m = (&lo + &hi) / &two;
        let sm = p.sign_at(&m);
        if sm == 0 {
            return Some(m);
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
}

/// Refines an isolating interval of a simple root until its width is below `width`.
pub fn refine(p: &UniPoly, root: &RealRoot, width: &Rational) -> RealRoot {
    let (mut lo, mut hi) = match root {
        RealRoot::Exact(_) => return root.clone(),
        RealRoot::Isolated { lo, hi } => (lo.clone(), hi.clone()),
    };
    let slo = p.sign_at(&lo);
    let two = Rational::from_integer(BigInt::from(2));
    while &hi - &lo >= *width {
        let m = (&lo + &hi) / &two;
        let sm = p.sign_at(&m);
        if sm == 0 {
            return RealRoot::Exact(m);
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    RealRoot::Isolated { lo, hi }
}

/// One rational sample in every open cell of R minus the given sorted roots.
pub fn separating_samples(roots: &[RealRoot]) -> Vec<Rational> {
    if roots.is_empty() {
        return vec![Rational::zero()];
    }
    let mut out = Vec::with_capacity(roots.len() + 1);
    out.push((roots[0].lower() - Rational::one()).floor());
    for w in roots.windows(2) {
        let l = w[0].upper();
        let r = w[1].lower();
        if l < r {
            out.push(simplest_between(l, r));
        } else {
            out.push(l.clone());
        }
    }
    out.push((roots[roots.len() - 1].upper() + Rational::one()).ceil());
    out
}
