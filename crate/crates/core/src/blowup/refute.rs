//! Continuity refutation by rational arcs, in any dimension.

use std::collections::BTreeMap;

use super::witness::Witness;
use crate::error::{Error, Result};
use crate::ratfun::{one_sided_limits, Arc, ExtValue, RatFun};
use crate::rational::{height_bounded, rat, Rational};

/// Lines and parabolas `(x0 + t, y0 + a t + b t^2)` and the same with the
/// coordinates swapped, for `a, b` of height at most `height`.
pub fn battery_plane(base: &[Rational; 2], height: i64) -> Vec<Arc> {
    let hs = height_bounded(height);
    let mut out = Vec::new();
    for a in &hs {
        for b in &hs {
            out.push(Arc::polynomial(base, &[vec![rat(1)], vec![a.clone(), b.clone()]]));
            out.push(Arc::polynomial(base, &[vec![a.clone(), b.clone()], vec![rat(1)]]));
        }
    }
    out
}

/// Arcs `base + c1 t + c2 t^2` with `c1 ∈ {-1,0,1}^n ∖ 0` and `c2 ∈ {0,1}^n`.
pub fn battery_space(base: &[Rational]) -> Vec<Arc> {
    let n = base.len();
    let linear: Vec<Vec<i64>> = cube(n, &[-1, 0, 1]).into_iter().filter(|c| c.iter().any(|e| *e != 0)).collect();
    let quadratic = cube(n, &[0, 1]);
    let mut out = Vec::new();
    for c1 in &linear {
        for c2 in &quadratic {
            let coeffs: Vec<Vec<Rational>> = (0..n).map(|i| vec![rat(c1[i]), rat(c2[i])]).collect();
            out.push(Arc::polynomial(base, &coeffs));
        }
    }
    out
}

fn cube(n: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(*x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Arcs based at the origin and at each unit vector.
pub fn default_battery(n: usize) -> Vec<Arc> {
    let mut bases = vec![vec![rat(0); n]];
    for i in 0..n {
        let mut e = vec![rat(0); n];
        e[i] = rat(1);
        bases.push(e);
    }
    bases
        .iter()
        .flat_map(|b| match n {
            2 => battery_plane(&[b[0].clone(), b[1].clone()], 3),
            _ => battery_space(b),
        })
        .collect()
}

/// Looks for two arcs of the battery with a common base point and different
/// limits, or one with an infinite limit. Both traversal directions are used.
pub fn refute_by_arcs(f: &RatFun, battery: &[Arc]) -> Result<Option<Witness>> {
    let coefficient = vec![0; f.nvars()];
    let mut seen: BTreeMap<Vec<Rational>, (Arc, ExtValue)> = BTreeMap::new();
    for arc in battery {
        if arc.dim() != f.nvars() {
            return Err(Error::Arity { expected: f.nvars(), got: arc.dim() });
        }
        let Some(base) = arc.base_point() else { continue };
        let (plus, minus) = match one_sided_limits(f, arc) {
            Ok(l) => l,
            Err(Error::ArcInPoleLocus) => continue,
            Err(e) => return Err(e),
        };
        for (l, a) in [(plus, arc.clone()), (minus, arc.reversed())] {
            if l.is_infinite() {
                return Ok(Some(Witness::Unbounded { coefficient, arc: a, limit: l }));
            }
            match seen.get(&base) {
                None => {
                    seen.insert(base.clone(), (a, l));
                }
                Some((a0, l0)) if *l0 != l => {
                    return Ok(Some(Witness::ArcPair {
                        coefficient,
                        arcs: [a0.clone(), a],
                        limits: [l0.clone(), l],
                    }))
                }
                _ => {}
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use crate::poly::Ambient;

    fn f(s: &str, a: &Ambient) -> RatFun {
        parse_expr(s, a).unwrap().to_ratfun(a).unwrap()
    }

    #[test]
    fn plane_examples() {
        let xy = Ambient::xy();
        let g = f("x*y/(x^2+y^2)", &xy);
        let battery = [Arc::parse("t, 0").unwrap(), Arc::parse("t, t").unwrap()];
        let w = refute_by_arcs(&g, &battery).unwrap().unwrap();
        assert_eq!(w.to_string(), "arcs (t, 0) and (t, t) have limits 0 and 1/2");
        assert!(w.verify(&g).unwrap());
        assert_eq!(refute_by_arcs(&f("x^3/(x^2+y^2)", &xy), &default_battery(2)).unwrap(), None);
        let w = refute_by_arcs(&f("1/(x^2+y^2)", &xy), &[Arc::parse("t, 0").unwrap()]).unwrap().unwrap();
        assert!(matches!(w, Witness::Unbounded { limit: ExtValue::PlusInfinity, .. }));
    }

    #[test]
    fn space_battery_size() {
        assert_eq!(battery_space(&[rat(0), rat(0), rat(0)]).len(), 26 * 8);
        assert_eq!(default_battery(3).len(), 4 * 26 * 8);
    }

    #[test]
    fn horned_umbrella_survives() {
        let a = Ambient::new(["x", "y", "z"]);
        let g = f("z^2*(x^2+y^4+y^2*z^4+y^3*z^3-2*y^3*z^2)/(x^2+y^4+y^2*z^4)", &a);
        assert_eq!(refute_by_arcs(&g, &default_battery(3)).unwrap(), None);
    }
}
