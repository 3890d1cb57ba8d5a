//! Height fields and zero-set samples for external plotting.

use std::fmt::Write;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::rational::{rat, to_f64, Rational};

/// Vertices in row-major grid order; faces index into `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub vertices: Vec<[Rational; 3]>,
    pub faces: Vec<[usize; 3]>,
}

fn grid(lo: &Rational, hi: &Rational, cells: u32) -> Vec<Rational> {
    let step = (hi - lo) / rat(cells as i64);
    (0..=cells).map(|i| lo + &step * rat(i as i64)).collect()
}

/// Graph of `f` over `[x0,x1] × [y0,y1]` on a `cells × cells` grid. Where `f`
/// is undefined the value from `extension` is used, otherwise the vertex is skipped.
pub fn height_field(
    f: &RatFun,
    x: (&Rational, &Rational),
    y: (&Rational, &Rational),
    cells: u32,
    extension: &[(Vec<Rational>, Rational)],
) -> Result<Mesh> {
    if f.nvars() != 2 {
        return Err(Error::Dimension { expected: 2, got: f.nvars() });
    }
    if cells == 0 {
        return Err(Error::Malformed("resolution must be positive".into()));
    }
    let xs = grid(x.0, x.1, cells);
    let ys = grid(y.0, y.1, cells);
    let mut vertices = Vec::new();
    let mut index = vec![None; xs.len() * ys.len()];
    for (j, yv) in ys.iter().enumerate() {
        for (i, xv) in xs.iter().enumerate() {
            let p = vec![xv.clone(), yv.clone()];
            let z = match f.evaluate(&p)? {
                Some(z) => Some(z),
                None => extension.iter().find(|(q, _)| *q == p).map(|(_, v)| v.clone()),
            };
            if let Some(z) = z {
                index[j * xs.len() + i] = Some(vertices.len());
                vertices.push([xv.clone(), yv.clone(), z]);
            }
        }
    }
    let w = xs.len();
    let mut faces = Vec::new();
    for j in 0..ys.len() - 1 {
        for i in 0..w - 1 {
            let (a, b, c, d) = (index[j * w + i], index[j * w + i + 1], index[(j + 1) * w + i], index[(j + 1) * w + i + 1]);
            if let (Some(a), Some(b), Some(d)) = (a, b, d) {
                faces.push([a, b, d]);
            }
            if let (Some(a), Some(d), Some(c)) = (a, d, c) {
                faces.push([a, d, c]);
            }
        }
    }
    Ok(Mesh { vertices, faces })
}

/// Points of `Z(p)` for `p` of degree one in `var`: the other coordinates run
/// over a grid and `var` is solved for; where `p` vanishes on the whole fiber
/// the fiber is sampled on its own grid. Points outside the box are dropped.
pub fn zero_samples(p: &Poly, var: usize, ranges: &[(Rational, Rational)], cells: u32) -> Result<Vec<Vec<Rational>>> {
    let n = p.nvars();
    if ranges.len() != n {
        return Err(Error::Arity { expected: n, got: ranges.len() });
    }
    if var >= n {
        return Err(Error::VariableIndex(var));
    }
    if p.degree_in(var) != 1 {
        return Err(Error::Malformed(format!("polynomial must have degree one in variable {var}")));
    }
    let coeffs = p.coeffs_in(var);
    let (b, a) = (&coeffs[0], &coeffs[1]);
    let grids: Vec<Vec<Rational>> = ranges.iter().map(|(lo, hi)| grid(lo, hi, cells)).collect();
    let mut points: Vec<Vec<Rational>> = vec![Vec::new()];
    for (i, g) in grids.iter().enumerate() {
        if i == var {
            continue;
        }
        points = points
            .into_iter()
            .flat_map(|pt| g.iter().map(move |c| {
                let mut q = pt.clone();
                q.push(c.clone());
                q
            }))
            .collect();
    }
    let mut out = Vec::new();
    for rest in points {
        let mut full = rest.clone();
        full.insert(var, rat(0));
        let av = a.evaluate(&full)?;
        let bv = b.evaluate(&full)?;
        if !av.is_zero() {
            let v = -bv / av;
            if v >= ranges[var].0 && v <= ranges[var].1 {
                full[var] = v;
                out.push(full);
            }
        } else if bv.is_zero() {
            for v in &grids[var] {
                full[var] = v.clone();
                out.push(full.clone());
            }
        }
    }
    Ok(out)
}

fn float(r: &Rational) -> String {
    format!("{:.6}", to_f64(r))
}

/// Wavefront OBJ text.
pub fn to_obj(m: &Mesh) -> String {
    let mut s = String::new();
    for v in &m.vertices {
        let _ = writeln!(s, "v {} {} {}", float(&v[0]), float(&v[1]), float(&v[2]));
    }
    for f in &m.faces {
        let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    s
}

/// One `x,y,z` row per point, with a header.
pub fn to_csv<'a, I>(names: &[String], points: I) -> String
where
    I: IntoIterator<Item = &'a [Rational]>,
{
    let mut s = names.join(",");
    s.push('\n');
    for p in points {
        let row: Vec<String> = p.iter().map(float).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_expr, parse_poly};
    use crate::poly::Ambient;

    #[test]
    fn flat_and_canopy() {
        let a = Ambient::xy();
        let zero = RatFun::zero(&a);
        let m = height_field(&zero, (&rat(-1), &rat(1)), (&rat(-1), &rat(1)), 4, &[]).unwrap();
        assert_eq!(m.vertices.len(), 25);
        assert_eq!(m.faces.len(), 32);
        assert!(m.vertices.iter().all(|v| v[2].is_zero()));
        let f = parse_expr("x^3/(x^2+y^2)", &a).unwrap().to_ratfun(&a).unwrap();
        let holed = height_field(&f, (&rat(-1), &rat(1)), (&rat(-1), &rat(1)), 2, &[]).unwrap();
        assert_eq!(holed.vertices.len(), 8);
        let m = height_field(&f, (&rat(-1), &rat(1)), (&rat(-1), &rat(1)), 2, &[(vec![rat(0), rat(0)], rat(0))]).unwrap();
        assert!(m.vertices.contains(&[rat(0), rat(0), rat(0)]));
        assert!(to_obj(&m).starts_with("v -1.000000 -1.000000 -0.500000\n"));
    }

    #[test]
    fn whitney_samples() {
        let p = parse_poly("z*x^2 - y^2", &["x", "y", "z"]).unwrap();
        let r = (rat(-2), rat(2));
        let pts = zero_samples(&p, 2, &[r.clone(), r.clone(), r], 4).unwrap();
        assert!(pts.iter().all(|q| p.evaluate(q).unwrap().is_zero()));
        assert_eq!(pts.iter().filter(|q| q[0].is_zero()).count(), 5);
    }
}
