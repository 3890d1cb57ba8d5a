//! Iterated point blow-ups of the plane.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{isolate_real_roots, Ambient, Poly, RealRoot};
use crate::ratfun::{real_zeros2, RatFun};
use crate::rational::{fmt_point, Rational};

/// Which of the two standard charts of a point blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    /// `(u, v) -> (a + u, b + u v)`, exceptional line `u = 0`.
    A,
    /// `(u, v) -> (a + u v, b + v)`, exceptional line `v = 0`.
    B,
}

impl Which {
    pub fn exceptional_var(self) -> usize {
        match self {
            Which::A => 0,
            Which::B => 1,
        }
    }
}

/// A coordinate line `u = 0` (var 0) or `v = 0` (var 1) lying over the center
/// created by blow-up `tag`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalLine {
    pub var: usize,
    pub tag: usize,
}

/// Restriction of a chart pullback to the chart's own exceptional line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// The pullback has a pole along the whole line.
    Pole,
    /// Univariate function of the line's parameter.
    Function(RatFun),
}

impl Restriction {
    pub fn constant(&self) -> Option<Rational> {
        match self {
            Restriction::Function(r) => r.constant_value(),
            Restriction::Pole => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub id: usize,
    pub parent: Option<(usize, Which)>,
    /// Center of the blow-up that created this chart, in parent coordinates.
    pub center: Option<[Rational; 2]>,
    /// The composed morphism to the original plane.
    pub map_to_root: [Poly; 2],
    pub pullback: RatFun,
    pub exceptional: Vec<ExceptionalLine>,
    pub depth: u32,
    /// The indeterminacy point of the original plane this chart lies over.
    pub root_point: Option<[Rational; 2]>,
    pub children: Vec<usize>,
    pub restriction: Option<Restriction>,
}

impl Chart {
    pub fn root(f: &RatFun) -> Chart {
        let amb = f.ambient().clone();
        Chart {
            id: 0,
            parent: None,
            center: None,
            map_to_root: [Poly::var(&amb, 0), Poly::var(&amb, 1)],
            pullback: f.clone(),
            exceptional: Vec::new(),
            depth: 0,
            root_point: None,
            children: Vec::new(),
            restriction: None,
        }
    }

    pub fn which(&self) -> Option<Which> {
        self.parent.map(|(_, w)| w)
    }

    /// The arc `t -> map_to_root(t, s)` (chart A) or `map_to_root(s, t)` (chart B),
    /// which tends to the point with parameter `s` on the chart's exceptional line.
    pub fn arc_through(&self, s: &Rational) -> crate::ratfun::Arc {
        let t = Ambient::t();
        let tt = RatFun::var(&t, 0);
        let c = RatFun::constant(&t, s.clone());
        let images = match self.which() {
            Some(Which::B) => [c, tt],
            _ => [tt, c],
        };
        let comps = self
            .map_to_root
            .iter()
            .map(|m| crate::ratfun::substitute(m, &images).expect("chart map is bivariate"))
            .collect();
        crate::ratfun::Arc::new(comps).expect("arc over t")
    }
}

/// Local charts of the blow-up of `parent` at `center` (given in parent coordinates).
/// Charts are returned with id 0; the caller assigns ids.
pub fn blowup_point(parent: &Chart, center: &[Rational; 2]) -> (Chart, Chart) {
    let uv = Ambient::uv();
    let u = Poly::var(&uv, 0);
    let v = Poly::var(&uv, 1);
    let a = Poly::constant(&uv, center[0].clone());
    let b = Poly::constant(&uv, center[1].clone());
    let uvp = &u * &v;
    let local_a = [&a + &u, &b + &uvp];
    let local_b = [&a + &uvp, &b + &v];
    let make = |which: Which, local: [Poly; 2]| {
        let images: Vec<RatFun> = local.iter().cloned().map(RatFun::from_poly).collect();
        let map_to_root = [
            compose_poly(&parent.map_to_root[0], &images),
            compose_poly(&parent.map_to_root[1], &images),
        ];
        let pullback = parent.pullback.substitute(&images).expect("dominant chart map");
        let mut exceptional = vec![ExceptionalLine { var: which.exceptional_var(), tag: parent.id }];
        for line in &parent.exceptional {
            let on_line = center[line.var].is_zero();
            // A u-line through the center survives as u = 0 in chart B; a v-line as v = 0 in chart A.
            match (line.var, which) {
                (0, Which::B) if on_line => exceptional.push(ExceptionalLine { var: 0, tag: line.tag }),
                (1, Which::A) if on_line => exceptional.push(ExceptionalLine { var: 1, tag: line.tag }),
                _ => {}
            }
        }
        let root_point = parent.root_point.clone().or_else(|| Some(center.clone()));
        Chart {
            id: 0,
            parent: Some((parent.id, which)),
            center: Some(center.clone()),
            map_to_root,
            pullback,
            exceptional,
            depth: parent.depth + 1,
            root_point,
            children: Vec::new(),
            restriction: None,
        }
    };
    (make(Which::A, local_a), make(Which::B, local_b))
}

fn compose_poly(p: &Poly, images: &[RatFun]) -> Poly {
    crate::ratfun::substitute(p, images).expect("arity 2").as_poly().expect("polynomial images")
}

/// Pullback of `f` along a chart's map to the original plane.
pub fn pullback(f: &RatFun, chart: &Chart) -> Result<RatFun> {
    if f.nvars() != 2 {
        return Err(Error::Dimension { expected: 2, got: f.nvars() });
    }
    let images: Vec<RatFun> = chart.map_to_root.iter().cloned().map(RatFun::from_poly).collect();
    f.substitute(&images)
}

/// Restriction of `g` (over u, v) to the coordinate line `var = 0`.
pub fn restrict_to_line(g: &RatFun, var: usize) -> Restriction {
    let other = 1 - var;
    let zero = Rational::zero();
    let q = g.den().specialize(var, &zero);
    if q.is_zero() {
        return Restriction::Pole;
    }
    let p = g.num().specialize(var, &zero);
    let amb = Ambient::new([g.ambient().names()[other].clone()]);
    let pu = p.to_uni(other).expect("one variable left");
    let qu = q.to_uni(other).expect("one variable left");
    let r = RatFun::new(Poly::from_uni(&amb, 0, &pu), Poly::from_uni(&amb, 0, &qu)).expect("nonzero");
    Restriction::Function(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeStatus {
    Resolved,
    BudgetExceeded,
    NonrationalCenter,
    PoleCurve,
}

impl TreeStatus {
    fn severity(self) -> u8 {
        match self {
            TreeStatus::Resolved => 0,
            TreeStatus::BudgetExceeded => 1,
            TreeStatus::NonrationalCenter => 2,
            TreeStatus::PoleCurve => 3,
        }
    }

    fn worst(self, other: TreeStatus) -> TreeStatus {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

/// Resolution limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub depth: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { depth: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTree {
    pub root: RatFun,
    pub charts: Vec<Chart>,
    pub status: TreeStatus,
    pub depth: u32,
    /// Rational zeros of the denominator that were blown up.
    pub indeterminacy_points: Vec<[Rational; 2]>,
    /// Rational zeros of the denominator where the numerator does not vanish.
    pub pole_points: Vec<[Rational; 2]>,
    /// Points of opposite denominator sign, when the poles form a curve.
    pub sign_change: Option<([Rational; 2], [Rational; 2])>,
    /// Root points whose subtree hit the budget or an irrational center.
    pub incomplete_points: Vec<[Rational; 2]>,
}

impl ResolutionTree {
    pub fn leaves(&self) -> impl Iterator<Item = &Chart> {
        self.charts.iter().filter(|c| c.children.is_empty())
    }

    /// Charts lying over a given indeterminacy point.
    pub fn charts_over<'a>(&'a self, x: &'a [Rational; 2]) -> impl Iterator<Item = &'a Chart> + 'a {
        self.charts.iter().filter(move |c| c.root_point.as_ref() == Some(x))
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            status: self.status,
            depth: self.depth,
            nodes: self
                .charts
                .iter()
                .map(|c| NodeJson {
                    id: c.id,
                    parent: c.parent.map(|(p, _)| p),
                    which_chart: c.which(),
                    center: c.center.as_ref().map(|p| fmt_point(p)),
                    pullback: PullbackJson { num: c.pullback.num().to_string(), den: c.pullback.den().to_string() },
                    exceptional: c.exceptional.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub status: TreeStatus,
    pub depth: u32,
    pub nodes: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub parent: Option<usize>,
    pub which_chart: Option<Which>,
    pub center: Option<String>,
    pub pullback: PullbackJson,
    pub exceptional: Vec<ExceptionalLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackJson {
    pub num: String,
    pub den: String,
}

/// Blows up rational indeterminacy points until every chart pullback is regular or
/// has at most poles at the tracked points. Points listed in `excluded` are ignored.
pub fn resolve_indeterminacy2(f: &RatFun, budget: Budget) -> Result<ResolutionTree> {
    resolve_excluding(f, budget, &[])
}

pub fn resolve_excluding(f: &RatFun, budget: Budget, excluded: &[[Rational; 2]]) -> Result<ResolutionTree> {
    if f.nvars() != 2 {
        return Err(Error::Dimension { expected: 2, got: f.nvars() });
    }
    let mut tree = ResolutionTree {
        root: f.clone(),
        charts: vec![Chart::root(f)],
        status: TreeStatus::Resolved,
        depth: 0,
        indeterminacy_points: Vec::new(),
        pole_points: Vec::new(),
        sign_change: None,
        incomplete_points: Vec::new(),
    };
    let zeros = real_zeros2(f.den())?;
    if zeros.curve {
        tree.status = TreeStatus::PoleCurve;
        tree.sign_change = zeros.sign_change;
        return Ok(tree);
    }
    if zeros.nonrational {
        tree.status = TreeStatus::NonrationalCenter;
    }
    for pt in zeros.points {
        if excluded.contains(&pt) {
            continue;
        }
        if f.num().evaluate(&pt)?.is_zero() {
            tree.indeterminacy_points.push(pt.clone());
            let status = expand(&mut tree, 0, &pt, budget);
            if status != TreeStatus::Resolved {
                tree.incomplete_points.push(pt);
            }
            tree.status = tree.status.worst(status);
        } else {
            tree.pole_points.push(pt);
        }
    }
    tree.depth = tree.charts.iter().map(|c| c.depth).max().unwrap_or(0);
    Ok(tree)
}

fn expand(tree: &mut ResolutionTree, parent: usize, center: &[Rational; 2], budget: Budget) -> TreeStatus {
    if tree.charts[parent].depth >= budget.depth {
        return TreeStatus::BudgetExceeded;
    }
    let (a, b) = blowup_point(&tree.charts[parent], center);
    let mut status = TreeStatus::Resolved;
    for mut child in [a, b] {
        let id = tree.charts.len();
        child.id = id;
        let which = child.which().unwrap();
        let restriction = restrict_to_line(&child.pullback, which.exceptional_var());
        let (centers, irrational) = match &restriction {
            Restriction::Pole => (Vec::new(), false),
            Restriction::Function(_) => indeterminacy_on_line(&child.pullback, which),
        };
        child.restriction = Some(restriction);
        tree.charts[parent].children.push(id);
        tree.charts.push(child);
        if irrational {
            status = status.worst(TreeStatus::NonrationalCenter);
        }
        for c in centers {
            status = status.worst(expand(tree, id, &c, budget));
        }
    }
    status
}

// Common zeros of numerator and denominator on the exceptional line. Chart A
// tracks the whole line u = 0; chart B only its origin, the one point of its
// exceptional line that chart A does not see.
fn indeterminacy_on_line(g: &RatFun, which: Which) -> (Vec<[Rational; 2]>, bool) {
    let zero = Rational::zero();
    match which {
        Which::B => {
            let o = [zero.clone(), zero];
            let both = g.num().evaluate(&o).unwrap().is_zero() && g.den().evaluate(&o).unwrap().is_zero();
            (if both { vec![o] } else { Vec::new() }, false)
        }
        Which::A => {
            let p = g.num().specialize(0, &zero).to_uni(1).unwrap();
            let q = g.den().specialize(0, &zero).to_uni(1).unwrap();
            let common = if p.is_zero() { q.clone() } else { p.gcd(&q) };
            if common.degree() == 0 {
                return (Vec::new(), false);
            }
            let mut centers = Vec::new();
            let mut irrational = false;
            for r in isolate_real_roots(&common).expect("nonzero") {
                match r {
                    RealRoot::Exact(v) => centers.push([zero.clone(), v]),
                    RealRoot::Isolated { .. } => irrational = true,
                }
            }
            (centers, irrational)
        }
    }
}

/// One exceptional component over a point, seen from the chart that created it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComponent {
    /// Id of the chart whose blow-up created the component.
    pub id: usize,
    /// Chart A child in which the restriction is taken.
    pub chart: usize,
    /// `None` when the function has a pole along the component.
    pub restriction: Option<RatFun>,
    pub constant: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub point: [Rational; 2],
    pub components: Vec<FiberComponent>,
}

impl FiberReport {
    /// The common value when every component carries the same constant.
    pub fn value(&self) -> Option<Rational> {
        let first = self.components.first()?.constant.clone()?;
        self.components.iter().all(|c| c.constant.as_ref() == Some(&first)).then_some(first)
    }
}

/// Restrictions of the resolved function to every exceptional component over `x`.
pub fn fiber_values(tree: &ResolutionTree, x: &[Rational; 2]) -> Result<FiberReport> {
    if tree.status != TreeStatus::Resolved {
        return Err(Error::Unresolved);
    }
    if !tree.indeterminacy_points.contains(x) {
        return Err(Error::Malformed(format!("{} is not an indeterminacy point", fmt_point(x))));
    }
    let components = tree
        .charts_over(x)
        .filter(|c| c.which() == Some(Which::A))
        .map(|c| {
            let r = match c.restriction.as_ref().expect("child charts carry a restriction") {
                Restriction::Pole => None,
                Restriction::Function(r) => Some(r.clone()),
            };
            FiberComponent {
                id: c.parent.unwrap().0,
                chart: c.id,
                constant: r.as_ref().and_then(RatFun::constant_value),
                restriction: r,
            }
        })
        .collect();
    Ok(FiberReport { point: x.clone(), components })
}
