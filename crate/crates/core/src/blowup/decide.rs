//! k-regularity of bivariate rational functions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::resolve::{resolve_excluding, Budget, Chart, Restriction, TreeStatus};
use super::witness::{unbounded_across, PointValue, Verdict, Witness};
use crate::error::{Error, Result};
use crate::poly::{squarefree_part, Poly};
use crate::ratfun::{arc_limit, multi_indices, Arc, ExtValue, RatFun, Side};
use crate::rational::{fmt_point, fmt_rational, height_bounded, rat, sign, Rational};

/// Result of examining one partial derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Continuous(Vec<(Vec<Rational>, Rational)>),
    Broken(Witness),
    Undecided(String),
}

fn params() -> Vec<Rational> {
    height_bounded(4)
}

/// Continuity of `g` on the plane minus `excluded`.
pub(crate) fn analyze(g: &RatFun, coefficient: &[u32], budget: Budget, excluded: &[[Rational; 2]]) -> Result<Outcome> {
    if g.is_polynomial() {
        return Ok(Outcome::Continuous(Vec::new()));
    }
    let tree = resolve_excluding(g, budget, excluded)?;
    if tree.status == TreeStatus::PoleCurve {
        let Some((a, b)) = tree.sign_change.clone() else {
            return Ok(Outcome::Undecided("the poles form a curve without a located sign change".into()));
        };
        if let Some(w) = unbounded_across(g, &a, &b, coefficient) {
            return Ok(Outcome::Broken(w));
        }
        let s = squarefree_part(g.den())?;
        let (positive, negative) = if sign(&s.evaluate(&a)?) > 0 { (a, b) } else { (b, a) };
        return Ok(Outcome::Broken(Witness::PoleCurve {
            coefficient: coefficient.to_vec(),
            positive: positive.to_vec(),
            negative: negative.to_vec(),
        }));
    }
    for p in &tree.pole_points {
        if let Some(w) = unbounded_at(g, p, coefficient) {
            return Ok(Outcome::Broken(w));
        }
    }
    let mut values = Vec::new();
    let mut undecided: Option<String> = None;
    for x in &tree.indeterminacy_points {
        let mut consts: Vec<(&Chart, Rational)> = Vec::new();
        let mut broken: Vec<(&Chart, bool)> = Vec::new();
        for c in tree.charts_over(x) {
            let Some(r) = c.restriction.as_ref() else { continue };
            match r.constant() {
                Some(v) => consts.push((c, v)),
                None => broken.push((c, matches!(r, Restriction::Pole))),
            }
        }
        let disagree = consts.iter().any(|(_, v)| *v != consts[0].1);
        if !broken.is_empty() || disagree {
            if let Some(w) = line_witness(g, x, coefficient) {
                return Ok(Outcome::Broken(w));
            }
        }
        let mut unexplained = false;
        for (c, pole) in broken {
            match search_chart(g, c, coefficient, pole) {
                Some(w) => return Ok(Outcome::Broken(w)),
                None => unexplained = true,
            }
        }
        if let Some((c0, v0)) = consts.first() {
            for (c1, v1) in &consts[1..] {
                if v1 != v0 {
                    if let Some(w) = pair_across(g, c0, c1, coefficient) {
                        return Ok(Outcome::Broken(w));
                    }
                    unexplained = true;
                }
            }
        }
        if unexplained {
            undecided.get_or_insert_with(|| format!("no witness found over {}", fmt_point(x)));
        } else if tree.incomplete_points.contains(x) {
            undecided.get_or_insert_with(|| format!("resolution over {} did not finish", fmt_point(x)));
        } else if let Some((_, v)) = consts.first() {
            values.push((x.to_vec(), v.clone()));
        }
    }
    if let Some(r) = undecided {
        return Ok(Outcome::Undecided(r));
    }
    if tree.status != TreeStatus::Resolved {
        return Ok(Outcome::Undecided(match tree.status {
            TreeStatus::NonrationalCenter => "the denominator may vanish at irrational points".into(),
            s => format!("resolution stopped: {s:?}"),
        }));
    }
    Ok(Outcome::Continuous(values))
}

fn directions() -> [[Rational; 2]; 4] {
    [[rat(1), rat(0)], [rat(0), rat(1)], [rat(1), rat(1)], [rat(1), rat(-1)]]
}

fn line(p: &[Rational; 2], d: &[Rational; 2]) -> Arc {
    Arc::polynomial(p, &[vec![d[0].clone()], vec![d[1].clone()]])
}

fn unbounded_at(g: &RatFun, p: &[Rational; 2], coefficient: &[u32]) -> Option<Witness> {
    for d in directions() {
        let arc = line(p, &d);
        if let Ok(l) = arc_limit(g, &arc, Side::Plus) {
            if l.is_infinite() {
                return Some(Witness::Unbounded { coefficient: coefficient.to_vec(), arc, limit: l });
            }
        }
    }
    None
}

// Straight lines through `p` in a few fixed directions.
fn line_witness(g: &RatFun, p: &[Rational; 2], coefficient: &[u32]) -> Option<Witness> {
    let mut first: Option<(Arc, ExtValue)> = None;
    for d in directions() {
        let arc = line(p, &d);
        let Ok(l) = arc_limit(g, &arc, Side::Plus) else { continue };
        if l.is_infinite() {
            return Some(Witness::Unbounded { coefficient: coefficient.to_vec(), arc, limit: l });
        }
        match &first {
            None => first = Some((arc, l)),
            Some((a0, l0)) if *l0 != l => {
                return Some(Witness::ArcPair {
                    coefficient: coefficient.to_vec(),
                    arcs: [a0.clone(), arc],
                    limits: [l0.clone(), l],
                })
            }
            _ => {}
        }
    }
    None
}

// Arcs through points of the chart's exceptional line.
fn search_chart(g: &RatFun, c: &Chart, coefficient: &[u32], pole: bool) -> Option<Witness> {
    let mut first: Option<(Arc, ExtValue)> = None;
    for s in params() {
        let arc = c.arc_through(&s);
        let Ok(l) = arc_limit(g, &arc, Side::Plus) else { continue };
        if l.is_infinite() {
            return Some(Witness::Unbounded { coefficient: coefficient.to_vec(), arc, limit: l });
        }
        if pole {
            continue;
        }
        match &first {
            None => first = Some((arc, l)),
            Some((a0, l0)) if *l0 != l => {
                return Some(Witness::ArcPair {
                    coefficient: coefficient.to_vec(),
                    arcs: [a0.clone(), arc],
                    limits: [l0.clone(), l],
                })
            }
            _ => {}
        }
    }
    None
}

fn pair_across(g: &RatFun, c0: &Chart, c1: &Chart, coefficient: &[u32]) -> Option<Witness> {
    let finite = |c: &Chart| {
        params().into_iter().find_map(|s| {
            let arc = c.arc_through(&s);
            match arc_limit(g, &arc, Side::Plus) {
                Ok(l @ ExtValue::Finite(_)) => Some((arc, l)),
                _ => None,
            }
        })
    };
    let (a0, l0) = finite(c0)?;
    let (a1, l1) = finite(c1)?;
    (l0 != l1).then(|| Witness::ArcPair { coefficient: coefficient.to_vec(), arcs: [a0, a1], limits: [l0, l1] })
}

/// Incremental decider: partial derivatives and their outcomes are cached across
/// levels.
pub struct Decider {
    f: RatFun,
    budget: Budget,
    excluded: Vec<[Rational; 2]>,
    coeffs: BTreeMap<Vec<u32>, RatFun>,
    outcomes: BTreeMap<Vec<u32>, Outcome>,
}

impl Decider {
    pub fn new(f: &RatFun, budget: Budget) -> Result<Self> {
        if f.nvars() != 2 {
            return Err(Error::Dimension { expected: 2, got: f.nvars() });
        }
        Ok(Decider {
            f: f.clone(),
            budget,
            excluded: Vec::new(),
            coeffs: BTreeMap::new(),
            outcomes: BTreeMap::new(),
        })
    }

    /// Restricts attention to the open set obtained by removing `points`.
    pub fn excluding(mut self, points: &[[Rational; 2]]) -> Self {
        self.excluded = points.to_vec();
        self.outcomes.clear();
        self
    }

    fn coefficient(&mut self, idx: &[u32]) -> RatFun {
        if let Some(g) = self.coeffs.get(idx) {
            return g.clone();
        }
        let g = match idx.iter().rposition(|&e| e > 0) {
            None => self.f.clone(),
            Some(v) => {
                let mut parent = idx.to_vec();
                parent[v] -= 1;
                self.coefficient(&parent).derivative(v)
            }
        };
        self.coeffs.insert(idx.to_vec(), g.clone());
        g
    }

    fn outcome(&mut self, idx: &[u32]) -> Result<Outcome> {
        if let Some(o) = self.outcomes.get(idx) {
            return Ok(o.clone());
        }
        let g = self.coefficient(idx);
        let o = analyze(&g, idx, self.budget, &self.excluded)?;
        self.outcomes.insert(idx.to_vec(), o.clone());
        Ok(o)
    }

    pub fn level(&mut self, k: u32) -> Result<Verdict> {
        let mut unknown: Option<String> = None;
        let mut values = Vec::new();
        for idx in multi_indices(2, k) {
            match self.outcome(&idx)? {
                Outcome::Broken(w) => return Ok(Verdict::NotRegulous(w)),
                Outcome::Undecided(r) => {
                    unknown.get_or_insert(r);
                }
                Outcome::Continuous(v) => {
                    if idx.iter().all(|e| *e == 0) {
                        values = v;
                    }
                }
            }
        }
        Ok(match unknown {
            Some(r) => Verdict::Unknown(r),
            None => Verdict::Regulous { k, values },
        })
    }
}

/// Decides whether `f` extends to a k-regulous function on the plane.
pub fn decide_regulous2(f: &RatFun, k: u32, budget: Budget) -> Result<Verdict> {
    Decider::new(f, budget)?.level(k)
}

/// Same question on the plane minus finitely many points.
pub fn decide_regulous2_on(f: &RatFun, k: u32, budget: Budget, excluded: &[[Rational; 2]]) -> Result<Verdict> {
    Decider::new(f, budget)?.excluding(excluded).level(k)
}

/// Largest k for which a function is k-regulous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KMax {
    /// k-regulous but not (k+1)-regulous; `witness` breaks level k + 1.
    Exact { k: u32, witness: Witness },
    /// Not even continuous.
    NotRegulous(Witness),
    /// Regulous at every level up to the cap.
    AtLeast(u32),
    Unknown(String),
}

impl fmt::Display for KMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KMax::Exact { k, witness } => write!(f, "kmax = {k}; level {} fails: {witness}", k + 1),
            KMax::NotRegulous(w) => write!(f, "not regulous: {w}"),
            KMax::AtLeast(k) => write!(f, "kmax >= {k}"),
            KMax::Unknown(r) => write!(f, "unknown: {r}"),
        }
    }
}

pub fn kmax(f: &RatFun, cap: u32, budget: Budget) -> Result<KMax> {
    let mut d = Decider::new(f, budget)?;
    for k in 0..=cap {
        match d.level(k)? {
            Verdict::Regulous { .. } => {}
            Verdict::NotRegulous(w) if k == 0 => return Ok(KMax::NotRegulous(w)),
            Verdict::NotRegulous(witness) => return Ok(KMax::Exact { k: k - 1, witness }),
            Verdict::Unknown(r) => return Ok(KMax::Unknown(r)),
        }
    }
    Ok(KMax::AtLeast(cap))
}

/// A regulous function described as regular on `D(open)` plus its values on the
/// finitely many remaining points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification2 {
    pub open: Poly,
    pub points: Vec<(Vec<Rational>, Rational)>,
}

impl Stratification2 {
    pub fn to_json(&self) -> StratificationJson {
        StratificationJson {
            open: self.open.to_string(),
            points: self
                .points
                .iter()
                .map(|(p, v)| PointValue { point: fmt_point(p), value: fmt_rational(v) })
                .collect(),
        }
    }

    /// Value of the continuous extension at `p`.
    pub fn value(&self, f: &RatFun, p: &[Rational]) -> Result<Option<Rational>> {
        if let Some((_, v)) = self.points.iter().find(|(q, _)| q == p) {
            return Ok(Some(v.clone()));
        }
        f.evaluate(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationJson {
    pub open: String,
    pub points: Vec<PointValue>,
}

pub fn stratify2(f: &RatFun, budget: Budget) -> Result<Stratification2> {
    match decide_regulous2(f, 0, budget)? {
        Verdict::Regulous { values, .. } => Ok(Stratification2 { open: f.den().normalized(), points: values }),
        Verdict::NotRegulous(w) => Err(Error::NotRegulous(w.to_string())),
        Verdict::Unknown(r) => Err(Error::Undecided(r)),
    }
}
