use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{squarefree_part, Ambient};
use crate::ratfun::{arc_limit, Arc, ExtValue, RatFun, Side};
use crate::rational::{fmt_point, fmt_rational, parse_rational, sign, Rational};

/// Checkable evidence that a function (or one of its partial derivatives,
/// selected by `coefficient`) is not continuous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two arcs with a common base point and different limits.
    ArcPair { coefficient: Vec<u32>, arcs: [Arc; 2], limits: [ExtValue; 2] },
    /// An arc with a finite base point along which the function is unbounded.
    Unbounded { coefficient: Vec<u32>, arc: Arc, limit: ExtValue },
    /// The denominator's squarefree part takes opposite signs at two points, so the
    /// poles form a curve.
    PoleCurve { coefficient: Vec<u32>, positive: Vec<Rational>, negative: Vec<Rational> },
}

impl Witness {
    pub fn coefficient(&self) -> &[u32] {
        match self {
            Witness::ArcPair { coefficient, .. }
            | Witness::Unbounded { coefficient, .. }
            | Witness::PoleCurve { coefficient, .. } => coefficient,
        }
    }

    /// Re-checks the witness against `f` from scratch.
    pub fn verify(&self, f: &RatFun) -> Result<bool> {
        let g = partial(f, self.coefficient())?;
        match self {
            Witness::ArcPair { arcs, limits, .. } => {
                let (Some(b0), Some(b1)) = (arcs[0].base_point(), arcs[1].base_point()) else {
                    return Ok(false);
                };
                let l0 = arc_limit(&g, &arcs[0], Side::Plus)?;
                let l1 = arc_limit(&g, &arcs[1], Side::Plus)?;
                Ok(b0 == b1 && l0 == limits[0] && l1 == limits[1] && l0 != l1)
            }
            Witness::Unbounded { arc, limit, .. } => {
                if arc.base_point().is_none() {
                    return Ok(false);
                }
                let l = arc_limit(&g, arc, Side::Plus)?;
                Ok(l == *limit && l.is_infinite())
            }
            Witness::PoleCurve { positive, negative, .. } => {
                let s = squarefree_part(g.den())?;
                Ok(sign(&s.evaluate(positive)?) > 0 && sign(&s.evaluate(negative)?) < 0)
            }
        }
    }

    pub fn to_json(&self) -> WitnessJson {
        match self {
            Witness::ArcPair { coefficient, arcs, limits } => WitnessJson {
                kind: "arc_pair".into(),
                coefficient: coefficient.clone(),
                arcs: arcs.iter().map(arc_text).collect(),
                limits: limits.iter().map(|l| l.to_string()).collect(),
                points: Vec::new(),
            },
            Witness::Unbounded { coefficient, arc, limit } => WitnessJson {
                kind: "unbounded".into(),
                coefficient: coefficient.clone(),
                arcs: vec![arc_text(arc)],
                limits: vec![limit.to_string()],
                points: Vec::new(),
            },
            Witness::PoleCurve { coefficient, positive, negative } => WitnessJson {
                kind: "pole_curve".into(),
                coefficient: coefficient.clone(),
                arcs: Vec::new(),
                limits: Vec::new(),
                points: vec![fmt_point(positive), fmt_point(negative)],
            },
        }
    }

    pub fn from_json(j: &WitnessJson) -> Result<Witness> {
        let bad = || Error::Malformed(format!("witness of kind `{}`", j.kind));
        match j.kind.as_str() {
            "arc_pair" => {
                if j.arcs.len() != 2 || j.limits.len() != 2 {
                    return Err(bad());
                }
                Ok(Witness::ArcPair {
                    coefficient: j.coefficient.clone(),
                    arcs: [parse_arc_text(&j.arcs[0])?, parse_arc_text(&j.arcs[1])?],
                    limits: [parse_ext(&j.limits[0])?, parse_ext(&j.limits[1])?],
                })
            }
            "unbounded" => {
                if j.arcs.len() != 1 || j.limits.len() != 1 {
                    return Err(bad());
                }
                Ok(Witness::Unbounded {
                    coefficient: j.coefficient.clone(),
                    arc: parse_arc_text(&j.arcs[0])?,
                    limit: parse_ext(&j.limits[0])?,
                })
            }
            "pole_curve" => {
                if j.points.len() != 2 {
                    return Err(bad());
                }
                Ok(Witness::PoleCurve {
                    coefficient: j.coefficient.clone(),
                    positive: parse_point(&j.points[0])?,
                    negative: parse_point(&j.points[1])?,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// `∂^I f`.
pub fn partial(f: &RatFun, index: &[u32]) -> Result<RatFun> {
    if index.is_empty() {
        return Ok(f.clone());
    }
    if index.len() != f.nvars() {
        return Err(Error::Arity { expected: f.nvars(), got: index.len() });
    }
    let mut g = f.clone();
    for (v, &e) in index.iter().enumerate() {
        for _ in 0..e {
            g = g.derivative(v);
        }
    }
    Ok(g)
}

fn arc_text(a: &Arc) -> String {
    a.to_string()
}

/// Parses `(c_1, ..., c_n)` or `c_1, ..., c_n`.
pub fn parse_arc_text(s: &str) -> Result<Arc> {
    let s = s.trim();
    let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).filter(|r| balanced(r)).unwrap_or(s);
    Arc::parse(inner)
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

pub fn parse_ext(s: &str) -> Result<ExtValue> {
    match s.trim() {
        "+inf" => Ok(ExtValue::PlusInfinity),
        "-inf" => Ok(ExtValue::MinusInfinity),
        "two-sided mismatch" => Ok(ExtValue::IndeterminateTwoSided),
        other => Ok(ExtValue::Finite(parse_rational(other)?)),
    }
}

pub fn parse_point(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Malformed(format!("point `{s}`")))?;
    inner.split(',').map(parse_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub kind: String,
    pub coefficient: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arcs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub limits: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
}

/// Outcome of a regulousness decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// k-regulous; `values` are the continuous extension's values at the
    /// indeterminacy points.
    Regulous { k: u32, values: Vec<(Vec<Rational>, Rational)> },
    NotRegulous(Witness),
    Unknown(String),
}

impl Verdict {
    pub fn is_regulous(&self) -> bool {
        matches!(self, Verdict::Regulous { .. })
    }

    pub fn is_not_regulous(&self) -> bool {
        matches!(self, Verdict::NotRegulous(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn value_at(&self, p: &[Rational]) -> Option<&Rational> {
        match self {
            Verdict::Regulous { values, .. } => values.iter().find(|(q, _)| q == p).map(|(_, v)| v),
            _ => None,
        }
    }

    pub fn to_json(&self) -> VerdictJson {
        match self {
            Verdict::Regulous { k, values } => VerdictJson {
                verdict: "regulous".into(),
                k: Some(*k),
                values: values
                    .iter()
                    .map(|(p, v)| PointValue { point: fmt_point(p), value: fmt_rational(v) })
                    .collect(),
                witness: None,
                reason: None,
            },
            Verdict::NotRegulous(w) => VerdictJson {
                verdict: "not_regulous".into(),
                k: None,
                values: Vec::new(),
                witness: Some(w.to_json()),
                reason: None,
            },
            Verdict::Unknown(r) => VerdictJson {
                verdict: "unknown".into(),
                k: None,
                values: Vec::new(),
                witness: None,
                reason: Some(r.clone()),
            },
        }
    }

    pub fn from_json(j: &VerdictJson) -> Result<Verdict> {
        match j.verdict.as_str() {
            "regulous" => Ok(Verdict::Regulous {
                k: j.k.ok_or_else(|| Error::Malformed("regulous verdict without k".into()))?,
                values: j
                    .values
                    .iter()
                    .map(|pv| Ok((parse_point(&pv.point)?, parse_rational(&pv.value)?)))
                    .collect::<Result<_>>()?,
            }),
            "not_regulous" => Ok(Verdict::NotRegulous(Witness::from_json(
                j.witness.as_ref().ok_or_else(|| Error::Malformed("missing witness".into()))?,
            )?)),
            "unknown" => Ok(Verdict::Unknown(j.reason.clone().unwrap_or_default())),
            other => Err(Error::Malformed(format!("verdict `{other}`"))),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = |c: &[u32]| {
            if c.iter().all(|e| *e == 0) {
                String::new()
            } else {
                format!(" on the derivative of multi-index {c:?}")
            }
        };
        match self {
            Witness::ArcPair { coefficient, arcs, limits } => write!(
                f,
                "arcs {} and {} have limits {} and {}{}",
                arcs[0],
                arcs[1],
                limits[0],
                limits[1],
                coeff(coefficient)
            ),
            Witness::Unbounded { coefficient, arc, limit } => {
                write!(f, "arc {} has limit {}{}", arc, limit, coeff(coefficient))
            }
            Witness::PoleCurve { coefficient, positive, negative } => write!(
                f,
                "curve of poles: denominator changes sign between {} and {}{}",
                fmt_point(positive),
                fmt_point(negative),
                coeff(coefficient)
            ),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Regulous { k, values } => {
                write!(f, "Regulous({k})")?;
                for (i, (p, v)) in values.iter().enumerate() {
                    let sep = if i == 0 { ", " } else { "; " };
                    write!(f, "{sep}value {} at {}", fmt_rational(v), fmt_point(p))?;
                }
                Ok(())
            }
            Verdict::NotRegulous(w) => write!(f, "NotRegulous: {w}"),
            Verdict::Unknown(r) => write!(f, "Unknown: {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<PointValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointValue {
    pub point: String,
    pub value: String,
}

/// Searches the segment from `a` to `b` for a rational pole of `g` and returns an
/// arc crossing it with an infinite limit.
pub(crate) fn unbounded_across(g: &RatFun, a: &[Rational], b: &[Rational], coefficient: &[u32]) -> Option<Witness> {
    let t = Ambient::t();
    let dir: Vec<Rational> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let seg: Vec<RatFun> = a
        .iter()
        .zip(&dir)
        .map(|(x, d)| {
            RatFun::from_poly(crate::poly::Poly::from_uni(&t, 0, &crate::poly::UniPoly::new(vec![x.clone(), d.clone()])))
        })
        .collect();
    let den = crate::ratfun::substitute(g.den(), &seg).ok()?;
    let du = den.num().to_uni(0)?;
    if du.is_zero() {
        return None;
    }
    for r in crate::poly::isolate_real_roots(&du).ok()? {
        let Some(s) = r.exact() else { continue };
        if *s <= Rational::zero() || *s >= num_traits::One::one() {
            continue;
        }
        let base: Vec<Rational> = a.iter().zip(&dir).map(|(x, d)| x + s * d).collect();
        let arc = Arc::polynomial(&base, &dir.iter().map(|d| vec![d.clone()]).collect::<Vec<_>>());
        if let Ok(l) = arc_limit(g, &arc, Side::Plus) {
            if l.is_infinite() {
                return Some(Witness::Unbounded { coefficient: coefficient.to_vec(), arc, limit: l });
            }
        }
    }
    None
}
