//! Zariski-constructible sets and the arc-symmetric closure algorithm.

mod closure;

pub use closure::{
    closure_algorithm, sym_necessaire_test, ArcSymIncidence, AuditEntry, ClosureResult, Component, IncidenceJson,
    Refinement, Rule, TableEntry,
};

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::blowup::{decide_regulous2, Budget, Verdict};
use crate::error::{Error, Result};
use crate::poly::{squarefree_part, Ambient, Poly};
use crate::ratfun::{Arc, RatFun};
use crate::rational::Rational;

/// `∩ Z(equations) ∖ ∪ Z(inequations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub equations: Vec<Poly>,
    pub inequations: Vec<Poly>,
    pub dim: Option<u32>,
}

impl Piece {
    pub fn new(equations: Vec<Poly>, inequations: Vec<Poly>) -> Self {
        Piece { equations, inequations, dim: None }
    }

    pub fn member(&self, x: &[Rational]) -> Result<bool> {
        for e in &self.equations {
            if !e.evaluate(x)?.is_zero() {
                return Ok(false);
            }
        }
        for d in &self.inequations {
            if d.evaluate(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn key(&self) -> (Vec<String>, Vec<String>) {
        (
            self.equations.iter().map(Poly::to_string).collect(),
            self.inequations.iter().map(Poly::to_string).collect(),
        )
    }

    // None when the piece is syntactically empty.
    fn normalize(self) -> Result<Option<Piece>> {
        let mut eqs = Vec::new();
        for e in self.equations {
            if e.is_zero() {
                continue;
            }
            if e.is_constant() {
                return Ok(None);
            }
            eqs.push(squarefree_part(&e)?.normalized());
        }
        let mut ineqs = Vec::new();
        for d in self.inequations {
            if d.is_zero() {
                return Ok(None);
            }
            if d.is_constant() {
                continue;
            }
            ineqs.push(squarefree_part(&d)?.normalized());
        }
        sort_dedup(&mut eqs);
        sort_dedup(&mut ineqs);
        if ineqs.iter().any(|d| eqs.contains(d)) {
            return Ok(None);
        }
        Ok(Some(Piece { equations: eqs, inequations: ineqs, dim: self.dim }))
    }
}

fn sort_dedup(v: &mut Vec<Poly>) {
    v.sort_by_cached_key(Poly::to_string);
    v.dedup();
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleSet {
    ambient: Ambient,
    pieces: Vec<Piece>,
}

impl ConstructibleSet {
    pub fn new(ambient: &Ambient, pieces: Vec<Piece>) -> Result<Self> {
        for p in &pieces {
            for q in p.equations.iter().chain(&p.inequations) {
                ambient.check(q.ambient())?;
            }
        }
        let mut out = Vec::new();
        for p in pieces {
            if let Some(p) = p.normalize()? {
                out.push(p);
            }
        }
        out.sort_by_cached_key(Piece::key);
        out.dedup();
        Ok(ConstructibleSet { ambient: ambient.clone(), pieces: out })
    }

    pub fn empty(ambient: &Ambient) -> Self {
        ConstructibleSet { ambient: ambient.clone(), pieces: Vec::new() }
    }

    pub fn whole(ambient: &Ambient) -> Self {
        ConstructibleSet { ambient: ambient.clone(), pieces: vec![Piece::new(Vec::new(), Vec::new())] }
    }

    /// `Z(p)`.
    pub fn zero_set(p: &Poly) -> Result<Self> {
        ConstructibleSet::new(p.ambient(), vec![Piece::new(vec![p.clone()], Vec::new())])
    }

    /// `D(p)`, the complement of `Z(p)`.
    pub fn nonzero_set(p: &Poly) -> Result<Self> {
        ConstructibleSet::new(p.ambient(), vec![Piece::new(Vec::new(), vec![p.clone()])])
    }

    pub fn point(ambient: &Ambient, x: &[Rational]) -> Result<Self> {
        if x.len() != ambient.len() {
            return Err(Error::Arity { expected: ambient.len(), got: x.len() });
        }
        let eqs = x
            .iter()
            .enumerate()
            .map(|(i, c)| &Poly::var(ambient, i) - &Poly::constant(ambient, c.clone()))
            .collect();
        let mut p = Piece::new(eqs, Vec::new());
        p.dim = Some(0);
        ConstructibleSet::new(ambient, vec![p])
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_syntactically_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn union(&self, other: &ConstructibleSet) -> Result<Self> {
        self.ambient.check(&other.ambient)?;
        let pieces = self.pieces.iter().chain(&other.pieces).cloned().collect();
        ConstructibleSet::new(&self.ambient, pieces)
    }

    pub fn intersect(&self, other: &ConstructibleSet) -> Result<Self> {
        self.ambient.check(&other.ambient)?;
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                let eqs = a.equations.iter().chain(&b.equations).cloned().collect();
                let ineqs = a.inequations.iter().chain(&b.inequations).cloned().collect();
                pieces.push(Piece::new(eqs, ineqs));
            }
        }
        ConstructibleSet::new(&self.ambient, pieces)
    }

    pub fn complement(&self) -> Result<Self> {
        let mut acc = ConstructibleSet::whole(&self.ambient);
        for p in &self.pieces {
            let mut parts: Vec<Piece> = p.equations.iter().map(|e| Piece::new(Vec::new(), vec![e.clone()])).collect();
            parts.extend(p.inequations.iter().map(|d| Piece::new(vec![d.clone()], Vec::new())));
            acc = acc.intersect(&ConstructibleSet::new(&self.ambient, parts)?)?;
        }
        Ok(acc)
    }

    pub fn member(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.ambient.len() {
            return Err(Error::Arity { expected: self.ambient.len(), got: x.len() });
        }
        for p in &self.pieces {
            if p.member(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_json(&self) -> ConsetJson {
        ConsetJson {
            vars: self.ambient.names().to_vec(),
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceJson {
                    equations: p.equations.iter().map(Poly::to_string).collect(),
                    inequations: p.inequations.iter().map(Poly::to_string).collect(),
                    dim: p.dim,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ConsetJson) -> Result<Self> {
        let a = Ambient::new(j.vars.iter().cloned());
        let parse = |s: &String| crate::parse::parse_expr(s, &a)?.to_poly(&a);
        let pieces = j
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece {
                    equations: p.equations.iter().map(parse).collect::<Result<_>>()?,
                    inequations: p.inequations.iter().map(parse).collect::<Result<_>>()?,
                    dim: p.dim,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ConstructibleSet::new(&a, pieces)
    }
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| {
                let mut s = if p.equations.is_empty() {
                    "R^n".replace('n', &self.ambient.len().to_string())
                } else {
                    let eqs: Vec<String> = p.equations.iter().map(|e| e.to_string()).collect();
                    format!("Z({})", eqs.join(", "))
                };
                for d in &p.inequations {
                    s.push_str(&format!(" \\ Z({d})"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsetJson {
    pub vars: Vec<String>,
    pub pieces: Vec<PieceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub equations: Vec<String>,
    pub inequations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
}

/// `Z(f)` for a 0-regulous `f` on the plane: the zeros of the numerator minus the
/// indeterminacy points where the extension does not vanish.
pub fn zero_set2(f: &RatFun, budget: Budget) -> Result<ConstructibleSet> {
    let amb = f.ambient().clone();
    if f.is_zero() {
        return Ok(ConstructibleSet::whole(&amb));
    }
    let values = match decide_regulous2(f, 0, budget)? {
        Verdict::Regulous { values, .. } => values,
        Verdict::NotRegulous(w) => return Err(Error::NotRegulous(w.to_string())),
        Verdict::Unknown(r) => return Err(Error::Undecided(r)),
    };
    let removed = values
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(p, _)| {
            (0..p.len()).fold(Poly::zero(&amb), |acc, i| {
                let d = &Poly::var(&amb, i) - &Poly::constant(&amb, p[i].clone());
                &acc + &d.pow(2)
            })
        })
        .collect();
    ConstructibleSet::new(&amb, vec![Piece::new(vec![f.num().clone()], removed)])
}

/// An arc lying in `S` for small t > 0 whose base point is outside `S`.
pub fn euclid_closed_probe(s: &ConstructibleSet, battery: &[Arc]) -> Result<Option<Arc>> {
    for arc in battery {
        if arc.dim() != s.ambient.len() {
            return Err(Error::Arity { expected: s.ambient.len(), got: arc.dim() });
        }
        let Some(base) = arc.base_point() else { continue };
        if s.member(&base)? {
            continue;
        }
        for p in &s.pieces {
            if eventually_inside(p, arc)? {
                return Ok(Some(arc.clone()));
            }
        }
    }
    Ok(None)
}

// Equations vanish identically along the arc and no inequation does.
fn eventually_inside(p: &Piece, arc: &Arc) -> Result<bool> {
    for e in &p.equations {
        if !crate::ratfun::substitute(e, arc.components())?.is_zero() {
            return Ok(false);
        }
    }
    for d in &p.inequations {
        if crate::ratfun::substitute(d, arc.components())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
