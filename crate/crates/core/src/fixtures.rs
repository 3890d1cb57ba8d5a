//! The bundled fixture catalog and its replay.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blowup::{check_regulous, kmax, Budget, KMax, Verdict};
use crate::consets::{closure_algorithm, zero_set2, ArcSymIncidence, ConstructibleSet, IncidenceJson};
use crate::error::{Error, Result};
use crate::ideal::{loja_exponent, nonmembership_by_order, radical_membership, LojaOutcome, OrderVerdict, RadicalOutcome};
use crate::parse::parse_expr;
use crate::poly::Ambient;
use crate::ratfun::{Arc, RatFun};
use crate::rational::{fmt_point, fmt_rational, parse_rational, rat, Rational};

const EMBEDDED: &[(&str, &str)] = &[
    ("catalog.json", include_str!("../../../fixtures/catalog.json")),
    ("c-ex.json", include_str!("../../../fixtures/c-ex.json")),
    ("ex-algo.json", include_str!("../../../fixtures/ex-algo.json")),
    ("cartan.json", include_str!("../../../fixtures/cartan.json")),
    ("whitney.json", include_str!("../../../fixtures/whitney.json")),
    ("horned.json", include_str!("../../../fixtures/horned.json")),
];

/// Contents of a bundled fixture file.
pub fn embedded(name: &str) -> Option<&'static str> {
    EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn embedded_names() -> Vec<&'static str> {
    EMBEDDED.iter().map(|(n, _)| *n).collect()
}

/// An integer or a rational in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Num::Int(n) => Ok(rat(*n)),
            Num::Text(s) => parse_rational(s),
        }
    }
}

fn point(p: &[Num]) -> Result<Vec<Rational>> {
    p.iter().map(Num::to_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueCheck {
    pub point: Vec<Num>,
    pub value: Num,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Regulous,
    NotRegulous,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KExpect {
    Exact,
    NotRegulous,
    AtLeast,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalExpect {
    Member,
    Refuted,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderExpect {
    NonMember,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Case {
    Check {
        id: String,
        vars: String,
        expr: String,
        k: u32,
        expect: Expect,
        #[serde(default)]
        values: Vec<ValueCheck>,
    },
    Kmax {
        id: String,
        vars: String,
        expr: String,
        cap: u32,
        expect: KExpect,
        #[serde(default)]
        level: Option<u32>,
    },
    ZeroSet {
        id: String,
        vars: String,
        expr: String,
        inside: Vec<Vec<Num>>,
        outside: Vec<Vec<Num>>,
    },
    Loja {
        id: String,
        vars: String,
        f: String,
        g: String,
        k: u32,
        ncap: u32,
        n: Option<u32>,
    },
    Radical {
        id: String,
        vars: String,
        f: String,
        g: String,
        k: u32,
        ncap: u32,
        expect: RadicalExpect,
        #[serde(default)]
        n: Option<u32>,
    },
    Order {
        id: String,
        vars: String,
        target: String,
        gens: Vec<String>,
        line: String,
        expect: OrderExpect,
    },
    Closure {
        id: String,
        incidence: String,
        included: Vec<String>,
        #[serde(default)]
        passes: BTreeMap<String, u32>,
    },
}

impl Case {
    pub fn id(&self) -> &str {
        match self {
            Case::Check { id, .. }
            | Case::Kmax { id, .. }
            | Case::ZeroSet { id, .. }
            | Case::Loja { id, .. }
            | Case::Radical { id, .. }
            | Case::Order { id, .. }
            | Case::Closure { id, .. } => id,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    #[serde(default)]
    pub include: Vec<String>,
    pub cases: Vec<Case>,
}

/// All cases of a catalog plus its included files, sorted by id.
pub fn load_catalog(text: &str, load: &dyn Fn(&str) -> Result<String>) -> Result<Vec<Case>> {
    let cat: Catalog = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut cases = cat.cases;
    for f in &cat.include {
        let case: Case = serde_json::from_str(&load(f)?).map_err(|e| Error::Malformed(format!("{f}: {e}")))?;
        cases.push(case);
    }
    cases.sort_by(|a, b| a.id().cmp(b.id()));
    Ok(cases)
}

pub fn load_embedded(name: &str) -> Result<String> {
    embedded(name).map(str::to_string).ok_or_else(|| Error::Malformed(format!("no bundled fixture `{name}`")))
}

pub fn catalog() -> Result<Vec<Case>> {
    load_catalog(embedded("catalog.json").unwrap_or_default(), &load_embedded)
}

pub fn incidence(text: &str) -> Result<ArcSymIncidence> {
    let j: IncidenceJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    ArcSymIncidence::from_json(&j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replay {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Replay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "ok  " } else { "FAIL" }, self.id, self.detail)
    }
}

fn ratfun(s: &str, a: &Ambient) -> Result<RatFun> {
    parse_expr(s, a)?.to_ratfun(a)
}

pub fn replay(case: &Case, budget: Budget, load: &dyn Fn(&str) -> Result<String>) -> Result<Replay> {
    let (passed, detail) = match case {
        Case::Check { vars, expr, k, expect, values, .. } => {
            let a = Ambient::parse(vars)?;
            let v = check_regulous(&parse_expr(expr, &a)?, &a, *k, budget)?;
            let kind = match v {
                Verdict::Regulous { .. } => Expect::Regulous,
                Verdict::NotRegulous(_) => Expect::NotRegulous,
                Verdict::Unknown(_) => Expect::Unknown,
            };
            let mut ok = kind == *expect;
            for c in values {
                ok &= v.value_at(&point(&c.point)?) == Some(&c.value.to_rational()?);
            }
            (ok, v.to_string())
        }
        Case::Kmax { vars, expr, cap, expect, level, .. } => {
            let a = Ambient::parse(vars)?;
            let r = kmax(&ratfun(expr, &a)?, *cap, budget)?;
            let ok = match (&r, expect) {
                (KMax::Exact { k, .. }, KExpect::Exact) | (KMax::AtLeast(k), KExpect::AtLeast) => Some(*k) == *level,
                (KMax::NotRegulous(_), KExpect::NotRegulous) | (KMax::Unknown(_), KExpect::Unknown) => true,
                _ => false,
            };
            (ok, r.to_string())
        }
        Case::ZeroSet { vars, expr, inside, outside, .. } => {
            let a = Ambient::parse(vars)?;
            let f = ratfun(expr, &a)?;
            let s = match f.as_poly() {
                Some(p) => ConstructibleSet::zero_set(&p)?,
                None => zero_set2(&f, budget)?,
            };
            let mut ok = true;
            for p in inside {
                ok &= s.member(&point(p)?)?;
            }
            for p in outside {
                ok &= !s.member(&point(p)?)?;
            }
            (ok, s.to_string())
        }
        Case::Loja { vars, f, g, k, ncap, n, .. } => {
            let a = Ambient::parse(vars)?;
            match loja_exponent(&parse_expr(f, &a)?, &parse_expr(g, &a)?, &a, *k, *ncap, budget)? {
                LojaOutcome::Found(c) => {
                    let check = c.verify(budget)?;
                    (Some(c.n) == *n && check.is_valid(), format!("N = {}, certificate {check}", c.n))
                }
                LojaOutcome::Unknown(r) => (n.is_none(), format!("unknown: {r}")),
            }
        }
        Case::Radical { vars, f, g, k, ncap, expect, n, .. } => {
            let a = Ambient::parse(vars)?;
            match radical_membership(&parse_expr(f, &a)?, &parse_expr(g, &a)?, &a, *k, *ncap, budget)? {
                RadicalOutcome::Member(c) => {
                    let check = c.verify(budget)?;
                    let ok = *expect == RadicalExpect::Member && n.map_or(true, |n| n == c.n) && check.is_valid();
                    (ok, format!("member with N = {}, h = {}, certificate {check}", c.n, c.h))
                }
                RadicalOutcome::Refuted(p) => {
                    (*expect == RadicalExpect::Refuted, format!("refuted at {}", fmt_point(&p)))
                }
                RadicalOutcome::Unknown(r) => (*expect == RadicalExpect::Unknown, format!("unknown: {r}")),
            }
        }
        Case::Order { vars, target, gens, line, expect, .. } => {
            let a = Ambient::parse(vars)?;
            let gens = gens.iter().map(|g| ratfun(g, &a)).collect::<Result<Vec<_>>>()?;
            match nonmembership_by_order(&ratfun(target, &a)?, &gens, &Arc::parse(line)?)? {
                OrderVerdict::NonMember(r) => (*expect == OrderExpect::NonMember, format!("not a member: {r}")),
                OrderVerdict::Inconclusive(r) => (*expect == OrderExpect::Inconclusive, format!("inconclusive: {r}")),
            }
        }
        Case::Closure { incidence: file, included, passes, .. } => {
            let r = closure_algorithm(&incidence(&load(file)?)?)?;
            let mut ok = r.included == *included && r.passes <= r.dim.saturating_sub(1);
            for (c, p) in passes {
                ok &= r.audit.iter().any(|e| &e.component == c && e.pass == *p && e.rule == crate::consets::Rule::Included);
            }
            (ok, format!("closure {{{}}} in {} passes", r.included.join(", "), r.passes))
        }
    };
    Ok(Replay { id: case.id().to_string(), passed, detail })
}

/// Formats `(point, value)` pairs as `value at point`.
pub fn describe_values(values: &[(Vec<Rational>, Rational)]) -> String {
    values.iter().map(|(p, v)| format!("{} at {}", fmt_rational(v), fmt_point(p))).collect::<Vec<_>>().join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_catalog_replays() {
        let cases = catalog().unwrap();
        assert!(cases.len() >= 19);
        let ids: Vec<&str> = cases.iter().map(Case::id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        for c in &cases {
            let r = replay(c, Budget::default(), &load_embedded).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn wrong_expectation_fails() {
        let c = Case::Check {
            id: "flip".into(),
            vars: "x,y".into(),
            expr: "x*y/(x^2+y^2)".into(),
            k: 0,
            expect: Expect::Regulous,
            values: vec![],
        };
        assert!(!replay(&c, Budget::default(), &load_embedded).unwrap().passed);
    }
}
