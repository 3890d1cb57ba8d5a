//! Arc-symmetric closure from incidence data.
//!
//! Components and dimensions of `Z̄^Zar ∩ W` are supplied as a table; the
//! algorithm only consults it. Lookups use the exact set of currently included
//! components, or any recorded subset that already reaches `dim Z`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    pub dim: u32,
}

/// `dim(Z̄^Zar ∩ current)`; `None` for an empty intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub component: String,
    pub current: Vec<String>,
    pub dim: Option<u32>,
}

/// Components of the closure of `Z̄^Zar ∩ current` handed to lower levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refinement {
    pub component: String,
    pub current: Vec<String>,
    pub new: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceJson {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub components: Vec<Component>,
    pub top: Vec<String>,
    pub table: Vec<TableEntry>,
    #[serde(default)]
    pub refinement: Vec<Refinement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSymIncidence {
    name: String,
    dims: BTreeMap<String, u32>,
    order: Vec<String>,
    top: BTreeSet<String>,
    table: BTreeMap<(String, BTreeSet<String>), Option<u32>>,
    refinement: BTreeMap<(String, BTreeSet<String>), Vec<Component>>,
}

impl ArcSymIncidence {
    pub fn from_json(j: &IncidenceJson) -> Result<Self> {
        let mut dims = BTreeMap::new();
        let mut order = Vec::new();
        let mut add = |c: &Component, dims: &mut BTreeMap<String, u32>| -> Result<()> {
            match dims.get(&c.id) {
                Some(d) if *d != c.dim => Err(Error::Inconsistent(format!("component {} has two dimensions", c.id))),
                Some(_) => Ok(()),
                None => {
                    dims.insert(c.id.clone(), c.dim);
                    order.push(c.id.clone());
                    Ok(())
                }
            }
        };
        for c in &j.components {
            if dims.contains_key(&c.id) {
                return Err(Error::Inconsistent(format!("duplicate component {}", c.id)));
            }
            add(c, &mut dims)?;
        }
        for r in &j.refinement {
            for c in &r.new {
                add(c, &mut dims)?;
            }
        }
        let known = |id: &String| -> Result<()> {
            if dims.contains_key(id) {
                Ok(())
            } else {
                Err(Error::Inconsistent(format!("unknown component {id}")))
            }
        };
        if j.top.is_empty() {
            return Err(Error::Empty("top-dimensional components"));
        }
        let d = dims.values().copied().max().unwrap_or(0);
        for t in &j.top {
            known(t)?;
            if dims[t] != d {
                return Err(Error::Inconsistent(format!("top component {t} has dimension {} < {d}", dims[t])));
            }
        }
        for (id, dim) in &dims {
            if *dim == d && !j.top.contains(id) {
                return Err(Error::Inconsistent(format!("component {id} of dimension {d} is not listed as top")));
            }
        }
        let mut table = BTreeMap::new();
        for e in &j.table {
            known(&e.component)?;
            e.current.iter().try_for_each(known)?;
            if let Some(x) = e.dim {
                if x > dims[&e.component] {
                    return Err(Error::Inconsistent(format!(
                        "intersection dimension {x} exceeds dim {} = {}",
                        e.component, dims[&e.component]
                    )));
                }
            }
            let key = (e.component.clone(), e.current.iter().cloned().collect());
            if table.insert(key, e.dim).is_some_and(|old| old != e.dim) {
                return Err(Error::Inconsistent(format!("conflicting entries for {}", e.component)));
            }
        }
        let mut refinement = BTreeMap::new();
        for r in &j.refinement {
            known(&r.component)?;
            r.current.iter().try_for_each(known)?;
            for c in &r.new {
                if c.dim >= dims[&r.component] {
                    return Err(Error::Inconsistent(format!(
                        "refinement of {} adds {} of dimension {}",
                        r.component, c.id, c.dim
                    )));
                }
            }
            refinement.insert((r.component.clone(), r.current.iter().cloned().collect()), r.new.clone());
        }
        // Components only reachable through refinement start outside every pool.
        let seeded: BTreeSet<String> = j.components.iter().map(|c| c.id.clone()).collect();
        order.retain(|id| seeded.contains(id));
        Ok(ArcSymIncidence {
            name: j.name.clone(),
            dims,
            order,
            top: j.top.iter().cloned().collect(),
            table,
            refinement,
        })
    }

    pub fn to_json(&self) -> IncidenceJson {
        IncidenceJson {
            name: self.name.clone(),
            components: self
                .order
                .iter()
                .map(|id| Component { id: id.clone(), dim: self.dims[id] })
                .collect(),
            top: self.top.iter().cloned().collect(),
            table: self
                .table
                .iter()
                .map(|((c, cur), d)| TableEntry { component: c.clone(), current: cur.iter().cloned().collect(), dim: *d })
                .collect(),
            refinement: self
                .refinement
                .iter()
                .map(|((c, cur), new)| Refinement {
                    component: c.clone(),
                    current: cur.iter().cloned().collect(),
                    new: new.clone(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dims.values().copied().max().unwrap_or(0)
    }

    pub fn component_dim(&self, id: &str) -> Option<u32> {
        self.dims.get(id).copied()
    }

    pub fn top(&self) -> &BTreeSet<String> {
        &self.top
    }

    // The recorded intersection dimension, or `dim Z` if some subset of `current` already reaches it.
    fn lookup(&self, z: &str, current: &BTreeSet<String>) -> Result<Option<u32>> {
        if let Some(d) = self.table.get(&(z.to_string(), current.clone())) {
            return Ok(*d);
        }
        let dz = self.dims[z];
        let reached = self
            .table
            .iter()
            .any(|((c, cur), d)| c == z && *d == Some(dz) && cur.is_subset(current));
        if reached {
            return Ok(Some(dz));
        }
        Err(Error::MissingIncidence { component: z.to_string(), current: current.iter().cloned().collect() })
    }
}

/// Whether `dim(Z̄^Zar ∩ current) = dim Z`, the necessary condition for `Z`
/// to be added to the arc-symmetric closure of `current`.
pub fn sym_necessaire_test(inc: &ArcSymIncidence, z: &str, current: &[String]) -> Result<bool> {
    let dz = inc.component_dim(z).ok_or_else(|| Error::Inconsistent(format!("unknown component {z}")))?;
    let cur: BTreeSet<String> = current.iter().cloned().collect();
    Ok(inc.lookup(z, &cur)? == Some(dz))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Initial,
    Included,
    Refined,
    Dropped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub pass: u32,
    pub component: String,
    pub rule: Rule,
    pub dim: u32,
    pub intersection_dim: Option<u32>,
    pub against: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub added: Vec<String>,
}

impl fmt::Display for AuditEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inter = self.intersection_dim.map_or("empty".to_string(), |d| d.to_string());
        match self.rule {
            Rule::Initial => write!(f, "pass {}: {} (dim {}) starts the closure", self.pass, self.component, self.dim),
            Rule::Included => write!(
                f,
                "pass {}: {} (dim {}) included, intersection with {{{}}} has dim {}",
                self.pass,
                self.component,
                self.dim,
                self.against.join(", "),
                inter
            ),
            Rule::Refined => write!(
                f,
                "pass {}: {} (dim {}) refined into {{{}}}, intersection with {{{}}} has dim {}",
                self.pass,
                self.component,
                self.dim,
                self.added.join(", "),
                self.against.join(", "),
                inter
            ),
            Rule::Dropped => write!(
                f,
                "pass {}: {} (dim {}) dropped, intersection with {{{}}} has dim {}",
                self.pass,
                self.component,
                self.dim,
                self.against.join(", "),
                inter
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureResult {
    pub included: Vec<String>,
    pub audit: Vec<AuditEntry>,
    /// Number of dimension levels that had candidate components.
    pub passes: u32,
    pub dim: u32,
}

impl ClosureResult {
    /// The included set rebuilt from the audit trail alone.
    pub fn replay(&self) -> Vec<String> {
        let set: BTreeSet<String> = self
            .audit
            .iter()
            .filter(|e| matches!(e.rule, Rule::Initial | Rule::Included))
            .map(|e| e.component.clone())
            .collect();
        set.into_iter().collect()
    }
}

/// Starts from the top-dimensional components and walks down one dimension per
/// pass. A component `Z` joins when `dim(Z̄^Zar ∩ W) = dim Z` for the current
/// `W`; otherwise the refinement data, if any, feeds lower levels.
pub fn closure_algorithm(inc: &ArcSymIncidence) -> Result<ClosureResult> {
    let d = inc.dim();
    let mut current: BTreeSet<String> = inc.top.clone();
    let mut audit: Vec<AuditEntry> = current
        .iter()
        .map(|c| AuditEntry {
            pass: 0,
            component: c.clone(),
            rule: Rule::Initial,
            dim: d,
            intersection_dim: Some(d),
            against: Vec::new(),
            added: Vec::new(),
        })
        .collect();
    let mut pools: BTreeMap<u32, Vec<String>> = BTreeMap::new();
    for id in &inc.order {
        let dz = inc.dims[id];
        if dz < d {
            pools.entry(dz).or_default().push(id.clone());
        }
    }
    let mut passes = 0;
    for level in (0..d).rev() {
        let pool = pools.remove(&level).unwrap_or_default();
        let mut seen = BTreeSet::new();
        let pool: Vec<String> = pool.into_iter().filter(|c| !current.contains(c) && seen.insert(c.clone())).collect();
        if pool.is_empty() {
            continue;
        }
        passes += 1;
        let against: Vec<String> = current.iter().cloned().collect();
        let mut joined = Vec::new();
        for z in pool {
            let inter = inc.lookup(&z, &current)?;
            let mut entry = AuditEntry {
                pass: passes,
                component: z.clone(),
                rule: Rule::Included,
                dim: level,
                intersection_dim: inter,
                against: against.clone(),
                added: Vec::new(),
            };
            if inter == Some(level) {
                joined.push(z);
            } else if let Some(new) = inc.refinement.get(&(z.clone(), current.clone())) {
                entry.rule = Rule::Refined;
                for c in new {
                    entry.added.push(c.id.clone());
                    pools.entry(c.dim).or_default().push(c.id.clone());
                }
            } else {
                entry.rule = Rule::Dropped;
            }
            audit.push(entry);
        }
        current.extend(joined);
    }
    Ok(ClosureResult { included: current.into_iter().collect(), audit, passes, dim: d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(id: &str, dim: u32) -> Component {
        Component { id: id.into(), dim }
    }

    fn e(component: &str, current: &[&str], dim: Option<u32>) -> TableEntry {
        TableEntry { component: component.into(), current: current.iter().map(|s| s.to_string()).collect(), dim }
    }

    fn staircase() -> IncidenceJson {
        IncidenceJson {
            name: "staircase".into(),
            components: vec![c("W", 3), c("A", 2), c("B", 2), c("L", 1)],
            top: vec!["W".into()],
            table: vec![
                e("A", &["W"], Some(2)),
                e("B", &["W"], Some(2)),
                e("L", &["W"], None),
                e("L", &["A", "B", "W"], Some(1)),
            ],
            refinement: vec![],
        }
    }

    #[test]
    fn two_pass_inclusion() {
        let inc = ArcSymIncidence::from_json(&staircase()).unwrap();
        assert!(!sym_necessaire_test(&inc, "L", &["W".into()]).unwrap());
        let r = closure_algorithm(&inc).unwrap();
        assert_eq!(r.included, vec!["A", "B", "L", "W"]);
        assert_eq!(r.passes, 2);
        assert_eq!(r.replay(), r.included);
        let l = r.audit.iter().find(|a| a.component == "L").unwrap();
        assert_eq!(l.pass, 2);
        assert_eq!(l.to_string(), "pass 2: L (dim 1) included, intersection with {A, B, W} has dim 1");
    }

    #[test]
    fn single_component() {
        let j = IncidenceJson { name: String::new(), components: vec![c("W", 2)], top: vec!["W".into()], table: vec![], refinement: vec![] };
        let r = closure_algorithm(&ArcSymIncidence::from_json(&j).unwrap()).unwrap();
        assert_eq!(r.included, vec!["W"]);
        assert_eq!(r.passes, 0);
        assert!(r.audit.iter().all(|a| a.rule == Rule::Initial));
    }

    #[test]
    fn missing_and_inconsistent() {
        let mut j = staircase();
        j.table.pop();
        match closure_algorithm(&ArcSymIncidence::from_json(&j).unwrap()) {
            Err(Error::MissingIncidence { component, current }) => {
                assert_eq!(component, "L");
                assert_eq!(current, vec!["A", "B", "W"]);
            }
            other => panic!("{other:?}"),
        }
        let mut j = staircase();
        j.table[0].dim = Some(3);
        assert!(matches!(ArcSymIncidence::from_json(&j), Err(Error::Inconsistent(_))));
        let mut j = staircase();
        j.top = vec!["A".into()];
        assert!(matches!(ArcSymIncidence::from_json(&j), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn refinement_feeds_lower_levels() {
        let j = IncidenceJson {
            name: String::new(),
            components: vec![c("W", 2), c("Z", 1)],
            top: vec!["W".into()],
            table: vec![e("Z", &["W"], Some(0)), e("P", &["W"], Some(0))],
            refinement: vec![Refinement { component: "Z".into(), current: vec!["W".into()], new: vec![c("P", 0)] }],
        };
        let r = closure_algorithm(&ArcSymIncidence::from_json(&j).unwrap()).unwrap();
        assert_eq!(r.included, vec!["P", "W"]);
        assert_eq!(r.passes, 2);
        assert_eq!(r.audit[1].rule, Rule::Refined);
        let back = ArcSymIncidence::from_json(&ArcSymIncidence::from_json(&j).unwrap().to_json()).unwrap();
        assert_eq!(closure_algorithm(&back).unwrap(), r);
    }
}
