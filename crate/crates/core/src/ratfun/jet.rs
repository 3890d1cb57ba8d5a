use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::RatFun;
use crate::error::{Error, Result};
use crate::parse::parse_expr;
use crate::poly::Ambient;

/// All partial derivatives of order at most `order`, keyed by multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub order: u32,
    pub coeffs: BTreeMap<Vec<u32>, RatFun>,
}

/// Multi-indices of length `n` and total degree at most `k`, by degree then lex.
pub fn multi_indices(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]];
    let mut frontier = vec![vec![0; n]];
    for _ in 0..k {
        let mut next = Vec::new();
        for idx in &frontier {
            // Only bump at or after the last nonzero slot to avoid duplicates.
            let start = idx.iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in start..n {
                let mut j = idx.clone();
                j[v] += 1;
                next.push(j);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn jet(f: &RatFun, k: u32) -> Jet {
    let n = f.nvars();
    let mut coeffs: BTreeMap<Vec<u32>, RatFun> = BTreeMap::new();
    for idx in multi_indices(n, k) {
        let value = match idx.iter().rposition(|&e| e > 0) {
            None => f.clone(),
            Some(v) => {
                let mut parent = idx.clone();
                parent[v] -= 1;
                coeffs[&parent].derivative(v)
            }
        };
        coeffs.insert(idx, value);
    }
    Jet { order: k, coeffs }
}

impl Jet {
    pub fn function(&self) -> &RatFun {
        self.coeffs.values().next().expect("order-0 entry")
    }

    pub fn get(&self, index: &[u32]) -> Option<&RatFun> {
        self.coeffs.get(index)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_json(&self) -> JetJson {
        JetJson {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, f)| JetEntry { index: i.clone(), num: f.num().to_string(), den: f.den().to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &JetJson, ambient: &Ambient) -> Result<Jet> {
        let mut coeffs = BTreeMap::new();
        for e in &j.coeffs {
            if e.index.len() != ambient.len() {
                return Err(Error::Arity { expected: ambient.len(), got: e.index.len() });
            }
            let n = parse_expr(&e.num, ambient)?.to_poly(ambient)?;
            let d = parse_expr(&e.den, ambient)?.to_poly(ambient)?;
            coeffs.insert(e.index.clone(), RatFun::new(n, d)?);
        }
        Ok(Jet { order: j.order, coeffs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetJson {
    pub order: u32,
    pub coeffs: Vec<JetEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetEntry {
    pub index: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn f(n: &str, d: &str) -> RatFun {
        RatFun::new(parse_poly(n, &["x", "y"]).unwrap(), parse_poly(d, &["x", "y"]).unwrap()).unwrap()
    }

    #[test]
    fn indices() {
        assert_eq!(multi_indices(2, 2).len(), 6);
        assert_eq!(multi_indices(3, 2).len(), 10);
    }

    #[test]
    fn first_order_quotient_rule() {
        let j = jet(&f("x^3", "x^2+y^2"), 1);
        assert_eq!(j.get(&[1, 0]).unwrap(), &f("x^4+3*x^2*y^2", "(x^2+y^2)^2"));
        assert_eq!(j.get(&[0, 1]).unwrap(), &f("-2*x^3*y", "(x^2+y^2)^2"));
        assert_eq!(j.len(), 3);
    }

    #[test]
    fn polynomial_jet_is_polynomial() {
        let j = jet(&f("x^3*y + y^4", "1"), 3);
        assert!(j.coeffs.values().all(RatFun::is_polynomial));
    }

    #[test]
    fn json_round_trip() {
        let j = jet(&f("x^3", "x^2+y^2"), 2);
        let json = serde_json::to_string(&j.to_json()).unwrap();
        let back: JetJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Jet::from_json(&back, &Ambient::xy()).unwrap(), j);
    }
}
