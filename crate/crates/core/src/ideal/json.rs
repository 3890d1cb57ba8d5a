//! File formats for certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::loja::{LojaCert, VanishingReport};
use super::nss::{verify_nss_certificate, NssCert};
use super::radical::RadicalCert;
use crate::blowup::{parse_point, Budget, Verdict, VerdictJson};
use crate::error::Result;
use crate::expr::Expr;
use crate::parse::parse_expr;
use crate::poly::Ambient;
use crate::ratfun::RatFun;
use crate::rational::fmt_point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Valid,
    Invalid(String),
}

impl Check {
    pub fn is_valid(&self) -> bool {
        matches!(self, Check::Valid)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Valid => write!(f, "valid"),
            Check::Invalid(r) => write!(f, "invalid: {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateJson {
    Loja(LojaJson),
    Radical(RadicalJson),
    Nss(NssJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HJson {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingJson {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LojaJson {
    pub vars: Vec<String>,
    pub f: String,
    pub g: String,
    pub k: u32,
    pub n: u32,
    pub h: HJson,
    pub verdict: VerdictJson,
    pub vanishing: VanishingJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalJson {
    pub vars: Vec<String>,
    pub f: String,
    pub g: String,
    pub k: u32,
    pub n: u32,
    pub h: HJson,
    pub verdict: VerdictJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NssJson {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub target: String,
    #[serde(default)]
    pub k: u32,
    pub n: u32,
    pub multipliers: Vec<String>,
}

fn h_json(h: &RatFun) -> HJson {
    HJson { num: h.num().to_string(), den: h.den().to_string() }
}

fn h_from(j: &HJson, a: &Ambient) -> Result<RatFun> {
    RatFun::new(parse_expr(&j.num, a)?.to_poly(a)?, parse_expr(&j.den, a)?.to_poly(a)?)
}

fn text(e: &Expr, a: &Ambient) -> String {
    e.to_text(a.names())
}

impl LojaCert {
    pub fn to_json(&self) -> LojaJson {
        let a = &self.ambient;
        LojaJson {
            vars: a.names().to_vec(),
            f: text(&self.f, a),
            g: text(&self.g, a),
            k: self.k,
            n: self.n,
            h: h_json(&self.h),
            verdict: self.verdict.to_json(),
            vanishing: VanishingJson {
                points: self.vanishing.points.iter().map(|p| fmt_point(p)).collect(),
                divisor: self.vanishing.divisor.as_ref().map(|d| d.to_string()),
            },
        }
    }

    pub fn from_json(j: &LojaJson) -> Result<LojaCert> {
        let a = Ambient::new(j.vars.iter().cloned());
        Ok(LojaCert {
            f: parse_expr(&j.f, &a)?,
            g: parse_expr(&j.g, &a)?,
            k: j.k,
            n: j.n,
            h: h_from(&j.h, &a)?,
            verdict: Verdict::from_json(&j.verdict)?,
            vanishing: VanishingReport {
                points: j.vanishing.points.iter().map(|p| parse_point(p)).collect::<Result<_>>()?,
                divisor: j.vanishing.divisor.as_ref().map(|d| parse_expr(d, &a)?.to_poly(&a)).transpose()?,
            },
            ambient: a,
        })
    }
}

impl RadicalCert {
    pub fn to_json(&self) -> RadicalJson {
        let a = &self.ambient;
        RadicalJson {
            vars: a.names().to_vec(),
            f: text(&self.f, a),
            g: text(&self.g, a),
            k: self.k,
            n: self.n,
            h: h_json(&self.h),
            verdict: self.verdict.to_json(),
        }
    }

    pub fn from_json(j: &RadicalJson) -> Result<RadicalCert> {
        let a = Ambient::new(j.vars.iter().cloned());
        Ok(RadicalCert {
            f: parse_expr(&j.f, &a)?,
            g: parse_expr(&j.g, &a)?,
            k: j.k,
            n: j.n,
            h: h_from(&j.h, &a)?,
            verdict: Verdict::from_json(&j.verdict)?,
            ambient: a,
        })
    }
}

impl NssCert {
    pub fn to_json(&self) -> NssJson {
        let a = &self.ambient;
        NssJson {
            vars: a.names().to_vec(),
            generators: self.generators.iter().map(|e| text(e, a)).collect(),
            target: text(&self.target, a),
            k: self.k,
            n: self.n,
            multipliers: self.multipliers.iter().map(|e| text(e, a)).collect(),
        }
    }

    pub fn from_json(j: &NssJson) -> Result<NssCert> {
        let a = Ambient::new(j.vars.iter().cloned());
        let parse_all = |v: &[String]| v.iter().map(|s| parse_expr(s, &a)).collect::<Result<Vec<_>>>();
        Ok(NssCert {
            generators: parse_all(&j.generators)?,
            target: parse_expr(&j.target, &a)?,
            k: j.k,
            n: j.n,
            multipliers: parse_all(&j.multipliers)?,
            ambient: a.clone(),
        })
    }
}

/// Re-checks any certificate file from scratch.
pub fn verify_certificate(c: &CertificateJson, budget: Budget) -> Result<Check> {
    match c {
        CertificateJson::Loja(j) => LojaCert::from_json(j)?.verify(budget),
        CertificateJson::Radical(j) => RadicalCert::from_json(j)?.verify(budget),
        CertificateJson::Nss(j) => verify_nss_certificate(&NssCert::from_json(j)?, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{loja_exponent, radical_membership, LojaOutcome, RadicalOutcome};

    fn e(s: &str) -> Expr {
        parse_expr(s, &Ambient::xy()).unwrap()
    }

    fn round_trip(c: &CertificateJson) -> CertificateJson {
        let s = serde_json::to_string_pretty(c).unwrap();
        let back: CertificateJson = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), s);
        back
    }

    #[test]
    fn certificates_survive_files() {
        let a = Ambient::xy();
        let b = Budget::default();
        let LojaOutcome::Found(l) = loja_exponent(&e("x^2+y^2"), &e("1/(x^2+2*y^2)"), &a, 0, 4, b).unwrap() else {
            panic!()
        };
        let j = round_trip(&CertificateJson::Loja(l.to_json()));
        assert_eq!(verify_certificate(&j, b).unwrap(), Check::Valid);
        let RadicalOutcome::Member(r) = radical_membership(&e("x"), &e("x^2+y^2"), &a, 0, 4, b).unwrap() else {
            panic!()
        };
        let j = round_trip(&CertificateJson::Radical(r.to_json()));
        assert_eq!(verify_certificate(&j, b).unwrap(), Check::Valid);
        let n = NssCert {
            ambient: a.clone(),
            generators: vec![e("x^2+y^2")],
            target: e("x"),
            k: 0,
            n: 3,
            multipliers: vec![e("x^3/(x^2+y^2)")],
        };
        let j = round_trip(&CertificateJson::Nss(n.to_json()));
        assert_eq!(verify_certificate(&j, b).unwrap(), Check::Valid);
    }
}
