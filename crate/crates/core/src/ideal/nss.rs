use super::json::Check;
use super::regulous_verdict;
use crate::blowup::Budget;
use crate::error::Result;
use crate::expr::Expr;
use crate::poly::{Ambient, Poly};
use crate::ratfun::RatFun;

/// `target^N = h_1 f_1 + ... + h_m f_m` with k-regulous multipliers `h_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NssCert {
    pub ambient: Ambient,
    pub generators: Vec<Expr>,
    pub target: Expr,
    pub k: u32,
    pub n: u32,
    pub multipliers: Vec<Expr>,
}

/// Checks the identity exactly, then certifies every multiplier.
pub fn verify_nss_certificate(c: &NssCert, budget: Budget) -> Result<Check> {
    if c.generators.len() != c.multipliers.len() {
        return Ok(Check::Invalid(format!(
            "{} generators but {} multipliers",
            c.generators.len(),
            c.multipliers.len()
        )));
    }
    let amb = &c.ambient;
    let mut sum = RatFun::zero(amb);
    for (f, h) in c.generators.iter().zip(&c.multipliers) {
        sum = sum.add(&f.to_ratfun(amb)?.mul(&h.to_ratfun(amb)?)?)?;
    }
    let residue = c.target.to_ratfun(amb)?.pow(c.n).sub(&sum)?;
    if !residue.is_zero() {
        return Ok(Check::Invalid(format!("identity residue {} is not zero", residue)));
    }
    for (i, h) in c.multipliers.iter().enumerate() {
        let v = regulous_verdict(h, amb, c.k, budget)?;
        if !v.is_regulous() {
            return Ok(Check::Invalid(format!("multiplier {} is not certified: {v}", i + 1)));
        }
    }
    Ok(Check::Valid)
}

/// Checks `g_1 f_1 + ... + g_m f_m + g_{m+1} (w f - 1) = 1` over `ambient`, whose
/// last variable is the auxiliary `w`, and certifies the multipliers.
pub fn verify_rabinowitsch(
    generators: &[Expr],
    target: &Expr,
    multipliers: &[Expr],
    ambient: &Ambient,
    budget: Budget,
) -> Result<Check> {
    if multipliers.len() != generators.len() + 1 {
        return Ok(Check::Invalid("expected one multiplier per generator plus one".into()));
    }
    let w = RatFun::var(ambient, ambient.len() - 1);
    let aux = w.mul(&target.to_ratfun(ambient)?)?.sub(&RatFun::one(ambient))?;
    let mut sum = RatFun::zero(ambient);
    for (f, g) in generators.iter().map(|f| f.to_ratfun(ambient)).chain([Ok(aux)]).zip(multipliers) {
        sum = sum.add(&f?.mul(&g.to_ratfun(ambient)?)?)?;
    }
    if sum != RatFun::from_poly(Poly::one(ambient)) {
        return Ok(Check::Invalid(format!("combination equals {sum}, not 1")));
    }
    for (i, g) in multipliers.iter().enumerate() {
        let v = regulous_verdict(g, ambient, 0, budget)?;
        if !v.is_regulous() {
            return Ok(Check::Invalid(format!("multiplier {} is not certified: {v}", i + 1)));
        }
    }
    Ok(Check::Valid)
}
