//! Certificate-producing searches in rings of regulous functions.

mod json;
mod loja;
mod nss;
mod order;
mod radical;

pub use json::{verify_certificate, CertificateJson, Check, HJson, LojaJson, NssJson, RadicalJson, VanishingJson};
pub use loja::{loja_exponent, LojaCert, LojaOutcome, VanishingReport};
pub use nss::{verify_nss_certificate, verify_rabinowitsch, NssCert};
pub use order::{nonmembership_by_order, OrderReport, OrderVerdict};
pub use radical::{radical_membership, RadicalCert, RadicalOutcome};

use crate::blowup::{check_regulous, Budget, Verdict};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::Ambient;
use crate::ratfun::RatFun;
use crate::rational::Rational;

/// `f_1^2 + ... + f_m^2`, whose zero set is the common zero set of the `f_i`.
pub fn radical_generator(fs: &[Expr]) -> Result<Expr> {
    let mut it = fs.iter().map(|f| Expr::pow(f.clone(), 2));
    let first = it.next().ok_or(Error::Empty("generator list"))?;
    Ok(it.fold(first, Expr::add))
}

pub(crate) fn regulous_verdict(e: &Expr, ambient: &Ambient, k: u32, budget: Budget) -> Result<Verdict> {
    check_regulous(e, ambient, k, budget)
}

/// Value at `p` of the continuous extension described by `verdict`.
pub(crate) fn extension_value(f: &RatFun, verdict: &Verdict, p: &[Rational]) -> Result<Option<Rational>> {
    match f.evaluate(p)? {
        Some(v) => Ok(Some(v)),
        None => Ok(verdict.value_at(p).cloned()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use crate::rational::rat;

    #[test]
    fn generator() {
        let a = Ambient::xy();
        let fs = [parse_expr("x", &a).unwrap(), parse_expr("y", &a).unwrap()];
        let g = radical_generator(&fs).unwrap().to_poly(&a).unwrap();
        assert_eq!(g.to_string(), "x^2 + y^2");
        let single = radical_generator(&fs[..1]).unwrap().to_poly(&a).unwrap();
        assert_eq!(single.to_string(), "x^2");
        assert!(radical_generator(&[]).is_err());
        assert_eq!(g.evaluate(&[rat(0), rat(0)]).unwrap(), rat(0));
    }
}
