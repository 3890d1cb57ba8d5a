use std::fmt;

use crate::error::{Error, Result};
use crate::ratfun::{order_along, Arc, RatFun};

/// Vanishing orders at t = 0 along a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub line: Arc,
    /// `None` for generators that vanish identically on the line.
    pub orders: Vec<Option<i64>>,
    pub target_order: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    NonMember(OrderReport),
    Inconclusive(OrderReport),
}

/// Regulous multipliers restrict to functions of order >= 0 on the line, so a
/// target of smaller order than every generator is not in the ideal they generate.
pub fn nonmembership_by_order(target: &RatFun, gens: &[RatFun], line: &Arc) -> Result<OrderVerdict> {
    for c in line.components() {
        if !c.is_polynomial() || c.num().total_degree().unwrap_or(0) > 1 {
            return Err(Error::Malformed(format!("`{line}` is not a linear parametrization")));
        }
    }
    let orders = gens.iter().map(|g| order_along(g, line)).collect::<Result<Vec<_>>>()?;
    let target_order = order_along(target, line)?;
    let min = orders.iter().flatten().min().copied();
    let report = OrderReport { line: line.clone(), orders, target_order };
    Ok(match (target_order, min) {
        (None, _) => OrderVerdict::Inconclusive(report),
        (Some(_), None) => OrderVerdict::NonMember(report),
        (Some(t), Some(m)) if t < m => OrderVerdict::NonMember(report),
        _ => OrderVerdict::Inconclusive(report),
    })
}

impl fmt::Display for OrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |o: &Option<i64>| o.map_or("inf".to_string(), |v| v.to_string());
        let orders: Vec<String> = self.orders.iter().map(show).collect();
        write!(f, "line {}: generator orders [{}], target order {}", self.line, orders.join(", "), show(&self.target_order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use crate::poly::Ambient;

    fn family(i: i64, k: u32) -> RatFun {
        let a = Ambient::new(["x1", "x2"]);
        parse_expr(&format!("x2^{}/(x2^2 + (x1 - {i})^2)", 3 + k), &a).unwrap().to_ratfun(&a).unwrap()
    }

    #[test]
    fn family_orders() {
        for k in [0, 1] {
            let gens: Vec<RatFun> = (0..=2).map(|i| family(i, k)).collect();
            let line = Arc::parse("3, t").unwrap();
            let OrderVerdict::NonMember(r) = nonmembership_by_order(&family(3, k), &gens, &line).unwrap() else {
                panic!()
            };
            assert_eq!(r.orders, vec![Some(3 + k as i64); 3]);
            assert_eq!(r.target_order, Some(1 + k as i64));
        }
    }

    #[test]
    fn target_among_generators() {
        let gens = vec![family(0, 0)];
        let line = Arc::parse("0, t").unwrap();
        assert!(matches!(nonmembership_by_order(&family(0, 0), &gens, &line).unwrap(), OrderVerdict::Inconclusive(_)));
        assert!(nonmembership_by_order(&family(0, 0), &gens, &Arc::parse("t, t^2").unwrap()).is_err());
    }
}
