//! Point blow-ups, continuity decisions and arc witnesses.

mod certify;
mod decide;
mod refute;
mod resolve;
mod witness;

pub use decide::{decide_regulous2, decide_regulous2_on, kmax, stratify2, Decider, KMax, Stratification2, StratificationJson};
pub use resolve::{
    blowup_point, fiber_values, pullback, resolve_excluding, resolve_indeterminacy2, restrict_to_line, Budget, Chart,
    ExceptionalLine, FiberComponent, FiberReport, NodeJson, PullbackJson, ResolutionTree, Restriction, TreeJson,
    TreeStatus, Which,
};
pub use witness::{parse_arc_text, parse_ext, parse_point, partial, PointValue, Verdict, VerdictJson, Witness, WitnessJson};
pub use certify::certify_regulous;
pub use refute::{battery_plane, battery_space, default_battery, refute_by_arcs};

use crate::error::Result;
use crate::expr::Expr;
use crate::poly::Ambient;

/// Exact decision in the plane, compositional certification otherwise.
pub fn check_regulous(e: &Expr, ambient: &Ambient, k: u32, budget: Budget) -> Result<Verdict> {
    if ambient.len() == 2 {
        decide_regulous2(&e.to_ratfun(ambient)?, k, budget)
    } else {
        certify_regulous(e, ambient, k, budget)
    }
}
