//! Exact symbolic toolkit for regulous functions: rational functions on R^n that
//! extend continuously (or C^k) across their indeterminacy locus.

pub mod blowup;
pub mod consets;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod ideal;
pub mod mesh;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod rational;

pub use error::{Error, Result};
pub use expr::Expr;
pub use parse::{parse_expr, parse_poly};
pub use poly::{Ambient, Monomial, Poly, UniPoly};
pub use ratfun::{Arc, ExtValue, Jet, RatFun, Side};
pub use rational::Rational;
