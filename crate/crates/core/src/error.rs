use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the procedures built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent {exponent} exceeds the configured cap {cap}")]
    ExponentOverflow { exponent: String, cap: u32 },
    #[error("ambient mismatch: [{left}] vs [{right}]")]
    AmbientMismatch { left: String, right: String },
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("both polynomials are constant in the eliminated variable")]
    ConstantInVariable,
    #[error("division by a non-constant in a polynomial expression")]
    NonPolynomial,
    #[error("variable index {0} out of range")]
    VariableIndex(usize),
    #[error("arc lies inside the pole locus")]
    ArcInPoleLocus,
    #[error("operation requires {expected} variables, found {got}")]
    Dimension { expected: usize, got: usize },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("function is not regulous: {0}")]
    NotRegulous(String),
    #[error("regulousness could not be decided: {0}")]
    Undecided(String),
    #[error("resolution tree is not resolved")]
    Unresolved,
    #[error("missing incidence entry for component `{component}` against {current:?}")]
    MissingIncidence { component: String, current: Vec<String> },
    #[error("inconsistent incidence data: {0}")]
    Inconsistent(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
