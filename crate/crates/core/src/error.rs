use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("n must be >= 1")]
    ZeroPower,
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("negative power of f on the right side at position {pos}; move that factor into the denominator, e.g. F^2 = 1/f^3")]
    NegativePower { pos: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error("degree budget violated for case {case}: {msg}")]
    DegreeBudget { case: String, msg: String },
    #[error("slot {0} is not assigned")]
    MissingSlot(String),
    #[error("unknown identity case {0}")]
    UnknownCase(String),
    #[error("p0 must be at least 1")]
    DegenerateChebyshev,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolutionError {
    #[error("verdict {0} has no closed-form solution family")]
    NoClosedForm(String),
    #[error("overflow guard exceeded: |exp| would pass {bound:e}")]
    Overflow { bound: f64 },
    #[error("branch constant {0} is not available")]
    Branch(String),
    #[error("outside the domain of the family: {0}")]
    Domain(String),
    #[error(transparent)]
    Special(#[from] SpecialFnError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialFnError {
    #[error("pole: within tolerance of lattice point {re}+{im}i")]
    Pole { re: f64, im: f64 },
    #[error("singular point: {0}")]
    Singular(String),
    #[error("modulus must satisfy |k| < 1, got {0}")]
    Modulus(f64),
    #[error("parameter rejected: {0}")]
    Parameter(String),
    #[error("search failure: {0}")]
    SearchFailure(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("transformation step cannot be applied: {0}")]
    InvalidStep(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Failures that end a CLI run with the usage/input exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read input file '{path}': {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("solution JSON: {0}")]
    Json(#[from] serde_json::Error),
}
