use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is not supported here (an odd prime is required)")]
    EvenPrime(u64),
    #[error("no inverse of zero")]
    ZeroInverse,
    #[error("ambient mismatch: ({lhs_vars} vars, p={lhs_p}) vs ({rhs_vars} vars, p={rhs_p})")]
    AmbientMismatch {
        lhs_vars: usize,
        lhs_p: u64,
        rhs_vars: usize,
        rhs_p: u64,
    },
    #[error("variable index {index} out of range 1..={vars}")]
    VariableOutOfRange { index: usize, vars: usize },
    #[error("unsupported number of variables {0}")]
    UnsupportedVariables(usize),
    #[error("V_{dim} is not an indecomposable module for p = {p}")]
    NotIndecomposable { dim: usize, p: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial has weight {weight}, which exceeds n = {n}")]
    NotInKernel { weight: usize, n: usize },
    #[error("covariant is not invariant")]
    NotInvariant,
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("degree {requested} exceeds the degree cap {cap}")]
    CutoffExceeded { requested: u32, cap: u32 },
    #[error("d = {d} is out of lemma range (requires d < p = {p})")]
    OutOfLemmaRange { d: usize, p: u64 },
    #[error(
        "H_p closed form is out of scope (k must satisfy 1 <= k <= p-1, got k = {k}, p = {p})"
    )]
    HpOutOfScope { k: usize, p: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("construction check failed for {label}: {reason}")]
    Construction { label: String, reason: String },
}
