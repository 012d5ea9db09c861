use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("log of zero")]
    LogOfZero,
    #[error("logarithm of a non-positive rational")]
    LogOfNonPositive,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero polynomial after merging")]
    ZeroPolynomial,
    #[error("division by zero: negative exponent in coordinate {coordinate} at a zero value")]
    DivisionByZero { coordinate: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polyhedron is infeasible")]
    Infeasible,
    #[error("vertex enumeration restricted to fixed small n (got n = {dim}, limit {limit})")]
    DimensionTooLarge { dim: usize, limit: usize },
    #[error("ArchTrop empty, distance infinite")]
    EmptyTropicalVariety,
    #[error("square systems only")]
    NotSquare,
    #[error("degenerate binomial system (non-isolated roots)")]
    DegenerateBinomialSystem,
    #[error("root finding did not converge after {sweeps} sweeps (max residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
