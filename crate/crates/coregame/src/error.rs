use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix columns are linearly dependent")]
    RankDeficient,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("enumeration would produce {needed} points, cap is {cap}")]
    TooLarge { needed: u64, cap: u64 },

    #[error("domain variant cannot be enumerated without a coalition context")]
    NeedsCoalition,

    #[error("no finite enumeration for this domain variant")]
    InfiniteDomain,

    #[error("coalition {0} has no domain in the family")]
    MissingCoalition(String),

    #[error("objective is undefined at the requested point")]
    UndefinedPoint,

    #[error("objective is not grounded: f(0) = {0}")]
    NotGrounded(String),

    #[error("objective requires a coalition argument")]
    MissingCoalitionArgument,

    #[error("invalid objective: {0}")]
    InvalidObjective(String),

    #[error("sub-program is infeasible for coalition {0}")]
    InfeasibleSubprogram(String),

    #[error("relaxation LP did not solve to optimality: {0}")]
    RelaxationNotOptimal(String),

    #[error("solution status is not optimal")]
    StatusNotOptimal,

    #[error("model assumptions are violated: {0}")]
    AssumptionViolated(String),

    #[error("objective fails the {variant} precondition at x = {witness}")]
    PreconditionViolated { variant: String, witness: String },

    #[error("core is empty; no member to extract")]
    EmptyCore,

    #[error("grand coalition value is zero; approximation ratio undefined")]
    ZeroGrandValue,

    #[error("operation does not apply to this instance variant: {0}")]
    UnsupportedVariant(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("not a (3,B2) formula: {0}")]
    Not3B2(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal certificate check failed: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
