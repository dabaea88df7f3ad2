use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("recurrence produced a non-integral term at n = {0}")]
    NonIntegralTerm(u64),
    #[error("no integral recurrence of the requested shape fits the data")]
    NoFit,
    #[error("invalid parameter: {0}")]
    BadN(String),
    #[error("series is not a perfect square")]
    NotASquare,
    #[error("inner series must have positive integral valuation")]
    CompositionDiverges,
    #[error("needs {needed} terms, only {have} known")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("coefficient not representable in the ring: {0}")]
    NonRealCoefficient(String),
    #[error("CM construction does not reproduce the expected prefix")]
    CMValidationFailed,
    #[error("coefficient relation fails at n = {0}")]
    RelationFailed(u64),
    #[error("precision {0} bits cannot be reached with the configured term cap")]
    PrecisionUnreachable(u32),
    #[error("identity fails first at exponent {0}")]
    IdentityFailed(i64),
    #[error("coefficient at index {0} not available")]
    CoefficientUnavailable(u64),
    #[error("unsupported label: {0}")]
    UnsupportedLabel(String),
    #[error("denominator divisible by p = {0}")]
    DenominatorDivisibleByP(u64),
    #[error("pole of the gamma function at {0}")]
    PoleError(String),
    #[error("argument outside the domain of convergence: {0}")]
    OutOfDomain(String),
    #[error("interpolated function has a pole at {0}")]
    PoleAt(String),
    #[error("unsupported argument: {0}")]
    UnsupportedArgument(String),
    #[error("argument lies on the branch cut (1, inf); choose a side")]
    BranchCutAmbiguous,
    #[error("root number could not be determined (residuals {0:e}, {1:e})")]
    RootSignUndetermined(f64, f64),
    #[error("need {needed} coefficients, table has {have}")]
    InsufficientCoefficients { needed: u64, have: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown claim id: {0}")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
