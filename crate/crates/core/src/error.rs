use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q = {0} is below the supported minimum of 3")]
    QTooSmall(u64),
    #[error("q must be a prime power, got {0}")]
    NotPrimePower(u64),
    #[error("field order {order} exceeds table cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("subfield index {0} is not one of 1, 2, 3, 6")]
    BadSubfieldIndex(u32),
    #[error("{m} does not divide the multiplicative group order {group}")]
    OrderNotDividing { m: u64, group: u64 },
    #[error("the zero polynomial has every element as a root")]
    ZeroPolynomial,
    #[error("homogeneous coordinates are all zero")]
    ZeroVector,
    #[error("line is not a line of the subplane")]
    NotSubplaneLine,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("orbit lies on {found} curves of the family, expected {expected}")]
    OrbitNotOnFamily { found: usize, expected: usize },
    #[error("the two curves coincide")]
    SameCurve,
    #[error("intersection computation failed: {0}")]
    Intersection(String),
    #[error("no root of X^(q+1)+X+1 lies in F_(q^3) \\ F_q")]
    NoFrameElement,
    #[error("no scalar moves the values into F_(q^2): {0}")]
    NormalizationFailure(String),
    #[error("degree {deg} is not above 2g-2 = {threshold}")]
    BelowThreshold { deg: i64, threshold: i64 },
    #[error("auxiliary curve rejected: {0}")]
    BadAuxiliaryCurve(String),
    #[error("lambda = {lambda} outside 1..={max}")]
    LambdaOutOfRange { lambda: u32, max: u32 },
    #[error("only {found} disjoint chords through the point, need {needed}")]
    NotEnoughChords { found: usize, needed: usize },
    #[error("only {found} curves available, need {needed}")]
    InsufficientCurves { found: usize, needed: usize },
    #[error("interpolation failed: {0}")]
    InterpolationFailure(String),
    #[error("rank {found} of the spanning set differs from the expected {expected}")]
    RankShortfall { found: usize, expected: usize },
    #[error("pole of the function at domain position {0}")]
    PoleOnDomain(usize),
    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unknown claim tag {0:?}")]
    UnknownClaim(String),
    #[error("table cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
