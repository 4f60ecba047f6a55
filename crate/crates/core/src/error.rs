use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("field of order {0} is too large")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("{v} does not divide the extension degree {h}")]
    NotADivisor { v: u32, h: u32 },

    #[error("resultant of two zero polynomials")]
    BothZero,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("vertical tangent: the y-partial vanishes at the expansion point")]
    TangentVertical,
    #[error("order {order} exceeds series truncation {truncation}")]
    OrderExceedsTruncation { order: usize, truncation: usize },
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,
    #[error("matrix is not square")]
    NotSquare,

    #[error("point has a zero coordinate")]
    CoordinateZero,
    #[error("p = {p} does not divide n - 1 = {nm1}")]
    HypothesisPNotDividingNMinus1 { p: u64, nm1: u64 },
    #[error("coefficient ({i},{j}) is not in the subfield of order p^{v}")]
    CoefficientNotInSubfield { i: u32, j: u32, v: u32 },
    #[error("bad tower: need v | h and v < h (v = {v}, h = {h})")]
    BadTower { v: u32, h: u32 },

    #[error("assumptions violated: {}", .0.join("; "))]
    AssumptionViolated(Vec<String>),
    #[error("x is not a separating variable on the chosen chart")]
    SeparatingVariableFailure,
    #[error("sample budget too small: at least {required} vanishing orders are needed")]
    BudgetTooSmall { required: u64 },

    #[error("hypothesis not certified: {0}")]
    HypothesisNotCertified(String),
    #[error("curve does not have the shape a x^2n + b x^n y^n + c y^2n + z^2n: {0}")]
    ShapeMismatch(String),
    #[error("{candidates} candidate points exceed the budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("degree {0} is too small (need d >= 3)")]
    DegreeTooSmall(u64),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),

    #[error("the quartic form is zero")]
    ZeroForm,
    #[error("b, d and e are all zero")]
    AllZero,
    #[error("precondition fails: {0}")]
    PreconditionFails(String),
    #[error("no t in {{uv, u/v}} satisfies d = t + 1/t")]
    NoConsistentT,
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,

    #[error("schema error: {0}")]
    Schema(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
