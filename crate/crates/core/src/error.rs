use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("characteristic {0} exceeds the supported ceiling 2^20")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field order {p}^{e} does not fit in 63 bits")]
    FieldTooLarge { p: u64, e: usize },
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("modulus is not monic")]
    NonMonicModulus,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("multiplicative order of zero is undefined")]
    ZeroElement,
    #[error("operands belong to different fields")]
    MixedContexts,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is reducible")]
    ReduciblePolynomial,
    #[error("x divides the polynomial (zero constant term)")]
    XDividesG,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("search limit {0} exceeded")]
    LimitExceeded(u64),
    #[error("cycle cap {0} exceeded")]
    CapExceeded(u64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("prefix too short: need at least {needed} terms, got {found}")]
    InsufficientPrefix { needed: usize, found: usize },
    #[error("recurrence coefficient c_0 is not a unit")]
    NonUnitC0,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("closed forms exist only for degrees 1..=4, got {0}")]
    DegreeOutOfRange(usize),
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("element is not in this ring: {0}")]
    ForeignElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
