use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("field order {order} exceeds the configured bound {bound}")]
    FieldTooLarge { order: u128, bound: u128 },
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("cannot parse element `{0}`")]
    Parse(String),
    #[error("element does not lie in the base field")]
    NotInBaseField,
    #[error("twist element must lie outside the base field")]
    TwistInBaseField,
    #[error("eta must be nonzero")]
    ZeroEta,
    #[error("mu must be nonzero for this operation")]
    ZeroMu,
    #[error("sigma must be a nontrivial automorphism")]
    TrivialSigma,
    #[error("operands belong to different towers")]
    TowerMismatch,
    #[error("degree {0} is composite; the counting formula requires prime degree")]
    CompositeDegree(u32),
    #[error("search space of size {order} exceeds the bound {bound}")]
    SearchTooLarge { order: u128, bound: u128 },
    #[error("maps do not form a group: {0}")]
    NotAGroup(String),
    #[error("class-count formula is not integral at q={q}, r={r}")]
    NonIntegerCount { q: u64, r: u32 },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("monomial index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: u32 },
    #[error("generators do not span the algebra")]
    GeneratorsDoNotSpan,
    #[error("operation is not defined for the {0} construction")]
    WrongFamily(&'static str),
}
