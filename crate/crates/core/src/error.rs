use thiserror::Error;

/// Errors raised by the algebra routines and the certificate pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need an odd prime >= 3)")]
    UnsupportedCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("extension degree {0} exceeds the supported maximum {1}")]
    DegreeTooLarge(usize, usize),
    #[error("field of order {p}^{k} is too large for 64-bit element indexing")]
    FieldTooLarge { p: u64, k: usize },
    #[error("modulus is not monic of the stated degree")]
    MalformedModulus,
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("element has {got} coefficients, expected {expected}")]
    ElementLength { got: usize, expected: usize },
    #[error("coefficient {value} is out of range for F_{p}")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no embedding of F_{p}^{from} into F_{p}^{into}")]
    NoEmbedding { p: u64, from: usize, into: usize },
    #[error("polynomial must be squarefree")]
    NotSquarefree,
    #[error("expected a polynomial of degree {expected}, got {got:?}")]
    WrongDegree { expected: &'static str, got: Option<usize> },
    #[error("a must not be 0 or 1")]
    DegenerateLegendreParameter,
    #[error("curve y^2 = x^3 + Ax + B is singular")]
    SingularCurve,
    #[error("curve y^2 = x^3 + Ax + B is not supersingular")]
    NotSupersingular,
    #[error("u must be nonzero")]
    ZeroScale,
    #[error("H_p has an irreducible factor of degree {0} over F_p; expected all roots in F_p^2")]
    SplittingViolation(usize),
    #[error("variable {0} is unbound in a full evaluation")]
    UnboundVariable(char),
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(char),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("exponent overflow: exponents are limited to {0} bits per variable")]
    ExponentOverflow(u32),
    #[error("division is not exact")]
    InexactDivision,
    #[error("prime {p} exceeds the symbolic cap {cap}")]
    SymbolicCapExceeded { p: u64, cap: u64 },
    #[error("strategy `{0}` cannot handle this family")]
    UnsupportedStrategy(&'static str),
    #[error("internal inconsistency: {0}")]
    Inconsistent(&'static str),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
