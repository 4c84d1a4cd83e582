use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order {q} exceeds the table limit {limit}")]
    FieldTooLarge { q: u128, limit: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} is even; only odd characteristic is supported")]
    EvenOrder(u64),
    #[error("k = {k} does not divide q - 1 = {}", q - 1)]
    KDoesNotDivide { k: u64, q: u64 },
    #[error("zero has no inverse")]
    InverseOfZero,
    #[error("operation undefined at zero")]
    ZeroElement,
    #[error("element is not a generator of the multiplicative group")]
    NotAGenerator,
    #[error("coefficient {coeff} out of range for p = {p}")]
    BadCoefficient { coeff: u64, p: u64 },
    #[error("character value leaves the roots of unity of order {order}")]
    CharacterOrder { order: u64 },
    #[error("root order {order} does not divide q - 1 = {group}")]
    RootOrder { order: u64, group: u64 },
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("{t} is not coprime to {n}")]
    NotCoprime { t: i64, n: usize },
    #[error("(q, k) = ({q}, {k}) belongs to branch {found}, not {expected}")]
    BranchMismatch {
        q: u64,
        k: u64,
        expected: &'static str,
        found: &'static str,
    },
    #[error("tuple is not palindromic")]
    NotPalindromic,
    #[error("dimension {0} must be odd")]
    EvenDimension(usize),
    #[error("determinant of M0 + t*J is not linear in t")]
    InterpolationGuard,
    #[error("matrix dimensions do not match")]
    Shape,
    #[error("{0}")]
    InvalidArgument(String),
}
