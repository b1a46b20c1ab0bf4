use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("near-concatenation requires nonempty operands")]
    EmptyNearConcat,
    #[error("index {index} out of range for composition of weight {weight}")]
    IndexOutOfRange { index: usize, weight: usize },
    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: usize, found: usize },
    #[error("size must be nonnegative, got {0}")]
    NegativeSize(i64),
    #[error("ground set of size {size} exceeds the brute-force bound {bound}")]
    BruteForceBound { size: usize, bound: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("labels are not a subset of the ground set")]
    NotASubset,
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("ground sets overlap on label {0:?}")]
    OverlappingGrounds(String),
    #[error("relabeling is not a bijection on the ground set")]
    NotABijection,
    #[error("blocks do not form an ordered set partition of the ground set")]
    NotAPartition,
    #[error("{0:?} is not a generator: single-part compositions other than (1) are products of (1)")]
    NotAGenerator(Vec<usize>),
    #[error("non-invertible series: constant coefficient is zero")]
    NonInvertible,
    #[error("truncation degrees differ: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("series is not in the subgroup G")]
    NotInGroup,
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("invalid input: {0}")]
    Schema(String),
}
