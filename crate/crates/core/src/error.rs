use thiserror::Error;

/// Errors raised by the library surface.
///
/// Verification failures are not errors: they are reported as data inside a
/// [`crate::verify::Verdict`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed ground-set document: {0}")]
    Malformed(String),
    #[error("negative coordinate {value} in point {index}")]
    NegativeCoordinate { index: usize, value: i64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point list")]
    EmptyPointList,
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("points are not affinely independent")]
    AffinelyDependent,
    #[error("coefficients must be keyed exactly by the circuit support")]
    CoefficientKeys,
    #[error("coefficient at {0} is not strictly positive")]
    NonPositiveCoefficient(String),
    #[error("cannot compare a power product against the negative number {0}")]
    NegativeComparand(String),
    #[error("keep-set not reachable: stripping stalled with {remaining} points left")]
    KeepSetNotReachable { remaining: usize },
    #[error("keep-set is not contained in the initial point set")]
    KeepSetOutsideInitial,
    #[error("ray is not in the extreme-ray catalog of the ground set")]
    RayNotInCatalog,
    #[error("ray is not exposed; no exposing functional exists")]
    RayNotExposed,
    #[error("only canonical coefficients (c = lambda) are supported for circuit-ray certificates")]
    NonCanonicalCoefficients,
    #[error("invalid unexposedness witness: {0}")]
    InvalidWitness(String),
    #[error("polynomial support escapes the ground set at {0}")]
    SupportOutsideGroundSet(String),
    #[error("exact evaluation too large to expand ({bits} bits)")]
    EvaluationTooLarge { bits: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
