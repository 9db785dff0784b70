use thiserror::Error;

/// Every failure mode surfaced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("root iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("degree {degree} exceeds the supported limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("number field elements belong to different fields")]
    FieldMismatch,
    #[error("zero element is not invertible")]
    NotInvertible,
    #[error("field polynomial is reducible")]
    ReduciblePoly,
    #[error("certified root disks are too coarse to decide: {0}")]
    Indeterminate(String),
    #[error("conjugate is real")]
    RealConjugate,
    #[error("not a Perron number")]
    NotPerron,
    #[error("not a unit (constant term must be +-1)")]
    NotUnit,
    #[error("no real root greater than one")]
    NoDominantRealRoot,
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(String),
    #[error("claim violated: {claim}: {detail}")]
    ClaimViolated { claim: String, detail: String },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("polynomial is not quadratic")]
    NotQuadratic,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("eigenvector system is degenerate: {0}")]
    SingularSystem(String),
    #[error("field polynomial has no non-real conjugate at the requested index")]
    NoComplexConjugate,
    #[error("degenerate projection: {0}")]
    DegenerateProjection(String),
    #[error("too few points for a non-degenerate polygon")]
    TooFewPoints,
    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),
    #[error("polygon is not invariant under the multiplier: {0}")]
    NotInvariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
