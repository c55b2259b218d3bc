use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource limit exceeded: {what} (cap {cap})")]
    ResourceLimit { what: &'static str, cap: usize },

    #[error("walk is not closed: starts at class {start}, ends at class {end}")]
    NotClosed { start: usize, end: usize },

    #[error("walk is not connected at step {step}")]
    BrokenWalk { step: usize },

    #[error("the origin is not an interior point of the polytope")]
    OriginNotInterior,

    #[error("point set spans an affine subspace of dimension {dim} < {ambient}")]
    LowerDimensional { dim: usize, ambient: usize },

    #[error("start vertex class {class} is not P-initial")]
    NotPInitial { class: usize },

    #[error("operation requires an undirected graph")]
    NotUndirected,

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("terms violate the recurrence of the denominator at index {index}")]
    RecurrenceViolation { index: usize },

    #[error("denominator does not divide (1 - t^{period})^k for k <= {max_power}")]
    PeriodIncompatible { period: usize, max_power: usize },

    #[error("quasi-polynomial degree exceeds the bound {bound}")]
    DegreeOverflow { bound: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("polytope is not a lattice polytope")]
    NotLatticePolytope,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
