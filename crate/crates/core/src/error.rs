use thiserror::Error;

/// Error taxonomy shared by the kernel, the constructions and the probes.
///
/// Variants are deliberately coarse: callers branch on the kind, messages
/// carry the specifics.
#[derive(Debug, Error)]
pub enum WorkbenchError {
    /// A constructor argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Structurally valid input that violates an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation that requires a nonempty set was given an empty one.
    #[error("infeasible set: {0}")]
    Infeasible(String),

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A membership search box does not cover the candidate region the
    /// construction requires for a sound answer.
    #[error("search box too small: {0}")]
    SearchBoxTooSmall(String),

    /// The construction cannot certify a closed-form slice at this index and
    /// refuses instead of guessing.
    #[error("uncertified slice: {0}")]
    UncertifiedSlice(String),

    /// A condition the implementation believes impossible; reaching it is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}
