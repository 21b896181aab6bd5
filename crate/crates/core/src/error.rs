use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table is not total, references an unknown id, or violates the
    /// group/field structure it is meant to carry.
    #[error("malformed structure: {0}")]
    Structure(String),

    /// A value outside its admissible range (grades, thresholds, ids).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("operands live over different hypervector spaces")]
    SpaceMismatch,

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    /// An operation's precondition does not hold for its input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural hypothesis (sld, invertible, ...) does not hold, so the
    /// characterization it supports cannot be certified.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("capacity exceeded: {what} is {size}, limit is {limit}")]
    Capacity {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    /// The shell construction found no element attaining every parameter's
    /// sup/inf at once.
    #[error("generated bfs-hvs construction stuck at step {step}: {detail}")]
    ConstructionStuck { step: usize, detail: String },

    #[error("division hypothesis violated for parameter `{param}`: {detail}")]
    DivisionHypothesis { param: String, detail: String },

    /// The brute-force search found no unique minimum.
    #[error("oracle failure: {0}")]
    Oracle(String),
}
