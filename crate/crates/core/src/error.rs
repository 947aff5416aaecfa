use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set labels must be strictly increasing positive integers: {0}")]
    InvalidGroundSet(String),

    #[error("ground set of size {0} exceeds the single-word capacity of {max}", max = crate::subset::MAX_GROUND)]
    GroundTooLarge(usize),

    #[error("subset bits {bits:#x} do not fit a ground set of size {size}")]
    SubsetOutOfGround { bits: u64, size: usize },

    #[error("label {0} is not in the ground set")]
    LabelNotInGround(u32),

    #[error("operands live on different ground sets")]
    GroundMismatch,

    #[error("rank {rank} is out of range for a ground set of size {size}")]
    RankOutOfRange { rank: u64, size: usize },

    #[error("initial segment length {m} exceeds 2^{size}")]
    SegmentOutOfRange { m: u64, size: usize },

    #[error("family contains a duplicate member {0}")]
    DuplicateMember(String),

    #[error("parameters (n={n}, p={p}) are outside the range where the formula is claimed: {reason}")]
    OutOfRange { n: u32, p: u32, reason: &'static str },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("request is infeasible: {0}")]
    Infeasible(String),

    #[error("vertex {vertex} is out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: u64, count: u64 },

    #[error("color {color} is outside [0, {k})")]
    ColorOutOfRange { color: u32, k: u32 },

    #[error("color class {0} is empty")]
    EmptyColorClass(u32),

    #[error("coloring covers {got} vertices but the graph has {expected}")]
    ColoringSizeMismatch { got: usize, expected: u64 },

    #[error("graph parameters are invalid: {0}")]
    InvalidGraph(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed object contradicts a theorem the library relies on.
    #[error("integrity failure: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
