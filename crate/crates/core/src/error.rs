use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("diagonal entry ({index},{index}) is nonzero")]
    NonzeroDiagonal { index: usize },

    #[error("entries ({i},{j}) and ({j},{i}) admit no positive symmetrizer")]
    NotSkewSymmetrizable { i: usize, j: usize },

    #[error("symmetrizer rejected: {0}")]
    InvalidSymmetrizer(String),

    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("index {index} is not mutable ({n} mutable vertices)")]
    FrozenIndex { index: usize, n: usize },

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("integer overflow during mutation")]
    Overflow,

    #[error("expected {expected} frozen row(s), found {found}")]
    FrozenRowCount { expected: usize, found: usize },

    #[error("search caps reached before a decision")]
    CapsExceeded,

    #[error("triangulation line {line}: {message}")]
    TriangulationParse { line: usize, message: String },

    #[error("triangle {triangle} is self-folded")]
    SelfFoldedTriangle { triangle: usize },

    #[error("arc {label} is glued inconsistently: {reason}")]
    InvalidGluing { label: u32, reason: String },

    #[error("surface has no boundary component")]
    NoBoundary,

    #[error("surface excluded from the standard construction: {0}")]
    ExcludedSmallCase(String),

    #[error("block {block} contains adjacent indices {a} and {b}")]
    CommutationFailure { block: usize, a: usize, b: usize },

    #[error("coefficient vector has length {found}, quiver has {expected} vertices")]
    IndexMismatch { expected: usize, found: usize },

    #[error("column {column} of block ({i},{j}) does not sum to the base entry")]
    Condition1Violated { i: usize, j: usize, column: usize },

    #[error("block ({i},{j}) has negative entry {entry} over a nonnegative base entry")]
    Condition2Violated { i: usize, j: usize, entry: i64 },

    #[error("frozen entries over block {block} do not repeat the base coefficient")]
    FrozenBlockMismatch { block: usize },
}

impl Error {
    /// Variant name, as reported by the command-line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonzeroDiagonal { .. } => "NonzeroDiagonal",
            Error::NotSkewSymmetrizable { .. } => "NotSkewSymmetrizable",
            Error::InvalidSymmetrizer(_) => "InvalidSymmetrizer",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::FrozenIndex { .. } => "FrozenIndex",
            Error::EmptySubset => "EmptySubset",
            Error::Overflow => "Overflow",
            Error::FrozenRowCount { .. } => "FrozenRowCount",
            Error::CapsExceeded => "CapsExceeded",
            Error::TriangulationParse { .. } => "TriangulationParse",
            Error::SelfFoldedTriangle { .. } => "SelfFoldedTriangle",
            Error::InvalidGluing { .. } => "InvalidGluing",
            Error::NoBoundary => "NoBoundary",
            Error::ExcludedSmallCase(_) => "ExcludedSmallCase",
            Error::CommutationFailure { .. } => "CommutationFailure",
            Error::IndexMismatch { .. } => "IndexMismatch",
            Error::Condition1Violated { .. } => "Condition1Violated",
            Error::Condition2Violated { .. } => "Condition2Violated",
            Error::FrozenBlockMismatch { .. } => "FrozenBlockMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
