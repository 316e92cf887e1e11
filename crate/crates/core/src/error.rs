use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("copy-count mismatch: expected {expected}, found {found}")]
    CopyMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("pair indices must differ (got {0} twice)")]
    EqualIndices(usize),

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error(
        "N = {0} is indistinguishable: f1 = -f2 differ only by a global phase, \
         so no scheme with any number of copies exists"
    )]
    Indistinguishable(usize),

    #[error("state is trivial: it discriminates no pair")]
    TrivialState,

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(String),

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("invalid weight profile: {0}")]
    InvalidProfile(String),

    #[error("{what} count {requested} exceeds the configured cap {cap}")]
    ResourceCap {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("unknown built-in scheme `{0}`")]
    UnknownBuiltin(String),

    #[error("classification is ambiguous: {matches} candidates match the output state")]
    AmbiguousClassification { matches: usize },

    #[error("no canonical block contains the state's discrimination graph")]
    NoCanonicalBlock,

    #[error("parse error: {0}")]
    Parse(String),
}
