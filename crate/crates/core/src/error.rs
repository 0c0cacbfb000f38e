use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("arity mismatch: expected {expected} points, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for {what}")]
    IndexOutOfRange { index: usize, what: String },

    #[error("morphism is not square: {src} -> {dst}")]
    NonSquare { src: usize, dst: usize },

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("quantum integer [{0}] vanishes")]
    VanishingQuantumInt(u32),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("loop vectors have different base vertices")]
    BaseMismatch,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("{what} {requested} exceeds the cap {cap}; pass --unsafe-large to override")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid group or cocycle: {0}")]
    Group(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
