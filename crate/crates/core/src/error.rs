use thiserror::Error;

/// Coarse classification used by callers that map errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    MalformedInput,
    UnsupportedInput,
    BudgetExceeded,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex {0:?} contains a duplicate vertex")]
    DuplicateVertex(Vec<usize>),
    #[error("empty simplex in input")]
    EmptySimplex,
    #[error("vertex {vertex} is below vertex_count {vertex_count} but lies in no simplex")]
    PhantomVertex { vertex: usize, vertex_count: usize },
    #[error("vertex {vertex} is out of range for vertex_count {vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("simplex {0:?} is missing a face; complex is not face-closed")]
    NotFaceClosed(Vec<usize>),
    #[error("vertex map has length {got}, expected {expected}")]
    MapLengthMismatch { got: usize, expected: usize },
    #[error("map sends simplex {simplex:?} to {image:?}, which is not a simplex of the target")]
    NotSimplicial { simplex: Vec<usize>, image: Vec<usize> },
    #[error("map names {got:?} do not match complexes {expected:?}")]
    MapNameMismatch {
        got: (String, String),
        expected: (String, String),
    },
    #[error("vertex map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("complex {0} is not connected")]
    Disconnected(String),
    #[error("complex {0} is empty")]
    EmptyComplex(String),
    #[error("cover references complex {got:?}, expected {expected:?}")]
    CoverNameMismatch { got: String, expected: String },
    #[error("cover piece {piece} is empty")]
    EmptyPiece { piece: usize },
    #[error("cover pieces miss vertex {vertex}")]
    NotCovering { vertex: usize },
    #[error("cover pieces overlap at vertex {vertex} but partition flag is set")]
    NotAPartition { vertex: usize },
    #[error("word letter {letter} is out of range for {generators} generators")]
    BadLetter { letter: i32, generators: usize },
    #[error("relator is not freely reduced at position {0}")]
    NotReduced(usize),
    #[error("rate {0} is not strictly positive")]
    NegativeRate(String),
    #[error("base pieces {0:?} meet every layer interface; no trivialization exists")]
    NoTrivialization(Vec<usize>),
    #[error("bundle kind {0} does not support this operation")]
    UnsupportedBundleKind(String),
    #[error("target dimension {target_dim} exceeds requested fibre dimension cap {cap}")]
    DimensionGate { target_dim: usize, cap: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown name {0:?} in workspace")]
    UnknownName(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            BudgetExceeded(_) => ErrorCategory::BudgetExceeded,
            NotAnAutomorphism(_) | Disconnected(_) | EmptyComplex(_) | NoTrivialization(_)
            | UnsupportedBundleKind(_) | DimensionGate { .. } | Unsupported(_) => {
                ErrorCategory::UnsupportedInput
            }
            _ => ErrorCategory::MalformedInput,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
