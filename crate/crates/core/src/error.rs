use grassvar_poly::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: unknown arrow `{name}`")]
    UnknownArrow { line: usize, name: String },
    #[error("paths do not compose: {0}")]
    NotComposable(String),
    #[error("line {line}: relation terms are not parallel: {detail}")]
    NonParallel { line: usize, detail: String },
    #[error("line {line}: rule `{rule}` does not decrease in length-lex order")]
    NonReducingRule { line: usize, rule: String },
    #[error("skeleton is not closed under initial subpaths: `{0}` is missing a prefix")]
    ClosureViolation(String),
    #[error("skeleton path `{0}` does not start at its top's vertex")]
    BadTopPath(String),
    #[error("skeleton top elements must be z1..zt without gaps, found z{0}")]
    TopGap(usize),
    #[error("skeleton path `{path}` is longer than the Loewy bound {bound}")]
    TooLong { path: String, bound: usize },
    #[error("layer counts {found} do not match the declared sequence {expected}")]
    LayerMismatch { found: String, expected: String },
    #[error("dimension vectors differ: {0:?} vs {1:?}")]
    DimensionMismatch(Vec<usize>, Vec<usize>),
    #[error("invalid semisimple sequence: {0}")]
    BadSequence(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("skeleton is linearly dependent in the projective cover, so the variety is empty")]
    EmptyGrass,
    #[error("degenerate Grassmannian: {0}")]
    Degenerate(String),
    #[error("no value given for free variable {0}")]
    MissingFreeVariable(String),
    #[error("point verification failed: {0}")]
    VerificationFailed(String),
    #[error("generator uses variable {0} outside the reduced index set")]
    ForeignVariable(String),
    #[error("row construction error: {0}")]
    RowConstruction(String),
    #[error("missing job field: {0}")]
    MissingField(&'static str),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
