use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a usable field characteristic (need a prime below 2^31, or 0)")]
    InvalidCharacteristic(u32),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid edge {{{0}, {1}}}")]
    InvalidEdge(usize, usize),

    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),

    #[error("neighbour {vertex} of the leaf has degree {degree}, need at least 3")]
    DegreeTooSmall { vertex: usize, degree: usize },

    #[error("vertex {0} is not a cutpoint")]
    NotACutpoint(usize),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what} needs {vars} variables, cap is {cap}")]
    SizeCap {
        what: &'static str,
        vars: usize,
        cap: usize,
    },

    #[error("monomial ideal is not squarefree")]
    NotSquarefree,

    #[error("Betti table is incomplete: {0}")]
    IncompleteTable(String),

    #[error("Betti table has no unique extremal Betti number")]
    NoUniqueCorner,

    #[error("no closed form: {0}")]
    NoClosedForm(String),

    #[error("guard violated: {0}")]
    Guard(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
