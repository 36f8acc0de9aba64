use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hypergraph parameters n={n}, m={m} (need n >= 4, m >= 1)")]
    InvalidSpec { n: u32, m: u32 },
    #[error("order n={0} is odd; only even orders admit quadrilateral embeddings")]
    OddOrder(u32),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("vertex {0} does not occur in the circuit")]
    VertexAbsent(u32),
    #[error("circuits live in different ambient graphs")]
    MismatchedAmbient,
    #[error("circuits must exclude distinct vertices (both exclude {0})")]
    SameExcluded(u32),
    #[error("not an embedding set: {0}")]
    NotAnEmbeddingSet(String),
    #[error("embedding is not quadrilateral: found a face of length {0}")]
    NotQuadrilateral(usize),
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("schemes are defined on different graphs")]
    GraphMismatch,
    #[error("malformed scheme: {0}")]
    MalformedScheme(String),
    #[error("no transition through {through} common to both circuits excluding {excluded}")]
    NoCommonTransition { excluded: u32, through: u32 },
    #[error("could not assign parallel copies consistently (search budget exhausted or no gluing exists)")]
    GluingNotFound,
    #[error("isomorphism search limited to n <= {bound}, got n={n}")]
    BoundExceeded { n: u32, bound: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
