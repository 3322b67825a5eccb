use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("no {d}-regular graph on {n} vertices: {reason}")]
    InvalidRegularParams { n: usize, d: usize, reason: &'static str },

    #[error("input graph is not regular")]
    NotRegular,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown pattern or family `{0}` (supported: C<k>, K<a>,<b>, Q3, ranges like C3-C5, `+`-separated lists)")]
    UnknownFamily(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("no template construction available for family {0}")]
    NoConstruction(String),

    #[error("template construction degenerated: {0}")]
    Degenerate(String),

    #[error("template verification failed: {0}")]
    TemplateVerification(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("vertex {0} is uncolored")]
    Uncolored(usize),

    #[error("pattern has {0} vertices; the search is capped at {1}")]
    PatternTooLarge(usize, usize),

    #[error("phase II did not terminate within {cap} iterations")]
    IterationCap { cap: usize },

    #[error("retries exhausted after {attempts} attempts: {reason}")]
    RetriesExhausted { attempts: usize, reason: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for this error: 1 algorithmic failure, 2 user or
    /// configuration error, 3 internal verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RetriesExhausted { .. } | Error::IterationCap { .. } => 1,
            Error::TemplateVerification(_) | Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

macro_rules! ensure_invariant {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_invariant;
