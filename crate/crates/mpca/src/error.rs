use thiserror::Error;

/// Errors produced by the analysis pipeline and the I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A column cannot be normalized (zero mean for mean-divide, zero
    /// standard deviation for z-score).
    #[error("degenerate column {column}: {reason}")]
    DegenerateColumn { column: usize, reason: String },

    /// The scale interval selects no pair of points.
    #[error("scale ({lower}, {upper}) selects no pairs")]
    EmptyScale { lower: f64, upper: f64 },

    #[error("step {step} yields no scale points")]
    EmptyGrid { step: f64 },

    /// Clustering needs at least two non-empty scale points.
    #[error("need at least {needed} non-empty scale points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    /// CSV or report parsing failure with a 1-based location.
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 usage, 3 parse, 4 empty scale,
    /// 5 insufficient points.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EmptyScale { .. } => 4,
            Error::InsufficientPoints { .. } => 5,
            Error::Parse { .. } | Error::Io(_) => 3,
            _ => 2,
        }
    }
}
