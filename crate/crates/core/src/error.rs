//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. Each variant maps to a stable
//! machine-readable category (see [`Error::category`]) that the CLI prints on
//! stderr and turns into a process exit code.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bit-mask vertex sets support at most 128 vertices.
    #[error("universe size {n} exceeds the dense-representation cap of {cap}")]
    UniverseTooLarge { n: u32, cap: u32 },

    /// Universe size must be at least 1 (hypergraphs) or 2 (sampling/counting instances).
    #[error("universe size {n} is too small; at least {min} vertices required")]
    UniverseTooSmall { n: u32, min: u32 },

    #[error("vertex sets live in different universes ({left} vs {right})")]
    UniverseMismatch { left: u32, right: u32 },

    #[error("vertex index {v} out of range for universe of size {n}")]
    VertexOutOfRange { v: u32, n: u32 },

    /// Hyperedge sides must be non-empty.
    #[error("hyperedge side is empty; both sides must contain at least one vertex")]
    EmptySide,

    /// Hyperedge sides must be disjoint.
    #[error("hyperedge sides overlap; educt and product sets must be disjoint")]
    OverlappingSides,

    #[error("edge size {s} out of range [2, {n}]")]
    SizeOutOfRange { s: u32, n: u32 },

    #[error(
        "edge index {index} out of range for (n={n}, s={s}); {count} edges of that size exist"
    )]
    IndexOutOfRange {
        n: u32,
        s: u32,
        index: String,
        count: String,
    },

    #[error("probability {p} outside [0, 1]")]
    InvalidProbability { p: f64 },

    #[error("probability family (alpha={alpha}, beta={beta}) is invalid: {reason}")]
    InvalidFamily {
        alpha: f64,
        beta: f64,
        reason: String,
    },

    /// A request would exceed a documented resource guard.
    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("no sign change found in bracket [{lo}, {hi}]; the equation has no root there")]
    NoRoot { lo: f64, hi: f64 },

    #[error("hypergraph has no edges; the diagnostic requires at least one")]
    NoEdges,

    /// Reaction-file syntax error with 1-based line and column.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Educts and products overlap and the autocatalytic policy is Reject.
    #[error("line {line}: educts and products share {{{shared}}}; autocatalytic reactions are rejected under this policy (use the split policy to decompose them)")]
    AutocatalyticRejected { line: usize, shared: String },

    #[error("a reaction side equals the full substance set; hypervertices must be proper subsets")]
    FullSideSet,

    #[error("no reaction records; cannot build a hypergraph over an empty universe")]
    EmptyInput,

    /// Malformed hypergraph JSON document.
    #[error("invalid hypergraph document: {0}")]
    Document(String),

    /// Invalid run configuration discovered after argument parsing (e.g. a
    /// malformed seed environment variable).
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable machine-readable category for scripting against the CLI.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Document(_) | Error::Json(_) | Error::Csv(_) => "format",
            Error::Io(_) => "io",
            Error::ResourceLimit(_) => "resource",
            Error::NoRoot { .. } => "no-root",
            Error::AutocatalyticRejected { .. } | Error::EmptyInput | Error::FullSideSet => {
                "reaction"
            }
            Error::Config(_) => "config",
            _ => "domain",
        }
    }

    /// Process exit code the CLI uses for this category (0 is success, 2 is usage).
    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "parse" => 3,
            "format" => 4,
            "io" => 5,
            "resource" => 6,
            "no-root" => 7,
            "reaction" => 8,
            "config" => 10,
            _ => 9,
        }
    }
}
