use std::path::PathBuf;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix is rank deficient: sigma_min = {sigma_min:e}, sigma_max = {sigma_max:e}")]
    RankDeficient { sigma_min: f64, sigma_max: f64 },

    #[error("compressed pair lost rank: l1 + l2 = {l1} + {l2} < n = {n}")]
    CompressedRankDeficient { l1: usize, l2: usize, n: usize },

    #[error("SVD did not converge for a {rows}x{cols} matrix")]
    SvdNoConvergence { rows: usize, cols: usize },

    #[error("ill-conditioned GSVD recovery: diagonal entry {value:e} at index {index} is below {tol:e} but not classified zero")]
    IllConditionedRecovery { index: usize, value: f64, tol: f64 },

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("infeasible synthetic configuration: {0}")]
    InfeasibleSynth(String),

    #[error("parse error in {path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable category, used by the CLI for exit codes.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Dimension(_) | Error::NonFinite { .. } | Error::InvalidConfig(_) => "input",
            Error::InfeasibleSynth(_) => "input",
            Error::RankDeficient { .. }
            | Error::CompressedRankDeficient { .. }
            | Error::SvdNoConvergence { .. }
            | Error::IllConditionedRecovery { .. }
            | Error::DegenerateSpectrum(_) => "numerical",
            Error::Parse { .. } | Error::Json(_) => "parse",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
