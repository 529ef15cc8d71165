//! Reading and writing trees, morphisms and subobjects, the verification
//! suites, and the `omega` command line.

pub mod cli;
pub mod format;
pub mod input;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] omega_core::Error),
    #[error("unknown suite `{given}`; known suites: {known}")]
    UnknownSuite { given: String, known: String },
    #[error("{what} {given} is above the limit of {limit} for suite `{suite}`")]
    BoundsTooLarge { suite: String, what: &'static str, given: usize, limit: usize },
    #[error("format `{format}` is not supported for {object}")]
    UnsupportedFormat { format: &'static str, object: String },
    #[error("{0}")]
    Input(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
