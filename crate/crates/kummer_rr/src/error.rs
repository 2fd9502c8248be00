use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants carry enough context to name the failing stage, clause or witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{value} is not prime ({clause})")]
    NotPrime { value: u64, clause: &'static str },
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("precision ceiling exceeded: {0}")]
    Precision(String),
    #[error("seed data schema error: {0}")]
    Schema(String),
    #[error("certification refuted: {check} (row {row}, {})", describe_witness(.witness))]
    Refuted {
        check: String,
        row: usize,
        witness: u64,
    },
    #[error("linear system infeasible: {0}")]
    Infeasible(String),
    #[error("uniqueness violated in {stage}: {found} candidates")]
    Uniqueness { stage: &'static str, found: usize },
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

/// Witness `0` marks an exact check that needs no auxiliary prime.
fn describe_witness(witness: &u64) -> String {
    if *witness == 0 {
        "exact check".into()
    } else {
        format!("witness prime {witness}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wraps `self` with the name of the pipeline stage that produced it.
    pub fn at(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
