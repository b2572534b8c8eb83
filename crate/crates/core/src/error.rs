use thiserror::Error;

/// Errors raised by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A row of an input table could not be parsed.
    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },

    /// Input is well-formed but violates the expected schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Matrix or vector shapes disagree.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A numerical routine produced non-finite values.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The particle integrator blew up.
    #[error("integration diverged at step {step} (t = {time})")]
    Integration { step: usize, time: f64 },

    /// A coupling row carried no mass, so no match could be extracted.
    #[error("coupling row {0} has no mass")]
    EmptyCouplingRow(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
