use thiserror::Error;

/// Failure of a command, classified by the exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Rejected flags or parameter combinations.
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] topotip::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0} self-test check(s) failed")]
    SelfTest(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "config" => 2,
            "input" => 3,
            _ => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        use topotip::Error as E;
        match self {
            CliError::Config(_) => "config",
            CliError::Core(E::InvalidParameter(_)) => "config",
            CliError::Core(E::Parse { .. } | E::Schema(_) | E::Shape(_) | E::Io(_) | E::Csv(_)) => {
                "input"
            }
            CliError::Json(_) => "input",
            CliError::Core(E::Numerical(_) | E::Integration { .. } | E::EmptyCouplingRow(_)) => {
                "numerical"
            }
            CliError::SelfTest(_) => "numerical",
        }
    }

    /// One-line JSON record for scripts.
    pub fn machine_line(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "code": self.exit_code(),
            "message": self.to_string(),
        })
        .to_string()
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
