use sparsemult_core::Error as CoreError;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const CONDITION: i32 = 3;
    pub const MISMATCH: i32 = 4;
    pub const BREACH: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Condition(CoreError),
    #[error("internal invariant breach: {0}")]
    Breach(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Condition(_) => exit::CONDITION,
            CliError::Breach(_) => exit::BREACH,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ConditionFailed { .. } => CliError::Condition(e),
            CoreError::EmptyPointSet
            | CoreError::DimensionMismatch { .. }
            | CoreError::FamilySize { .. }
            | CoreError::IndexOutOfRange { .. }
            | CoreError::InvalidArgument(_) => CliError::Input(e.to_string()),
            other => CliError::Breach(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
