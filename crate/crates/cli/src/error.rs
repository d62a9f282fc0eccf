use std::io;
use std::path::PathBuf;

use dqp_core::DqpError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("refusing to enumerate: {required} evaluations exceed the budget of {budget} (raise --budget or DQP_BUDGET)")]
    Budget { required: u128, budget: u128 },

    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget { .. } => 3,
            CliError::Internal(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<DqpError> for CliError {
    fn from(e: DqpError) -> Self {
        match e {
            DqpError::InvalidInput(msg) => CliError::Validation(msg),
            DqpError::BudgetExceeded { required, budget } => CliError::Budget { required, budget },
            DqpError::InternalCheck(msg) => CliError::Internal(msg),
        }
    }
}
