use thiserror::Error;

pub type Result<T> = std::result::Result<T, DqpError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DqpError {
    /// Input violates a precondition. The message names the violated constraint.
    #[error("{0}")]
    InvalidInput(String),

    /// Exhaustive enumeration would exceed the configured budget.
    #[error("enumeration needs {required} evaluations but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// Two routes that must agree did not. Always a bug.
    #[error("internal check failed: {0}")]
    InternalCheck(String),
}

impl DqpError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        DqpError::InvalidInput(msg.into())
    }
}
