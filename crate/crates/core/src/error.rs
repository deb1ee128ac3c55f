use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires dimension {expected}, input has {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDims(usize),

    #[error("{n} points cannot form a midpoint grid in {dims} dimensions")]
    GridSizeMismatch { n: usize, dims: usize },

    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exact discrepancy needs {required} steps, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("surrogate resolution must be at least 2, got {0}")]
    InvalidResolution(usize),

    #[error("kernel system is singular: {0}")]
    SingularSystem(String),

    #[error("unknown test function `{0}`")]
    UnknownFunction(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("budget {budget} is below the minimum {required} for {method}")]
    InsufficientBudget { method: String, budget: usize, required: usize },

    #[error("degenerate rate fit: {usable} usable rows, excluded zero-error budgets {excluded:?}")]
    DegenerateFit { usable: usize, excluded: Vec<usize> },

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("cell (method {method}, budget {budget}) failed: {source}")]
    Cell {
        method: String,
        budget: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
