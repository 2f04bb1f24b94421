use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("item {item} is outside the ground set of {m} items")]
    ItemOutOfRange { item: usize, m: usize },

    #[error("item set {bits:#x} has bits outside the ground set of {m} items")]
    SetOutOfRange { bits: u64, m: usize },

    #[error("invalid utility: {0}")]
    InvalidUtility(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("{what} requires {required} evaluations, over the budget of {budget}")]
    BudgetExceeded { what: String, required: u128, budget: u128 },

    #[error("{0} items exceed the dense table cap of {cap}", cap = crate::utility::MAX_TABLE_ITEMS)]
    TableCap(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
