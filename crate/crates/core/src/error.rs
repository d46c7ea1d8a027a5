use thiserror::Error;

/// Progress recorded when a Gröbner computation hits its pair budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetStats {
    pub pairs_reduced: usize,
    pub basis_size: usize,
    pub pairs_pending: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("characteristic {0} is neither 0 nor an admissible prime")]
    InvalidCharacteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structural mismatch: {0}")]
    Mismatch(String),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("exponent overflow above 2^31")]
    ExponentOverflow,
    #[error("rank {rank} out of range for type {kind}")]
    RankOutOfRange { kind: String, rank: usize },
    #[error("budget exceeded after {} pair reductions (basis size {}, {} pairs pending)",
        .0.pairs_reduced, .0.basis_size, .0.pairs_pending)]
    Budget(BudgetStats),
    #[error("search budget of {0} nodes exhausted")]
    SearchBudget(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl AlgebraError {
    pub fn is_budget(&self) -> bool {
        matches!(self, AlgebraError::Budget(_) | AlgebraError::SearchBudget(_))
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
