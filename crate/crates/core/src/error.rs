use thiserror::Error;

/// Errors produced by the estimation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PtsError {
    #[error("design restricted to the subset has rank {rank} < {cols}")]
    RankDeficient { rank: usize, cols: usize },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("reweighting kept {kept} observations, not more than p = {p}")]
    DegenerateWeights { kept: usize, p: usize },

    #[error("every MCD start collapsed to a singular scatter matrix")]
    SingularScatter,

    #[error("enumeration needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("unknown benchmark dataset `{0}`")]
    UnknownName(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("every Fast-PTS iteration was infeasible")]
    AllInfeasible,
}

pub type Result<T> = std::result::Result<T, PtsError>;
