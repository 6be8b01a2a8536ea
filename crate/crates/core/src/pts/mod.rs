//! The PTS estimator: penalties, the combinatorial objective, Fast-PTS and an
//! exhaustive oracle.

pub mod config;
pub mod construct;
pub mod exact;
pub mod fast;
pub mod local_search;
pub mod objective;
pub mod penalties;
pub mod reinclude;
mod solution;

pub use config::PtsConfig;
pub use construct::{construct, construct_detailed, Construction};
pub use exact::{exact_pts, EXACT_PTS_BUDGET};
pub use fast::{fast_pts, fast_pts_detailed, fast_pts_search, FastPtsResult, SearchResult};
pub use local_search::{local_search, local_search_detailed, LocalSearchOutcome, SearchStatus};
pub use objective::{check_optimality, is_penalty_free, objective, objective_from_fit, OptimalityCheck};
pub use penalties::{compute_penalties, compute_penalties_detailed, penalty, PenaltyVector, RobustInit};
pub use reinclude::{reinclude, studentized_predicted_residual};
pub use solution::PtsSolution;
