//! Robust linear regression by penalised trimmed squares.
//!
//! The estimator deletes observation `i` from the fit only when keeping it
//! would cost more than its penalty `p_i`, fixed in advance from a robust scale
//! (LTS) and robust leverages (MCD). [`pts::fast_pts`] runs the randomized
//! search; [`pts::exact_pts`] enumerates every subset for small `n`.

pub mod data;
pub mod datagen;
pub mod error;
pub mod linalg;
pub mod pts;
pub mod rng;
pub mod robust;

pub use data::Dataset;
pub use error::{PtsError, Result};
pub use linalg::{Matrix, SubsetIndex};
pub use pts::{fast_pts, PtsConfig, PtsSolution};
