//! Benchmark datasets, simulation designs and evaluation metrics.

pub mod benchmarks;
pub mod eval;
pub mod sim;

pub use benchmarks::{all_benchmarks, load_benchmark, BenchmarkCase, BENCHMARK_NAMES};
pub use eval::{coef_stats, contamination_vector, eval_run, missed_any, summarize, CoefStats, RunEval, SimSummary};
pub use sim::{gen_barrera_yohai, gen_mixed_contamination, MixedSpec, SimSample, SimSpec, MIXED_BETA};
