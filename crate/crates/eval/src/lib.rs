//! Evaluation metrics and experiments: overestimation and average
//! heuristic over a PDB's abstract space, size/compression accounting,
//! and the empirical generalization-gap study on the 8-puzzle.

pub mod gap;
pub mod metrics;
pub mod report;

pub use gap::{generalization_gap, psi_table, GapCurve};
pub use metrics::{net_metrics, EvalError, NetMetrics};
pub use report::{size_accounting, EvalReport, SizeReport};
