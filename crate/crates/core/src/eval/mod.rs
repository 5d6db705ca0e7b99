//! Effort, recall at effort, gain curves, recall tables and paired
//! comparisons between strategies.
//!
//! A run log records, after each judgment, the cumulative number of
//! judgments (`E_judge`) and sentences read (`E_sent`). Effort at a given
//! lambda blends the two; recall at effort `E` counts relevant documents in
//! the longest prefix of the log whose effort is at most `E`.

mod compare;
mod effort;
mod recall;

pub use compare::{
    compare_strategies, lambda_sweep, paired_recalls, write_comparisons_csv, ComparisonResult, SweepPoint,
};
pub use effort::{effort_lambda, parse_lambda_grid, EffortModel};
pub use recall::{
    gain_curve, recall_at_effort, recall_table, DatasetRuns, EffortLevel, GainCurve, RecallRow, RecallTable,
};
