//! The gap engine: labeled points `(γ_im, i, m)` with
//! `γ_im ≡ (p_i/q)·{mα}_λ + k_i (mod P)`, their `≺`-order on the circle of
//! length `P`, the resulting gaps, and the `3c` bound with its rigid-interval
//! accounting.

mod config;
mod points;
mod rigid;

pub use config::{bound_3c, BoundData, GapConfig, SequenceSpec};
pub use points::{
    compute_gaps, distinct_values, gap_report, generate_points, point_value, sort_points, translation_check,
    verify_bound, GapReport, LabeledPoint,
};
pub use rigid::{
    classify_intervals, classify_report, finish_points, start_points, IntervalClassification, Rigidity,
    WitnessSet,
};
