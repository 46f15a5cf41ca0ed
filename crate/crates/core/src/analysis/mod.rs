//! Downstream analyses over span-core outputs and contact graphs.

pub mod anomaly;
pub mod null_model;
pub mod purity;
pub mod stats;

pub use anomaly::{
    detect_anomalies, detect_anomalies_with, outer_core, precision_recall, AnomalyParams,
    AnomalyReport, PrecisionRecall,
};
pub use null_model::reshuffle_timestamps;
pub use purity::{core_purity, purity_curve, AttributeTable, PurityCurve};
pub use stats::{activity_grid, stats_by_order, stats_by_span, GridCell, GroupStat};
