//! Span-core decomposition of temporal graphs.
//!
//! A span-core `C_{k,Δ}` is the largest vertex set in which every member
//! keeps at least `k` neighbours through edges that exist at every
//! timestamp of the interval `Δ`. This crate computes every span-core
//! ([`span_cores`]), only the maximal ones ([`maximal_span_cores`]), their
//! baselines, and the downstream analyses in [`analysis`].

pub mod analysis;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod graph;
pub mod ingest;
pub mod io;
pub mod kernel;
pub mod maximal;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use decompose::{
    naive_span_cores, span_cores, span_cores_traced, DecompositionResult, RunMetrics, SpanCore,
    VisitedInterval,
};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeDiffs, Interval, LabelMap, TemporalGraph, Timestamp, VertexId};
pub use ingest::{ingest_contacts, read_contacts, Contact, IngestOptions, Ingested};
pub use kernel::{core_decomposition, innermost_core, CoreLabeling};
pub use maximal::{
    dominance_filter, dominates, maximal_span_cores, maximal_span_cores_traced,
    naive_maximal_span_cores, DegreeBuckets, MaximalStep, MaximalTrace,
};
