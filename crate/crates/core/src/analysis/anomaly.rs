//! Contact-log cleaning driven by anomalously long maximal span-cores.
//!
//! 1. `I` collects the spans of maximal cores longer than `tr` timestamps.
//! 2. At each `t`, the vertices of `C_{1,Δ}` for every `Δ ∈ I` containing
//!    `t` are anomalous.
//! 3. Contacts at `t` with an anomalous endpoint are removed.
//! 4. Optionally, a timestamp whose original/filtered contact ratio exceeds
//!    a threshold is dropped entirely.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::decompose::DecompositionResult;
use crate::error::{Error, Result};
use crate::graph::{Edge, Interval, TemporalGraph, Timestamp, VertexId};
use crate::kernel::core_decomposition;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnomalyParams {
    /// Spans strictly longer than this many timestamps are anomalous.
    pub tr: u32,
    /// Activity-ratio threshold for dropping whole timestamps.
    pub ratio: Option<f64>,
}

impl AnomalyParams {
    pub fn validate(&self) -> Result<()> {
        if self.tr < 1 {
            return Err(Error::InvalidParameter("tr must be at least 1".into()));
        }
        if let Some(r) = self.ratio {
            if r.is_nan() || r <= 0.0 {
                return Err(Error::InvalidParameter("ratio must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnomalyReport {
    pub anomalous_intervals: Vec<Interval>,
    /// Indexed by timestamp; sorted vertex ids.
    pub anomalous_vertices_by_time: Vec<Vec<VertexId>>,
    /// Contacts removed by the vertex filter, per timestamp.
    pub removed_contacts: Vec<usize>,
    pub dropped_timestamps: Vec<Timestamp>,
    pub surviving: TemporalGraph,
}

impl AnomalyReport {
    pub fn total_removed(&self) -> usize {
        self.removed_contacts.iter().sum()
    }
}

/// `C_{1,Δ}`, computed from scratch on `(V, E_Δ)`.
pub fn outer_core(g: &TemporalGraph, span: Interval) -> Vec<VertexId> {
    let all: Vec<VertexId> = g.vertices().collect();
    core_decomposition(&all, &g.edges_in_interval(span)).core(1)
}

pub fn detect_anomalies(
    g: &TemporalGraph,
    maximal: &DecompositionResult,
    params: AnomalyParams,
) -> Result<AnomalyReport> {
    detect_anomalies_with(g, maximal, |span| outer_core(g, span), params)
}

/// As [`detect_anomalies`], resolving `C_{1,Δ}` through `span_cores_of`.
pub fn detect_anomalies_with(
    g: &TemporalGraph,
    maximal: &DecompositionResult,
    mut span_cores_of: impl FnMut(Interval) -> Vec<VertexId>,
    params: AnomalyParams,
) -> Result<AnomalyReport> {
    params.validate()?;
    let slots = g.timestamp_count();

    let intervals: Vec<Interval> = maximal
        .cores
        .iter()
        .map(|c| c.span)
        .filter(|s| s.len() > params.tr)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut flagged: Vec<HashSet<VertexId>> = vec![HashSet::new(); slots];
    for &span in &intervals {
        let members = span_cores_of(span);
        for t in span.timestamps() {
            flagged[t as usize].extend(members.iter().copied());
        }
    }

    let mut removed_contacts = vec![0; slots];
    let mut kept: Vec<Vec<Edge>> = Vec::with_capacity(slots);
    for t in 0..=g.t_max() {
        let bad = &flagged[t as usize];
        let survivors: Vec<Edge> = g
            .edges_at(t)
            .iter()
            .copied()
            .filter(|e| !bad.contains(&e.low()) && !bad.contains(&e.high()))
            .collect();
        removed_contacts[t as usize] = g.edges_at(t).len() - survivors.len();
        kept.push(survivors);
    }

    let mut dropped_timestamps = Vec::new();
    if let Some(threshold) = params.ratio {
        for t in 0..=g.t_max() {
            let original = g.edges_at(t).len();
            let filtered = kept[t as usize].len();
            // filtered == 0 counts as an infinite ratio; an idle timestamp
            // (original == 0) is never dropped.
            let anomalous = original > 0
                && (filtered == 0 || original as f64 / filtered as f64 > threshold);
            if anomalous {
                dropped_timestamps.push(t);
                kept[t as usize].clear();
            }
        }
    }

    let anomalous_vertices_by_time = flagged
        .into_iter()
        .map(|set| {
            let mut v: Vec<VertexId> = set.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect();

    Ok(AnomalyReport {
        anomalous_intervals: intervals,
        anomalous_vertices_by_time,
        removed_contacts,
        dropped_timestamps,
        surviving: g.with_edges(kept),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrecisionRecall {
    /// `None` when nothing was removed.
    pub precision: Option<f64>,
    /// `None` when no contact falls in a positive timestamp.
    pub recall: Option<f64>,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

/// Scores removals against ground-truth positive timestamps: a contact
/// removed at a positive timestamp is a true positive, one removed elsewhere
/// a false positive, and one surviving at a positive timestamp a false
/// negative.
pub fn precision_recall(
    original: &TemporalGraph,
    report: &AnomalyReport,
    positive_timestamps: &BTreeSet<Timestamp>,
) -> PrecisionRecall {
    let (mut tp, mut fp, mut fneg) = (0, 0, 0);
    for t in 0..=original.t_max() {
        let before = original.edges_at(t).len();
        let after = report.surviving.edges_at(t).len();
        let removed = before - after;
        if positive_timestamps.contains(&t) {
            tp += removed;
            fneg += after;
        } else {
            fp += removed;
        }
    }
    let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    PrecisionRecall {
        precision: ratio(tp, tp + fp),
        recall: ratio(tp, tp + fneg),
        true_positives: tp,
        false_positives: fp,
        false_negatives: fneg,
    }
}
