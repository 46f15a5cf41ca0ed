//! Temporal graph model and the interval-indexed edge machinery shared by
//! every engine.
//!
//! A [`TemporalGraph`] stores one sorted, deduplicated edge list per
//! discrete timestamp. Alongside each edge it keeps the last timestamp of
//! the uninterrupted run starting at that timestamp, so the edge set of an
//! interval `[t_s, t_e]` is a single filtered scan of `E_{t_s}`.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type Timestamp = u32;

/// Undirected edge stored once with the lower id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Canonicalizes the endpoint order. Returns `None` for self-loops.
    pub fn new(u: VertexId, v: VertexId) -> Option<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Some(Edge(u, v)),
            std::cmp::Ordering::Greater => Some(Edge(v, u)),
            std::cmp::Ordering::Equal => None,
        }
    }

    #[inline]
    pub fn low(self) -> VertexId {
        self.0
    }

    #[inline]
    pub fn high(self) -> VertexId {
        self.1
    }

    #[inline]
    pub fn touches(self, u: VertexId) -> bool {
        self.0 == u || self.1 == u
    }

    #[inline]
    pub fn other(self, u: VertexId) -> VertexId {
        if self.0 == u {
            self.1
        } else {
            self.0
        }
    }
}

/// A contiguous, non-empty range of timestamps `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    start: Timestamp,
    end: Timestamp,
}

impl Interval {
    /// # Panics
    ///
    /// Panics if `start > end`.
    pub fn new(start: Timestamp, end: Timestamp) -> Self {
        assert!(start <= end, "interval start {start} exceeds end {end}");
        Interval { start, end }
    }

    pub fn try_new(start: Timestamp, end: Timestamp) -> Option<Self> {
        (start <= end).then_some(Interval { start, end })
    }

    pub fn singleton(t: Timestamp) -> Self {
        Interval { start: t, end: t }
    }

    #[inline]
    pub fn start(self) -> Timestamp {
        self.start
    }

    #[inline]
    pub fn end(self) -> Timestamp {
        self.end
    }

    /// Number of timestamps covered.
    #[inline]
    pub fn len(self) -> u32 {
        self.end - self.start + 1
    }

    /// Always false; an interval covers at least one timestamp.
    #[inline]
    pub fn is_empty(self) -> bool {
        false
    }

    /// `self ⊑ other`: every timestamp of `self` lies in `other`.
    #[inline]
    pub fn is_within(self, other: Interval) -> bool {
        other.start <= self.start && other.end >= self.end
    }

    /// `other ⊑ self`.
    #[inline]
    pub fn contains(self, other: Interval) -> bool {
        other.is_within(self)
    }

    #[inline]
    pub fn contains_time(self, t: Timestamp) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn timestamps(self) -> std::ops::RangeInclusive<Timestamp> {
        self.start..=self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

/// Bidirectional map between dense vertex ids and external labels. Ids are
/// handed out in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = VertexId::try_from(self.labels.len()).expect("vertex id overflow");
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> &str {
        &self.labels[id as usize]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &str)> {
        self.labels.iter().enumerate().map(|(i, l)| (i as VertexId, l.as_str()))
    }

    /// Labels named by ordinal position, "0", "1", ...
    pub fn numbered(n: usize) -> Self {
        let mut labels = LabelMap::new();
        for i in 0..n {
            labels.intern(&i.to_string());
        }
        labels
    }
}

/// Immutable temporal graph over the contiguous time domain `[0, t_max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    labels: LabelMap,
    edges_by_time: Vec<Vec<Edge>>,
    // run_end[t][i]: last timestamp t' such that edges_by_time[t][i] is present
    // at every timestamp of [t, t'].
    run_end: Vec<Vec<Timestamp>>,
}

impl TemporalGraph {
    /// Builds a graph from raw per-timestamp endpoint pairs. Pairs are
    /// canonicalized; self-loops and duplicates are dropped.
    pub fn from_pairs<I>(labels: LabelMap, pairs_by_time: Vec<I>) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = labels.len() as VertexId;
        let edges_by_time = pairs_by_time
            .into_iter()
            .map(|pairs| {
                let mut edges: Vec<Edge> = pairs
                    .into_iter()
                    .inspect(|&(u, v)| {
                        assert!(u < n && v < n, "endpoint ({u},{v}) outside 0..{n}");
                    })
                    .filter_map(|(u, v)| Edge::new(u, v))
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                edges
            })
            .collect();
        Self::from_sorted(labels, edges_by_time)
    }

    /// Graph with `n` vertices labelled by their ids.
    pub fn with_numbered_vertices<I>(n: usize, pairs_by_time: Vec<I>) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::from_pairs(LabelMap::numbered(n), pairs_by_time)
    }

    fn from_sorted(labels: LabelMap, edges_by_time: Vec<Vec<Edge>>) -> Result<Self> {
        if edges_by_time.is_empty() {
            return Err(Error::EmptyTimeDomain);
        }
        let mut run_end: Vec<Vec<Timestamp>> = vec![Vec::new(); edges_by_time.len()];
        for t in (0..edges_by_time.len()).rev() {
            let here = &edges_by_time[t];
            let ends = here
                .iter()
                .map(|e| {
                    edges_by_time
                        .get(t + 1)
                        .and_then(|next| next.binary_search(e).ok())
                        .map_or(t as Timestamp, |j| run_end[t + 1][j])
                })
                .collect();
            run_end[t] = ends;
        }
        Ok(TemporalGraph {
            labels,
            edges_by_time,
            run_end,
        })
    }

    pub fn labels(&self) -> &LabelMap {
        &self.labels
    }

    pub fn label(&self, u: VertexId) -> &str {
        self.labels.label(u)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count() as VertexId
    }

    pub fn t_max(&self) -> Timestamp {
        (self.edges_by_time.len() - 1) as Timestamp
    }

    /// `|T|`.
    pub fn timestamp_count(&self) -> usize {
        self.edges_by_time.len()
    }

    pub fn span(&self) -> Interval {
        Interval::new(0, self.t_max())
    }

    pub fn edges_at(&self, t: Timestamp) -> &[Edge] {
        &self.edges_by_time[t as usize]
    }

    /// Total number of (edge, timestamp) contacts.
    pub fn contact_count(&self) -> usize {
        self.edges_by_time.iter().map(Vec::len).sum()
    }

    pub fn has_edge_at(&self, e: Edge, t: Timestamp) -> bool {
        self.edges_at(t).binary_search(&e).is_ok()
    }

    fn check(&self, span: Interval) {
        assert!(
            span.end() <= self.t_max(),
            "interval {span} outside time domain [0,{}]",
            self.t_max()
        );
    }

    /// Edges of `E_{t_s}` together with the end of their run from `t_s`.
    pub(crate) fn runs_from(&self, t_s: Timestamp) -> impl Iterator<Item = (Edge, Timestamp)> + '_ {
        self.edges_by_time[t_s as usize]
            .iter()
            .copied()
            .zip(self.run_end[t_s as usize].iter().copied())
    }

    /// `E_Δ`: the edges present at every timestamp of `span`, sorted.
    pub fn edges_in_interval(&self, span: Interval) -> Vec<Edge> {
        self.check(span);
        self.runs_from(span.start())
            .filter(|&(_, end)| end >= span.end())
            .map(|(e, _)| e)
            .collect()
    }

    /// Number of neighbours of `u` inside `members` along edges of `E_Δ`.
    ///
    /// # Panics
    ///
    /// Panics if `members` (sorted) does not contain `u`.
    pub fn temporal_degree(&self, members: &[VertexId], u: VertexId, span: Interval) -> usize {
        assert!(
            members.binary_search(&u).is_ok(),
            "vertex {u} is not in the member set"
        );
        self.check(span);
        self.runs_from(span.start())
            .filter(|&(e, end)| {
                end >= span.end() && e.touches(u) && members.binary_search(&e.other(u)).is_ok()
            })
            .count()
    }

    /// Diff sets `E⁻(t_e) = E_{[t_s,t_e]} \ E_{[t_s,t_e+1]}` for every
    /// `t_e ∈ [t_s, t*−1]`, where `t*` is the last end for which
    /// `E_{[t_s,t*]}` is non-empty. Returns `None` when `E_{t_s}` is empty.
    pub fn edge_diff_sets(&self, t_s: Timestamp) -> Option<EdgeDiffs> {
        let base = self.edges_at(t_s);
        if base.is_empty() {
            return None;
        }
        // An edge leaves E_{[t_s,t_e]} right after the end of its run.
        let t_star = self.run_end[t_s as usize].iter().copied().max().unwrap_or(t_s);
        let mut removed = vec![Vec::new(); (t_star - t_s) as usize];
        let mut alive = Vec::new();
        for (e, end) in self.runs_from(t_s) {
            if end == t_star {
                alive.push(e);
            } else {
                removed[(end - t_s) as usize].push(e);
            }
        }
        Some(EdgeDiffs {
            start: t_s,
            t_star,
            removed,
            top: alive,
        })
    }

    /// Canonical text dump: one line per timestamp, `t: (u,v) (u,v) ...`,
    /// edges written as label pairs in lexicographic order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (t, edges) in self.edges_by_time.iter().enumerate() {
            let mut pairs: Vec<(&str, &str)> = edges
                .iter()
                .map(|e| {
                    let (a, b) = (self.label(e.low()), self.label(e.high()));
                    if a <= b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            pairs.sort_unstable();
            let _ = write!(out, "{t}:");
            for (a, b) in pairs {
                let _ = write!(out, " ({a},{b})");
            }
            out.push('\n');
        }
        out
    }

    /// Same vertex set, new edge lists (used by the null model and the
    /// anomaly filter).
    pub(crate) fn with_edges(&self, edges_by_time: Vec<Vec<Edge>>) -> Self {
        let mut edges_by_time = edges_by_time;
        for edges in &mut edges_by_time {
            edges.sort_unstable();
            edges.dedup();
        }
        Self::from_sorted(self.labels.clone(), edges_by_time)
            .expect("time domain is preserved")
    }

    /// Writes contacts as `u v t` lines, `t` the discrete timestamp.
    pub fn write_contacts<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for (t, edges) in self.edges_by_time.iter().enumerate() {
            for e in edges {
                writeln!(w, "{} {} {}", self.label(e.low()), self.label(e.high()), t)?;
            }
        }
        Ok(())
    }
}

/// Output of [`TemporalGraph::edge_diff_sets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDiffs {
    start: Timestamp,
    t_star: Timestamp,
    removed: Vec<Vec<Edge>>,
    top: Vec<Edge>,
}

impl EdgeDiffs {
    pub fn t_star(&self) -> Timestamp {
        self.t_star
    }

    /// `E⁻(t_e)` for `t_e ∈ [t_s, t*−1]`.
    pub fn removed_after(&self, t_e: Timestamp) -> &[Edge] {
        assert!(t_e >= self.start && t_e < self.t_star);
        &self.removed[(t_e - self.start) as usize]
    }

    /// `E_{[t_s,t*]}`.
    pub fn top(&self) -> &[Edge] {
        &self.top
    }

    /// Number of stored diff sets (`t* − t_s`).
    pub fn len(&self) -> usize {
        self.removed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.removed.is_empty()
    }

    /// Total edges held: `|E_{t_s}|`.
    pub fn stored_edges(&self) -> usize {
        self.top.len() + self.removed.iter().map(Vec::len).sum::<usize>()
    }

    /// Rebuilds `E_{[t_s,t_e]}` (sorted) by folding diff sets down from `t*`.
    pub fn reconstruct(&self, t_e: Timestamp) -> Vec<Edge> {
        assert!(t_e >= self.start && t_e <= self.t_star);
        let mut edges = self.top.clone();
        for t in (t_e..self.t_star).rev() {
            edges.extend_from_slice(self.removed_after(t));
        }
        edges.sort_unstable();
        edges
    }
}
