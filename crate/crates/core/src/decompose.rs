//! Full span-core decomposition: the per-interval baseline and the
//! containment-pruned queue engine.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::graph::{Edge, Interval, TemporalGraph, VertexId};
use crate::kernel::{core_decomposition, CoreLabeling};

/// `C_{k,Δ}`: the maximal vertex set in which every member has at least `k`
/// neighbours along edges present throughout `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanCore {
    pub order: u32,
    pub span: Interval,
    /// Sorted, non-empty.
    pub members: Vec<VertexId>,
}

impl SpanCore {
    pub fn new(order: u32, span: Interval, members: Vec<VertexId>) -> Self {
        debug_assert!(order >= 1 && !members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SpanCore {
            order,
            span,
            members,
        }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Canonical output order: `(t_s, t_e, k)`.
    pub fn sort_key(&self) -> (u32, u32, u32) {
        (self.span.start(), self.span.end(), self.order)
    }
}

/// Engine-cost counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RunMetrics {
    /// Cumulative size of the vertex sets handed to the core kernel.
    pub processed_vertices: u64,
    pub cores_emitted: u64,
    pub kernel_calls: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunMetrics {
    pub(crate) fn kernel_call(&mut self, vertices: usize) {
        self.kernel_calls += 1;
        self.processed_vertices += vertices as u64;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecompositionResult {
    /// Sorted by `(t_s, t_e, k)`.
    pub cores: Vec<SpanCore>,
    pub metrics: RunMetrics,
}

impl DecompositionResult {
    pub(crate) fn finish(mut cores: Vec<SpanCore>, mut metrics: RunMetrics, started: Instant) -> Self {
        cores.sort_by_key(SpanCore::sort_key);
        metrics.cores_emitted = cores.len() as u64;
        metrics.elapsed = started.elapsed();
        DecompositionResult { cores, metrics }
    }

    /// Wraps a precomputed core list (for instance, one read back from disk).
    pub fn from_cores(mut cores: Vec<SpanCore>) -> Self {
        cores.sort_by_key(SpanCore::sort_key);
        let metrics = RunMetrics {
            cores_emitted: cores.len() as u64,
            ..RunMetrics::default()
        };
        DecompositionResult { cores, metrics }
    }

    pub fn len(&self) -> usize {
        self.cores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cores.is_empty()
    }

    pub fn find(&self, order: u32, span: Interval) -> Option<&SpanCore> {
        self.cores.iter().find(|c| c.order == order && c.span == span)
    }

    /// Largest order present.
    pub fn k_max(&self) -> u32 {
        self.cores.iter().map(|c| c.order).max().unwrap_or(0)
    }
}

/// One interval handled by [`span_cores_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VisitedInterval {
    pub span: Interval,
    /// `|A[Δ]|`.
    pub candidates: usize,
    /// Whether `E_Δ[A[Δ]]` was non-empty and the kernel ran.
    pub decomposed: bool,
}

pub(crate) fn cores_of(span: Interval, labeling: &CoreLabeling) -> impl Iterator<Item = SpanCore> + '_ {
    (1..=labeling.max_order()).map(move |k| SpanCore::new(k, span, labeling.core(k)))
}

/// Baseline: a full core decomposition of `(V, E_Δ)` for every interval with
/// a non-empty edge set.
pub fn naive_span_cores(g: &TemporalGraph) -> DecompositionResult {
    let started = Instant::now();
    let all: Vec<VertexId> = g.vertices().collect();
    let mut metrics = RunMetrics::default();
    let mut cores = Vec::new();
    for t_s in 0..=g.t_max() {
        for t_e in t_s..=g.t_max() {
            let span = Interval::new(t_s, t_e);
            let edges = g.edges_in_interval(span);
            if edges.is_empty() {
                // E_Δ only shrinks as t_e grows.
                break;
            }
            metrics.kernel_call(all.len());
            let labeling = core_decomposition(&all, &edges);
            cores.extend(cores_of(span, &labeling));
        }
    }
    DecompositionResult::finish(cores, metrics, started)
}

/// Containment-pruned decomposition. Intervals are generated size by size;
/// the kernel for `Δ` starts from `C_{1,Δ₋} ∩ C_{1,Δ₊}` instead of `V`.
pub fn span_cores(g: &TemporalGraph) -> DecompositionResult {
    run_pruned(g, |_| {}, |_, _| {})
}

/// [`span_cores`] plus the sequence of intervals it dequeued.
pub fn span_cores_traced(g: &TemporalGraph) -> (DecompositionResult, Vec<VisitedInterval>) {
    let mut trace = Vec::new();
    let result = run_pruned(g, |v| trace.push(v), |_, _| {});
    (result, trace)
}

/// Shared driver. `on_visit` observes every dequeued interval;
/// `on_decomposed` sees each interval's labeling as soon as it is computed,
/// in processing order (used by the filtering maximal baseline).
pub(crate) fn run_pruned(
    g: &TemporalGraph,
    mut on_visit: impl FnMut(VisitedInterval),
    mut on_decomposed: impl FnMut(Interval, &CoreLabeling),
) -> DecompositionResult {
    let started = Instant::now();
    let t_max = g.t_max();
    let all: Vec<VertexId> = g.vertices().collect();
    let mut metrics = RunMetrics::default();
    let mut cores = Vec::new();

    let mut queue: VecDeque<(Interval, Vec<VertexId>)> =
        (0..=t_max).map(|t| (Interval::singleton(t), all.clone())).collect();
    // Children seen from one father only. Every entry has length
    // `generation + 1`; whatever is left when that generation starts has a
    // dead father and is dropped.
    let mut pending: HashMap<Interval, Vec<VertexId>> = HashMap::new();
    let mut generation = 1;
    let mut in_set = vec![false; g.vertex_count()];
    let mut edges: Vec<Edge> = Vec::new();

    while let Some((span, candidates)) = queue.pop_front() {
        if span.len() > generation {
            generation = span.len();
            pending.clear();
        }

        for &u in &candidates {
            in_set[u as usize] = true;
        }
        edges.clear();
        edges.extend(
            g.runs_from(span.start())
                .filter(|&(e, end)| {
                    end >= span.end() && in_set[e.low() as usize] && in_set[e.high() as usize]
                })
                .map(|(e, _)| e),
        );
        for &u in &candidates {
            in_set[u as usize] = false;
        }

        on_visit(VisitedInterval {
            span,
            candidates: candidates.len(),
            decomposed: !edges.is_empty(),
        });
        if edges.is_empty() {
            continue;
        }

        metrics.kernel_call(candidates.len());
        let labeling = core_decomposition(&candidates, &edges);
        on_decomposed(span, &labeling);
        cores.extend(cores_of(span, &labeling));
        let outer = labeling.core(1);

        let left = Interval::new(span.start().saturating_sub(1), span.end());
        let right = Interval::new(span.start(), (span.end() + 1).min(t_max));
        for child in [left, right] {
            if child == span {
                continue;
            }
            match pending.remove(&child) {
                Some(other) => queue.push_back((child, intersect_sorted(&other, &outer))),
                None => {
                    pending.insert(child, outer.clone());
                }
            }
        }
    }

    DecompositionResult::finish(cores, metrics, started)
}

pub(crate) fn intersect_sorted(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
