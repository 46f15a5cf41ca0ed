//! Maximal span-cores: the dominance-filtering baseline and the direct
//! top-down miner.
//!
//! The direct miner walks `t_s` upward and, for each start, walks `t_e`
//! downward from `t*`, so every interval is handled after all of its
//! superintervals. The lower bound `lb = max(K'[t_e], k'')` on the order a
//! maximal core of `[t_s, t_e]` must exceed restricts the kernel to
//! vertices of temporal degree `> lb`, read directly off a degree-bucket
//! structure that grows as `t_e` shrinks.

use std::collections::HashMap;
use std::time::Instant;

use crate::decompose::{run_pruned, DecompositionResult, RunMetrics, SpanCore};
use crate::graph::{Edge, Interval, TemporalGraph, VertexId};
use crate::kernel::innermost_core;

/// `c1` dominates `c2` when it has at least the same order over a span that
/// contains `c2`'s span.
pub fn dominates(c1: &SpanCore, c2: &SpanCore) -> bool {
    c1.order >= c2.order && c2.span.is_within(c1.span)
}

/// Per-vertex temporal degree over the current interval, bucketed so that
/// `above(k)` lists every vertex with degree `> k`.
///
/// A vertex whose degree rises from `d` to `d + 1` is appended to bucket
/// `d`, so it appears in exactly `degree` buckets.
#[derive(Debug, Clone, Default)]
pub struct DegreeBuckets {
    degree: Vec<u32>,
    touched: Vec<VertexId>,
    buckets: Vec<Vec<VertexId>>,
}

impl DegreeBuckets {
    pub fn new(vertex_count: usize) -> Self {
        DegreeBuckets {
            degree: vec![0; vertex_count],
            touched: Vec::new(),
            buckets: Vec::new(),
        }
    }

    pub fn clear(&mut self) {
        for &u in &self.touched {
            self.degree[u as usize] = 0;
        }
        self.touched.clear();
        for b in &mut self.buckets {
            b.clear();
        }
    }

    fn bump(&mut self, u: VertexId) {
        let d = self.degree[u as usize];
        if d == 0 {
            self.touched.push(u);
        }
        if self.buckets.len() <= d as usize {
            self.buckets.resize_with(d as usize + 1, Vec::new);
        }
        self.buckets[d as usize].push(u);
        self.degree[u as usize] = d + 1;
    }

    pub fn add_edge(&mut self, e: Edge) {
        self.bump(e.low());
        self.bump(e.high());
    }

    pub fn add_edges(&mut self, edges: &[Edge]) {
        for &e in edges {
            self.add_edge(e);
        }
    }

    /// Vertices with degree `> k`, in the order they reached degree `k + 1`.
    pub fn above(&self, k: u32) -> &[VertexId] {
        self.buckets.get(k as usize).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, u: VertexId) -> u32 {
        self.degree[u as usize]
    }

    /// Total stored entries, equal to the sum of degrees.
    pub fn stored(&self) -> usize {
        self.buckets.iter().map(Vec::len).sum()
    }
}

/// One inner-loop step of the direct miner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalStep {
    pub span: Interval,
    pub lb: u32,
    /// `|V_lb|`.
    pub candidates: usize,
    pub k_star: u32,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MaximalTrace {
    pub steps: Vec<MaximalStep>,
    /// `K'` after the run.
    pub k_prime: Vec<u32>,
}

/// Baseline: run the pruned full decomposition and keep, per interval, its
/// highest-order core, evicting stored cores of subintervals with the same
/// (or lower) order as each new one arrives.
pub fn naive_maximal_span_cores(g: &TemporalGraph) -> DecompositionResult {
    let started = Instant::now();
    let mut stored: HashMap<Interval, SpanCore> = HashMap::new();
    let full = run_pruned(
        g,
        |_| {},
        |span, labeling| {
            let k = labeling.max_order();
            // Subintervals were all processed earlier (generation order).
            stored.retain(|&s, c| !(s.is_within(span) && c.order <= k));
            stored.insert(span, SpanCore::new(k, span, labeling.core(k)));
        },
    );
    let metrics = RunMetrics {
        processed_vertices: full.metrics.processed_vertices,
        kernel_calls: full.metrics.kernel_calls,
        ..RunMetrics::default()
    };
    DecompositionResult::finish(stored.into_values().collect(), metrics, started)
}

/// Direct top-down maximal span-core miner.
pub fn maximal_span_cores(g: &TemporalGraph) -> DecompositionResult {
    run_direct(g, |_| {}).0
}

pub fn maximal_span_cores_traced(g: &TemporalGraph) -> (DecompositionResult, MaximalTrace) {
    let mut steps = Vec::new();
    let (result, k_prime) = run_direct(g, |s| steps.push(s));
    (result, MaximalTrace { steps, k_prime })
}

fn run_direct(
    g: &TemporalGraph,
    mut on_step: impl FnMut(MaximalStep),
) -> (DecompositionResult, Vec<u32>) {
    let started = Instant::now();
    let mut metrics = RunMetrics::default();
    let mut cores = Vec::new();
    // Carried across start timestamps.
    let mut k_prime = vec![0u32; g.timestamp_count()];
    let mut buckets = DegreeBuckets::new(g.vertex_count());
    let mut in_set = vec![false; g.vertex_count()];
    let mut current: Vec<Edge> = Vec::new();
    let mut sub_edges: Vec<Edge> = Vec::new();
    let mut candidates: Vec<VertexId> = Vec::new();

    for t_s in 0..=g.t_max() {
        let Some(diffs) = g.edge_diff_sets(t_s) else {
            continue;
        };
        let t_star = diffs.t_star();
        let mut k_second = 0u32;
        buckets.clear();
        current.clear();

        for t_e in (t_s..=t_star).rev() {
            // E_{[t_s,t_e]} = E_{[t_s,t_e+1]} ∪ E⁻(t_e)
            let added: &[Edge] = if t_e == t_star {
                diffs.top()
            } else {
                diffs.removed_after(t_e)
            };
            current.extend_from_slice(added);
            buckets.add_edges(added);

            let span = Interval::new(t_s, t_e);
            let lb = k_prime[t_e as usize].max(k_second);
            candidates.clear();
            candidates.extend_from_slice(buckets.above(lb));

            let (k_star, members) = if candidates.is_empty() {
                (0, Vec::new())
            } else {
                candidates.sort_unstable();
                for &u in &candidates {
                    in_set[u as usize] = true;
                }
                sub_edges.clear();
                sub_edges.extend(
                    current
                        .iter()
                        .copied()
                        .filter(|e| in_set[e.low() as usize] && in_set[e.high() as usize]),
                );
                for &u in &candidates {
                    in_set[u as usize] = false;
                }
                metrics.kernel_call(candidates.len());
                innermost_core(&candidates, &sub_edges)
            };

            let accepted = k_star > lb;
            if accepted {
                cores.push(SpanCore::new(k_star, span, members));
            }
            k_second = k_second.max(k_star);
            let slot = &mut k_prime[t_e as usize];
            *slot = (*slot).max(k_second);

            on_step(MaximalStep {
                span,
                lb,
                candidates: candidates.len(),
                k_star,
                accepted,
            });
        }
    }

    (DecompositionResult::finish(cores, metrics, started), k_prime)
}

/// Keeps the cores of `cores` not dominated by any other one. Quadratic.
pub fn dominance_filter(cores: &[SpanCore]) -> Vec<SpanCore> {
    cores
        .iter()
        .filter(|c| {
            !cores
                .iter()
                .any(|other| (other.order, other.span) != (c.order, c.span) && dominates(other, c))
        })
        .cloned()
        .collect()
}

/// Order in which the direct miner visits intervals; exposed for tests.
pub fn direct_visit_order(g: &TemporalGraph) -> Vec<Interval> {
    let mut order = Vec::new();
    for t_s in 0..=g.t_max() {
        if let Some(d) = g.edge_diff_sets(t_s) {
            order.extend((t_s..=d.t_star()).rev().map(|t_e| Interval::new(t_s, t_e)));
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::span_cores;
    use crate::graph::tests::g_ex;

    fn core(order: u32, s: u32, e: u32) -> SpanCore {
        SpanCore::new(order, Interval::new(s, e), vec![0])
    }

    #[test]
    fn dominance_cases() {
        assert!(dominates(&core(2, 0, 1), &core(2, 0, 0)));
        assert!(!dominates(&core(1, 0, 2), &core(2, 0, 1)));
        assert!(!dominates(&core(2, 0, 1), &core(1, 1, 2)));
    }

    #[test]
    fn fixture_maximal() {
        let expected = vec![
            SpanCore::new(2, Interval::new(0, 1), vec![0, 1, 2]),
            SpanCore::new(1, Interval::new(0, 2), vec![0, 1]),
        ];
        let g = g_ex();
        assert_eq!(naive_maximal_span_cores(&g).cores, expected);
        assert_eq!(maximal_span_cores(&g).cores, expected);
        assert_eq!(dominance_filter(&span_cores(&g).cores), expected);
    }

    #[test]
    fn fixture_trace() {
        let (r, trace) = maximal_span_cores_traced(&g_ex());
        let first: Vec<(u32, u32, u32, usize, u32, bool)> = trace
            .steps
            .iter()
            .take(3)
            .map(|s| (s.span.start(), s.span.end(), s.lb, s.candidates, s.k_star, s.accepted))
            .collect();
        assert_eq!(
            first,
            vec![
                (0, 2, 0, 2, 1, true),
                (0, 1, 1, 3, 2, true),
                (0, 0, 2, 1, 0, false),
            ]
        );
        assert_eq!(trace.k_prime, vec![2, 2, 1]);
        assert_eq!(r.metrics.processed_vertices, 6);
        assert!(trace.steps[3..].iter().all(|s| !s.accepted));
    }

    #[test]
    fn single_edge_and_empty() {
        let g = TemporalGraph::with_numbered_vertices(2, vec![vec![(0, 1)]]).unwrap();
        let expected = vec![SpanCore::new(1, Interval::singleton(0), vec![0, 1])];
        assert_eq!(maximal_span_cores(&g).cores, expected);
        assert_eq!(naive_maximal_span_cores(&g).cores, expected);

        let g = TemporalGraph::with_numbered_vertices(2, vec![vec![], vec![]]).unwrap();
        assert!(maximal_span_cores(&g).is_empty());
        assert!(naive_maximal_span_cores(&g).is_empty());
    }

    #[test]
    fn constant_edge_spans_everything() {
        let g = TemporalGraph::with_numbered_vertices(2, vec![vec![(0, 1)]; 4]).unwrap();
        let (r, trace) = maximal_span_cores_traced(&g);
        assert_eq!(r.cores, vec![SpanCore::new(1, Interval::new(0, 3), vec![0, 1])]);
        assert_eq!(trace.steps.iter().filter(|s| s.accepted).count(), 1);
        assert!(trace.steps.iter().all(|s| s.accepted || s.lb >= 1));
    }

    #[test]
    fn buckets_track_degrees() {
        let mut b = DegreeBuckets::new(4);
        b.add_edges(&[Edge::new(0, 1).unwrap(), Edge::new(1, 2).unwrap()]);
        assert_eq!(b.above(0), &[0, 1, 2]);
        assert_eq!(b.above(1), &[1]);
        assert!(b.above(2).is_empty());
        b.add_edge(Edge::new(1, 3).unwrap());
        assert_eq!(b.above(2), &[1]);
        assert_eq!(b.stored(), 6);
        b.clear();
        assert!(b.above(0).is_empty());
        assert_eq!(b.degree(1), 0);
    }

    #[test]
    fn visit_order_is_superintervals_first() {
        let order = direct_visit_order(&g_ex());
        for (i, a) in order.iter().enumerate() {
            for b in &order[i + 1..] {
                assert!(!(a.is_within(*b) && a != b), "{a} visited before superinterval {b}");
            }
        }
    }
}
