//! Brute-force reference implementations for testing. Deliberately shares
//! no code with the engines: edge sets are intersected literally and cores
//! are found by fixed-point deletion.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::graph::{Edge, Interval, TemporalGraph, VertexId};

/// `(k, t_s, t_e, members)`.
pub type CoreTriple = (u32, u32, u32, Vec<VertexId>);

/// `∩_{t ∈ Δ} E_t` by repeated set intersection.
pub fn intersect_edges(g: &TemporalGraph, span: Interval) -> BTreeSet<Edge> {
    let mut acc: HashSet<Edge> = g.edges_at(span.start()).iter().copied().collect();
    for t in span.start() + 1..=span.end() {
        let here: HashSet<Edge> = g.edges_at(t).iter().copied().collect();
        acc.retain(|e| here.contains(e));
    }
    acc.into_iter().collect()
}

/// The `k`-core of `(vertices, edges)`: delete any vertex with fewer than
/// `k` surviving neighbours until nothing changes.
pub fn k_core(vertices: &[VertexId], edges: &BTreeSet<Edge>, k: u32) -> BTreeSet<VertexId> {
    let mut alive: BTreeSet<VertexId> = vertices.iter().copied().collect();
    loop {
        let mut degree: HashMap<VertexId, u32> = HashMap::new();
        for e in edges {
            if alive.contains(&e.low()) && alive.contains(&e.high()) {
                *degree.entry(e.low()).or_default() += 1;
                *degree.entry(e.high()).or_default() += 1;
            }
        }
        let before = alive.len();
        alive.retain(|u| degree.get(u).copied().unwrap_or(0) >= k);
        if alive.len() == before {
            return alive;
        }
    }
}

/// Every span-core of `g`, over every interval.
pub fn all_span_cores(g: &TemporalGraph) -> BTreeSet<CoreTriple> {
    let all: Vec<VertexId> = g.vertices().collect();
    let mut out = BTreeSet::new();
    for t_s in 0..=g.t_max() {
        for t_e in t_s..=g.t_max() {
            let edges = intersect_edges(g, Interval::new(t_s, t_e));
            let mut k = 1;
            loop {
                let core = k_core(&all, &edges, k);
                if core.is_empty() {
                    break;
                }
                out.insert((k, t_s, t_e, core.into_iter().collect()));
                k += 1;
            }
        }
    }
    out
}

/// Cores of `all` not dominated (order and span) by another one.
pub fn maximal_of(all: &BTreeSet<CoreTriple>) -> BTreeSet<CoreTriple> {
    all.iter()
        .filter(|&&(k, s, e, _)| {
            !all.iter().any(|&(k2, s2, e2, _)| {
                (k2, s2, e2) != (k, s, e) && k2 >= k && s2 <= s && e2 >= e
            })
        })
        .cloned()
        .collect()
}

pub fn triples<'a>(cores: impl IntoIterator<Item = &'a crate::SpanCore>) -> BTreeSet<CoreTriple> {
    cores
        .into_iter()
        .map(|c| (c.order, c.span.start(), c.span.end(), c.members.clone()))
        .collect()
}
