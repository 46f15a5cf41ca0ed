//! Per-timestamp degree-preserving reshuffling.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, TemporalGraph, Timestamp};

/// Randomizes every snapshot with double-edge swaps: two disjoint pending
/// edges `(u,v)`, `(w,z)` become `(u,z)`, `(w,v)` and leave the pending
/// pool. Swaps that would duplicate an existing edge are rejected. A
/// snapshot stops after `10 × |E_t|` draws or when fewer than two edges are
/// pending; leftovers stay as they were.
///
/// Each timestamp draws from its own ChaCha stream keyed by `(seed, t)`.
pub fn reshuffle_timestamps(g: &TemporalGraph, seed: u64) -> TemporalGraph {
    let shuffled = (0..=g.t_max())
        .map(|t| shuffle_snapshot(g.edges_at(t), seed, t))
        .collect();
    g.with_edges(shuffled)
}

fn shuffle_snapshot(edges: &[Edge], seed: u64, t: Timestamp) -> Vec<Edge> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(t));

    let mut edges = edges.to_vec();
    let mut present: HashSet<Edge> = edges.iter().copied().collect();
    let mut pending: Vec<usize> = (0..edges.len()).collect();
    let budget = edges.len() * 10;

    for _ in 0..budget {
        if pending.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..pending.len());
        let mut j = rng.gen_range(0..pending.len() - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = (edges[pending[i]], edges[pending[j]]);
        let (u, v) = orient(a, rng.gen());
        let (w, z) = orient(b, rng.gen());
        if u == w || u == z || v == w || v == z {
            continue;
        }
        let (Some(first), Some(second)) = (Edge::new(u, z), Edge::new(w, v)) else {
            continue;
        };
        if present.contains(&first) || present.contains(&second) {
            continue;
        }
        present.remove(&a);
        present.remove(&b);
        present.insert(first);
        present.insert(second);
        edges[pending[i]] = first;
        edges[pending[j]] = second;
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        pending.swap_remove(hi);
        pending.swap_remove(lo);
    }
    edges
}

fn orient(e: Edge, flip: bool) -> (u32, u32) {
    if flip {
        (e.high(), e.low())
    } else {
        (e.low(), e.high())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::erdos_renyi_temporal;

    fn degrees(edges: &[Edge], n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for e in edges {
            d[e.low() as usize] += 1;
            d[e.high() as usize] += 1;
        }
        d
    }

    #[test]
    fn degrees_and_counts_preserved() {
        let g = erdos_renyi_temporal(11, 20, 5, 0.25);
        let s = reshuffle_timestamps(&g, 7);
        assert_ne!(g, s);
        for t in 0..=g.t_max() {
            assert_eq!(g.edges_at(t).len(), s.edges_at(t).len());
            assert_eq!(degrees(g.edges_at(t), 20), degrees(s.edges_at(t), 20));
        }
    }

    #[test]
    fn single_edge_unchanged() {
        let g = TemporalGraph::with_numbered_vertices(3, vec![vec![(0, 2)]]).unwrap();
        assert_eq!(reshuffle_timestamps(&g, 1), g);
    }

    #[test]
    fn seeded() {
        let g = erdos_renyi_temporal(5, 15, 4, 0.3);
        assert_eq!(reshuffle_timestamps(&g, 42).dump(), reshuffle_timestamps(&g, 42).dump());
        assert_ne!(reshuffle_timestamps(&g, 42).dump(), reshuffle_timestamps(&g, 43).dump());
    }
}
