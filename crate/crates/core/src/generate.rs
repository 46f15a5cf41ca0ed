//! Seeded synthetic temporal graphs used by tests, benches and the CLI demo
//! fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{LabelMap, TemporalGraph, Timestamp, VertexId};

/// Each pair is present at a timestamp with probability `p`; an edge present
/// at `t` survives to `t + 1` with probability `persistence` instead.
/// `persistence = p` gives independent Erdős–Rényi snapshots.
pub fn markov_temporal(seed: u64, n: usize, timestamps: usize, p: f64, persistence: f64) -> TemporalGraph {
    assert!(timestamps >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(VertexId, VertexId)> = (0..n as VertexId)
        .flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)))
        .collect();
    let mut present = vec![false; pairs.len()];
    let mut by_time = Vec::with_capacity(timestamps);
    for _ in 0..timestamps {
        for alive in present.iter_mut() {
            let q = if *alive { persistence } else { p };
            *alive = rng.gen_bool(q);
        }
        by_time.push(
            pairs
                .iter()
                .zip(&present)
                .filter(|(_, &on)| on)
                .map(|(&e, _)| e)
                .collect::<Vec<_>>(),
        );
    }
    TemporalGraph::with_numbered_vertices(n, by_time).expect("non-empty time domain")
}

/// Independent Erdős–Rényi snapshots.
pub fn erdos_renyi_temporal(seed: u64, n: usize, timestamps: usize, p: f64) -> TemporalGraph {
    markov_temporal(seed, n, timestamps, p, p)
}

/// Community-structured temporal graph: vertices are split into equal
/// communities; each community owns a backbone of intra-community edges
/// that is active at a timestamp with probability `backbone_activity`,
/// while the remaining intra-community pairs appear independently with
/// probability `p_in` and inter-community pairs with probability `p_out`.
#[derive(Debug, Clone, Copy)]
pub struct CommunityModel {
    pub vertices: usize,
    pub timestamps: usize,
    pub communities: usize,
    pub backbone_density: f64,
    pub backbone_activity: f64,
    pub p_in: f64,
    pub p_out: f64,
}

impl Default for CommunityModel {
    fn default() -> Self {
        CommunityModel {
            vertices: 2000,
            timestamps: 50,
            communities: 40,
            backbone_density: 0.3,
            backbone_activity: 0.85,
            p_in: 0.05,
            p_out: 0.0005,
        }
    }
}

impl CommunityModel {
    pub fn generate(&self, seed: u64) -> TemporalGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.vertices;
        let size = n.div_ceil(self.communities.max(1));
        let community = |u: usize| u / size;

        let mut backbone: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); self.communities.max(1)];
        let mut intra = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if community(u) != community(v) {
                    continue;
                }
                if rng.gen_bool(self.backbone_density) {
                    backbone[community(u)].push((u as VertexId, v as VertexId));
                } else {
                    intra.push((u as VertexId, v as VertexId));
                }
            }
        }
        let p_out = self.p_out;
        let mut by_time = Vec::with_capacity(self.timestamps);
        for _ in 0..self.timestamps {
            let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
            for group in &backbone {
                if rng.gen_bool(self.backbone_activity) {
                    edges.extend_from_slice(group);
                }
            }
            edges.extend(intra.iter().copied().filter(|_| rng.gen_bool(self.p_in)));
            // Inter-community noise: expected pair count drawn uniformly.
            if p_out > 0.0 {
                let total = (n * (n - 1) / 2) as f64;
                let draws = (total * p_out).round() as usize;
                for _ in 0..draws {
                    let u = rng.gen_range(0..n);
                    let v = rng.gen_range(0..n);
                    if community(u) != community(v) {
                        edges.push((u as VertexId, v as VertexId));
                    }
                }
            }
            by_time.push(edges);
        }
        TemporalGraph::with_numbered_vertices(n, by_time).expect("non-empty time domain")
    }
}

/// Background Erdős–Rényi contacts on `background` vertices plus a clique
/// on `clique_size` extra vertices, active at every timestamp of
/// `clique_times`. Background contacts are only generated at
/// `background_times`.
#[derive(Debug, Clone)]
pub struct PlantedClique {
    pub background: usize,
    pub p: f64,
    pub clique_size: usize,
    pub timestamps: usize,
    pub clique_times: std::ops::Range<Timestamp>,
    pub background_times: std::ops::Range<Timestamp>,
}

impl PlantedClique {
    /// Clique members are the last `clique_size` ids.
    pub fn clique_members(&self) -> std::ops::Range<VertexId> {
        self.background as VertexId..(self.background + self.clique_size) as VertexId
    }

    pub fn generate(&self, seed: u64) -> TemporalGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut labels = LabelMap::new();
        for i in 0..self.background {
            labels.intern(&format!("bg{i}"));
        }
        for i in 0..self.clique_size {
            labels.intern(&format!("clique{i}"));
        }
        let clique: Vec<VertexId> = self.clique_members().collect();
        let mut by_time = Vec::with_capacity(self.timestamps);
        for t in 0..self.timestamps as Timestamp {
            let mut edges = Vec::new();
            if self.background_times.contains(&t) {
                for u in 0..self.background as VertexId {
                    for v in u + 1..self.background as VertexId {
                        if rng.gen_bool(self.p) {
                            edges.push((u, v));
                        }
                    }
                }
            }
            if self.clique_times.contains(&t) {
                for (i, &u) in clique.iter().enumerate() {
                    for &v in &clique[i + 1..] {
                        edges.push((u, v));
                    }
                }
            }
            by_time.push(edges);
        }
        TemporalGraph::from_pairs(labels, by_time).expect("non-empty time domain")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        assert_eq!(markov_temporal(3, 10, 4, 0.2, 0.6), markov_temporal(3, 10, 4, 0.2, 0.6));
        assert_ne!(
            erdos_renyi_temporal(3, 10, 4, 0.3).dump(),
            erdos_renyi_temporal(4, 10, 4, 0.3).dump()
        );
    }

    #[test]
    fn planted_clique_shape() {
        let model = PlantedClique {
            background: 30,
            p: 0.1,
            clique_size: 4,
            timestamps: 10,
            clique_times: 0..10,
            background_times: 0..10,
        };
        let g = model.generate(1);
        assert_eq!(g.vertex_count(), 34);
        assert_eq!(g.timestamp_count(), 10);
        for t in 0..10 {
            let clique_edges = g
                .edges_at(t)
                .iter()
                .filter(|e| model.clique_members().contains(&e.low()))
                .count();
            assert_eq!(clique_edges, 6);
        }
    }
}
