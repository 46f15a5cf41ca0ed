//! Static core decomposition (bucket peeling) and innermost-core extraction.

use crate::graph::{Edge, VertexId};

/// Coreness of every vertex with at least one incident edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoreLabeling {
    // Sorted by vertex id.
    coreness: Vec<(VertexId, u32)>,
    max_order: u32,
}

impl CoreLabeling {
    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn coreness(&self, u: VertexId) -> Option<u32> {
        self.coreness
            .binary_search_by_key(&u, |&(v, _)| v)
            .ok()
            .map(|i| self.coreness[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.coreness.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.coreness.is_empty()
    }

    /// The `k`-core: vertices with coreness at least `k`, sorted.
    pub fn core(&self, k: u32) -> Vec<VertexId> {
        self.coreness
            .iter()
            .filter(|&&(_, c)| c >= k)
            .map(|&(v, _)| v)
            .collect()
    }
}

/// Coreness of every vertex of the static graph `(vertices, edges)`.
///
/// `vertices` must be sorted and free of duplicates. Runs in
/// `O(|vertices| + |edges| log |vertices|)`; the log factor comes from
/// mapping global ids onto the local vertex slice.
///
/// # Panics
///
/// Panics if an edge endpoint is not in `vertices`.
pub fn core_decomposition(vertices: &[VertexId], edges: &[Edge]) -> CoreLabeling {
    debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]), "vertices must be sorted");
    let n = vertices.len();
    if n == 0 || edges.is_empty() {
        return CoreLabeling::default();
    }
    let local = |u: VertexId| {
        vertices
            .binary_search(&u)
            .unwrap_or_else(|_| panic!("edge endpoint {u} outside the vertex set"))
    };

    // CSR adjacency.
    let mut degree = vec![0usize; n];
    let ends: Vec<(usize, usize)> = edges
        .iter()
        .map(|e| {
            let (a, b) = (local(e.low()), local(e.high()));
            degree[a] += 1;
            degree[b] += 1;
            (a, b)
        })
        .collect();
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + degree[i];
    }
    let mut fill = offset.clone();
    let mut adj = vec![0usize; offset[n]];
    for &(a, b) in &ends {
        adj[fill[a]] = b;
        fill[a] += 1;
        adj[fill[b]] = a;
        fill[b] += 1;
    }

    // Bin sort by degree, ascending id within a bin.
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        vert[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in &adj[offset[v]..offset[v + 1]] {
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }

    let coreness: Vec<(VertexId, u32)> = vertices
        .iter()
        .zip(&degree)
        .filter(|(_, &k)| k > 0)
        .map(|(&u, &k)| (u, k as u32))
        .collect();
    let max_order = coreness.iter().map(|&(_, k)| k).max().unwrap_or(0);
    CoreLabeling {
        coreness,
        max_order,
    }
}

/// The non-empty core of largest order, `(k*, members)`. An edgeless input
/// yields `(0, [])`.
pub fn innermost_core(vertices: &[VertexId], edges: &[Edge]) -> (u32, Vec<VertexId>) {
    let labeling = core_decomposition(vertices, edges);
    let k = labeling.max_order();
    if k == 0 {
        return (0, Vec::new());
    }
    (k, labeling.core(k))
}
