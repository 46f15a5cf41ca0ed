//! Property tests: engine equivalence against the brute-force oracle and
//! the structural invariants of every output.

use std::collections::BTreeSet;

use proptest::prelude::*;
use spancore::analysis::{
    activity_grid, core_purity, detect_anomalies, reshuffle_timestamps, AnomalyParams,
    AttributeTable,
};
use spancore::generate::markov_temporal;
use spancore::oracle::{all_span_cores, intersect_edges, maximal_of, triples};
use spancore::{
    dominates, innermost_core, maximal_span_cores, maximal_span_cores_traced,
    naive_maximal_span_cores, naive_span_cores, span_cores, Interval, TemporalGraph, VertexId,
};

fn arb_temporal() -> impl Strategy<Value = TemporalGraph> {
    (
        any::<u64>(),
        2usize..=14,
        1usize..=6,
        0.05f64..0.4,
        prop_oneof![Just(None), (0.3f64..0.95).prop_map(Some)],
    )
        .prop_map(|(seed, n, t, p, persistence)| {
            markov_temporal(seed, n, t, p, persistence.unwrap_or(p))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn full_engines_match_oracle(g in arb_temporal()) {
        let expected = all_span_cores(&g);
        let pruned = span_cores(&g);
        let naive = naive_span_cores(&g);
        prop_assert_eq!(&triples(&pruned.cores), &expected);
        prop_assert_eq!(&triples(&naive.cores), &expected);
        prop_assert_eq!(&pruned.cores, &naive.cores);
        prop_assert!(pruned.metrics.processed_vertices <= naive.metrics.processed_vertices);
    }

    #[test]
    fn maximal_engines_match_oracle(g in arb_temporal()) {
        let expected = maximal_of(&all_span_cores(&g));
        let direct = maximal_span_cores(&g);
        let filter = naive_maximal_span_cores(&g);
        prop_assert_eq!(&triples(&direct.cores), &expected);
        prop_assert_eq!(&triples(&filter.cores), &expected);
        prop_assert!(direct.metrics.processed_vertices <= filter.metrics.processed_vertices);
    }

    #[test]
    fn containment_between_cores(g in arb_temporal()) {
        let cores = span_cores(&g).cores;
        for a in &cores {
            for b in &cores {
                // a = C_{k,Δ}, b = C_{k',Δ'} with k' <= k and Δ' ⊑ Δ.
                if b.order <= a.order && b.span.is_within(a.span) {
                    prop_assert!(a.members.iter().all(|u| b.members.binary_search(u).is_ok()));
                }
            }
        }
    }

    #[test]
    fn orders_per_span_are_contiguous(g in arb_temporal()) {
        let cores = span_cores(&g).cores;
        let spans: BTreeSet<Interval> = cores.iter().map(|c| c.span).collect();
        for s in spans {
            let orders: Vec<u32> = cores.iter().filter(|c| c.span == s).map(|c| c.order).collect();
            prop_assert_eq!(orders, (1..=cores.iter().filter(|c| c.span == s).count() as u32).collect::<Vec<_>>());
        }
    }

    #[test]
    fn maximal_is_antichain_of_innermost_cores(g in arb_temporal()) {
        let (r, trace) = maximal_span_cores_traced(&g);
        let all: Vec<VertexId> = g.vertices().collect();
        for (i, a) in r.cores.iter().enumerate() {
            for (j, b) in r.cores.iter().enumerate() {
                prop_assert!(i == j || !dominates(a, b));
            }
            let edges = g.edges_in_interval(a.span);
            prop_assert_eq!(innermost_core(&all, &edges), (a.order, a.members.clone()));
        }
        // One kernel call per interval at most, supersets first.
        let spans: Vec<Interval> = trace.steps.iter().map(|s| s.span).collect();
        let unique: BTreeSet<Interval> = spans.iter().copied().collect();
        prop_assert_eq!(unique.len(), spans.len());
        for (i, a) in spans.iter().enumerate() {
            prop_assert!(spans[i + 1..].iter().all(|b| !(a.is_within(*b) && a != b)));
        }
    }

    #[test]
    fn interval_edges_and_diff_sets(g in arb_temporal()) {
        for t_s in 0..=g.t_max() {
            for t_e in t_s..=g.t_max() {
                let span = Interval::new(t_s, t_e);
                let got: BTreeSet<_> = g.edges_in_interval(span).into_iter().collect();
                prop_assert_eq!(&got, &intersect_edges(&g, span));
                if t_e > t_s {
                    // Anti-monotone in the span.
                    let smaller: BTreeSet<_> = g.edges_in_interval(Interval::new(t_s, t_e - 1)).into_iter().collect();
                    prop_assert!(got.is_subset(&smaller));
                }
            }
            match g.edge_diff_sets(t_s) {
                None => prop_assert!(g.edges_at(t_s).is_empty()),
                Some(d) => {
                    prop_assert_eq!(d.stored_edges(), g.edges_at(t_s).len());
                    for t_e in t_s..=d.t_star() {
                        prop_assert_eq!(d.reconstruct(t_e), g.edges_in_interval(Interval::new(t_s, t_e)));
                    }
                    if d.t_star() < g.t_max() {
                        prop_assert!(g.edges_in_interval(Interval::new(t_s, d.t_star() + 1)).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn reshuffle_preserves_degree_sequences(g in arb_temporal(), seed in any::<u64>()) {
        let s = reshuffle_timestamps(&g, seed);
        prop_assert_eq!(s.vertex_count(), g.vertex_count());
        for t in 0..=g.t_max() {
            prop_assert_eq!(s.edges_at(t).len(), g.edges_at(t).len());
            let deg = |h: &TemporalGraph| {
                let mut d = vec![0usize; h.vertex_count()];
                for e in h.edges_at(t) {
                    d[e.low() as usize] += 1;
                    d[e.high() as usize] += 1;
                }
                d
            };
            prop_assert_eq!(deg(&s), deg(&g));
            prop_assert!(s.edges_at(t).windows(2).all(|w| w[0] < w[1]));
            prop_assert!(s.edges_at(t).iter().all(|e| e.low() != e.high()));
        }
    }

    #[test]
    fn purity_within_bounds(g in arb_temporal(), cats in 1usize..4) {
        let mut attrs = AttributeTable::new(vec!["group".into()]);
        for u in g.vertices() {
            attrs.insert(u, vec![format!("c{}", (u as usize * 7 + 3) % cats)]);
        }
        for core in maximal_span_cores(&g).cores {
            let (p, _) = core_purity(&core, &attrs, "group").unwrap();
            let p = p.unwrap();
            let present: BTreeSet<usize> = core.members.iter().map(|&u| (u as usize * 7 + 3) % cats).collect();
            prop_assert!(p <= 1.0 && p >= 1.0 / present.len() as f64 - 1e-12);
        }
    }

    #[test]
    fn anomaly_filter_monotone_in_tr(g in arb_temporal()) {
        let maximal = maximal_span_cores(&g);
        let mut prev: Option<(usize, usize)> = None;
        for tr in 1..=g.timestamp_count() as u32 + 1 {
            let r = detect_anomalies(&g, &maximal, AnomalyParams { tr, ratio: None }).unwrap();
            for t in 0..=g.t_max() {
                prop_assert!(r.removed_contacts[t as usize] <= g.edges_at(t).len());
            }
            let now = (r.anomalous_intervals.len(), r.total_removed());
            if let Some(p) = prev {
                prop_assert!(now.0 <= p.0 && now.1 <= p.1);
            }
            prev = Some(now);
        }
    }

    #[test]
    fn grid_matches_raw_cores(g in arb_temporal()) {
        let r = span_cores(&g);
        let grid = activity_grid(&r, 1);
        for cell in &grid {
            let best = r.cores.iter()
                .filter(|c| c.span.start() == cell.t_s && c.span.len() == cell.span)
                .map(|c| c.order)
                .max();
            prop_assert_eq!(best, Some(cell.k));
        }
        let cells: BTreeSet<(u32, u32)> = r.cores.iter().map(|c| (c.span.start(), c.span.len())).collect();
        prop_assert_eq!(cells.len(), grid.len());
    }
}

#[test]
fn determinism_of_serialized_output() {
    let g = markov_temporal(99, 20, 6, 0.25, 0.8);
    let render = |r: &spancore::DecompositionResult| {
        let mut out = Vec::new();
        spancore::io::write_cores(&mut out, r, g.labels(), spancore::io::CoreFormat::Csv, false).unwrap();
        out
    };
    assert_eq!(render(&span_cores(&g)), render(&span_cores(&g)));
    assert_eq!(render(&span_cores(&g)), render(&naive_span_cores(&g)));
    assert_eq!(render(&maximal_span_cores(&g)), render(&naive_maximal_span_cores(&g)));
}
