use itertools::Itertools;
use proptest::prelude::*;

use tightframe::allocation::MarkovChain;
use tightframe::graph::blow_up;
use tightframe::hypergraph::{build_clique_hypergraph, hat_graph, is_clique_of};
use tightframe::matching::{integer_flow_allocate, max_fractional_matching, sparsify_matching};
use tightframe::oracle::{overlap_components, verify_power_ham_cycle};
use tightframe::walks::{closed_walk_all_edges, verify_walk, TightAnalysis};
use tightframe::{Graph, KGraph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn kgraph(max_n: usize) -> impl Strategy<Value = KGraph> {
    (2usize..=3, 3..=max_n).prop_flat_map(|(k, n)| {
        let sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let len = sets.len();
        prop::collection::vec(prop::bool::weighted(0.3), len).prop_map(move |keep| {
            let edges = sets.iter().zip(&keep).filter(|(_, &b)| b).map(|(e, _)| e.clone()).collect();
            KGraph::new(k, n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(g in graph(12)) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(Graph::parse_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn kgraph_json_round_trip(h in kgraph(8)) {
        prop_assert_eq!(KGraph::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn cliques_are_cliques(g in graph(9), k in 2usize..=4) {
        let h = build_clique_hypergraph(&g, k);
        for e in h.edges() {
            prop_assert!(e.iter().tuple_combinations().all(|(&a, &b)| g.has_edge(a, b)));
        }
        let brute = (0..g.n()).combinations(k).filter(|s| s.iter().tuple_combinations().all(|(&a, &b)| g.has_edge(a, b))).count();
        prop_assert_eq!(h.edge_count(), brute);
    }

    #[test]
    fn components_match_overlap_oracle(h in kgraph(8)) {
        let a = TightAnalysis::new(&h).unwrap();
        let (labels, count) = overlap_components(&h);
        prop_assert_eq!(count, a.component_count);
        for (e, f) in (0..h.edge_count()).tuple_combinations() {
            prop_assert_eq!(labels[e] == labels[f], a.component_of_edge[e] == a.component_of_edge[f]);
        }
    }

    #[test]
    fn matching_meets_its_cover(h in kgraph(8)) {
        let m = max_fractional_matching(&h);
        prop_assert!(m.verify(&h).is_ok());
        prop_assert!(m.verify_cover(&h));
    }

    #[test]
    fn sparsify_keeps_loads(g in graph(9)) {
        let h = build_clique_hypergraph(&g, 2);
        let m = max_fractional_matching(&h);
        if m.is_perfect(&h) {
            let s = sparsify_matching(&h, &m).unwrap();
            prop_assert_eq!(s.loads(h.n()), m.loads(h.n()));
            prop_assert!(s.support() <= h.n());
        }
    }

    #[test]
    fn flow_hits_demand(g in graph(9), seed in any::<u64>()) {
        let h = build_clique_hypergraph(&g, 2);
        if h.n() >= 2 && hat_graph(&h).is_connected() {
            let n = h.n();
            let mut b = vec![0i64; n];
            let (x, y) = ((seed % n as u64) as usize, (seed / 7 % n as u64) as usize);
            if x != y {
                b[x] = 2;
                b[y] = -2;
            }
            let w = integer_flow_allocate(&h, &b, 2).unwrap();
            prop_assert_eq!(w.loads(&h), b);
            prop_assert!(w.max_abs <= 2 * 2 * (n * n) as i64);
        }
    }

    #[test]
    fn covering_walks_verify(g in graph(7), k in 2usize..=3, cong in 0usize..3) {
        let h = build_clique_hypergraph(&g, k);
        let a = TightAnalysis::new(&h).unwrap();
        if h.edge_count() > 0 && a.is_tightly_connected() && a.period(0).unwrap().aperiodic_mod_k {
            let cong = cong % k;
            let w = closed_walk_all_edges(&h, Some(cong)).unwrap();
            prop_assert!(verify_walk(&h, &w));
            prop_assert_eq!(w.length % k, cong);
            prop_assert_eq!(w.visited_edges.len(), h.edge_count());
        }
    }

    #[test]
    fn markov_rows_and_stationarity(k in 2usize..=5, m in 1usize..=9) {
        let c = MarkovChain::new(k, m).unwrap();
        prop_assert!(c.rows_stochastic());
        prop_assert!(c.is_stationary(&c.stationary()));
    }

    #[test]
    fn cycle_powers_verify(n in 5usize..30, p in 1usize..3) {
        let k = p + 1;
        if n > 2 * p {
            let g = Graph::cycle_power(n, p);
            let order: Vec<usize> = (0..n).collect();
            prop_assert!(verify_power_ham_cycle(&g, &order, k).unwrap());
        }
    }

    #[test]
    fn blow_up_counts(sizes in prop::collection::vec(1usize..4, 2..5)) {
        let base = Graph::complete(sizes.len());
        let g = blow_up(&base, &sizes).unwrap();
        let n: usize = sizes.iter().sum();
        let within: usize = sizes.iter().map(|s| s * (s - 1) / 2).sum();
        prop_assert_eq!(g.n(), n);
        prop_assert_eq!(g.edge_count(), n * (n - 1) / 2 - within);
        let h = build_clique_hypergraph(&g, sizes.len());
        if let Some(e) = h.edges().first() {
            prop_assert!(is_clique_of(&build_clique_hypergraph(&g, sizes.len() - 1), e));
        }
    }
}
