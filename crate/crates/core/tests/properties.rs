use proptest::prelude::*;

use pursuit_core::cover::{rcc, PoolBuilder, PoolLimits, RccMode};
use pursuit_core::game::{cop_number, DEFAULT_STATE_BUDGET};
use pursuit_core::generate;
use pursuit_core::td::{clique_tree, decomposition_from_elimination, min_degree_order, treewidth_exact};
use pursuit_core::{Graph, VertexSet, UNREACHABLE};

fn connected() -> impl Strategy<Value = Graph> {
    (2usize..10, 0.0f64..0.7, any::<u64>()).prop_map(|(n, p, s)| generate::random_connected(n, p, s))
}

fn any_graph() -> impl Strategy<Value = Graph> {
    (1usize..10, 0.0f64..0.6, any::<u64>()).prop_map(|(n, p, s)| generate::random(n, p, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_form_a_metric(g in any_graph()) {
        let d = g.distances();
        for u in 0..g.n() {
            prop_assert_eq!(d.get(u, u), 0);
            for v in 0..g.n() {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                for w in 0..g.n() {
                    let (a, b) = (d.get(u, w), d.get(w, v));
                    if a != UNREACHABLE && b != UNREACHABLE {
                        prop_assert!(d.get(u, v) <= a + b);
                    }
                }
            }
        }
    }

    #[test]
    fn bfs_paths_are_isometric(g in connected()) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                let p = g.shortest_path(u, v).unwrap();
                prop_assert!(g.is_isometric_path(&p).unwrap());
            }
        }
    }

    #[test]
    fn exact_treewidth_is_a_lower_bound(g in connected()) {
        let tw = treewidth_exact(&g, 16);
        prop_assert!(tw.optimal);
        prop_assert!(tw.witness.validate(&g).is_ok());
        prop_assert_eq!(tw.witness.width(), tw.width);
        let heuristic = decomposition_from_elimination(&g, &min_degree_order(&g));
        prop_assert!(heuristic.validate(&g).is_ok());
        prop_assert!(tw.width <= heuristic.width());
        if let Some(ct) = clique_tree(&g) {
            prop_assert!(ct.validate(&g).is_ok());
            prop_assert!(tw.width <= ct.width());
        }
    }

    #[test]
    fn chordal_graphs_are_cop_win(g in connected()) {
        if clique_tree(&g).is_some() {
            prop_assert_eq!(cop_number(&g, 1, DEFAULT_STATE_BUDGET).unwrap(), 1);
        }
    }

    #[test]
    fn greedy_never_beats_exact(g in connected(), pick in any::<u64>()) {
        let h: VertexSet = (0..g.n()).filter(|v| pick >> v & 1 == 1).collect();
        prop_assume!(!h.is_empty());
        let mut b = PoolBuilder::new(&g, PoolLimits::default());
        let pool = b.pool_for(&h, &[]).unwrap();
        let sub = g.induced(h).unwrap();
        let exact = rcc(&g, &sub, &pool, RccMode::Exact).unwrap();
        let greedy = rcc(&g, &sub, &pool, RccMode::Greedy).unwrap();
        prop_assert!(exact.value <= greedy.value);
        prop_assert_eq!(exact.cover.total_guards, exact.value);
    }

    #[test]
    fn rcc_is_monotone_in_the_target(g in connected(), pick in any::<u64>()) {
        let big: VertexSet = (0..g.n()).filter(|v| pick >> v & 1 == 1).collect();
        prop_assume!(big.len() >= 2);
        let small: VertexSet = big.iter().skip(1).collect();
        let mut b = PoolBuilder::new(&g, PoolLimits::default());
        let pb = b.pool_for(&big, &[]).unwrap();
        let ps = b.pool_for(&small, &[]).unwrap();
        prop_assume!(pb.complete && ps.complete);
        let vb = rcc(&g, &g.induced(big).unwrap(), &pb, RccMode::Exact).unwrap().value;
        let vs = rcc(&g, &g.induced(small).unwrap(), &ps, RccMode::Exact).unwrap().value;
        prop_assert!(vs <= vb);
    }

    #[test]
    fn extras_never_raise_rcc(g in connected(), pick in any::<u64>()) {
        let h: VertexSet = (0..g.n()).filter(|v| pick >> v & 1 == 1).collect();
        prop_assume!(!h.is_empty());
        let limits = PoolLimits { exhaustive_up_to: 0, ..PoolLimits::default() };
        let mut b = PoolBuilder::new(&g, limits);
        let sub = g.induced(h.clone()).unwrap();
        let plain = rcc(&g, &sub, &b.pool_for(&h, &[]).unwrap(), RccMode::Exact).unwrap().value;
        let all: VertexSet = (0..g.n()).collect();
        let wider = rcc(&g, &sub, &b.pool_for(&h, &[all]).unwrap(), RccMode::Exact).unwrap().value;
        prop_assert!(wider <= plain);
    }
}
