use std::sync::Arc;

use pursuit_core::cover::{theorem1_bound, theorem_main2_bound, BagCovers, PoolBuilder, PoolLimits, RccMode};
use pursuit_core::game::{solve_arena, Arena, DEFAULT_STATE_BUDGET};
use pursuit_core::generate;
use pursuit_core::strategy::{
    capture_time_bound, measure_g_tr, never_reenter_violations, simulate, CliqueTreeController, CopController,
    GreedyRobber, LeapController, Outcome, RandomRobber, RelayController, RobberPolicy, StationaryRobber,
    TableRobber,
};
use pursuit_core::td::{clique_tree, grid_path_decomposition};
use pursuit_core::{Graph, TreeDecomposition, VertexSet};

fn covers(g: &Graph, t: &TreeDecomposition) -> BagCovers {
    BagCovers::compute(g, t, &mut PoolBuilder::new(g, PoolLimits::default()), RccMode::Exact).unwrap()
}

fn optimal(g: &Graph, k: usize) -> TableRobber {
    TableRobber::new(Arc::new(solve_arena(&Arena::full(g), k, DEFAULT_STATE_BUDGET).unwrap()))
}

fn edge_bags(g: &Graph) -> TreeDecomposition {
    // one bag per edge, joined to the first earlier edge it touches
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let bags: Vec<VertexSet> = edges.iter().map(|&(u, v)| [u, v].into_iter().collect()).collect();
    let mut tree = Vec::new();
    for i in 0..bags.len() {
        if let Some(j) = (0..i).find(|&j| !bags[i].intersection(&bags[j]).is_empty()) {
            tree.push((j, i));
        }
    }
    TreeDecomposition::new(bags, tree)
}

fn glued_four_cycles() -> (Graph, TreeDecomposition) {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 1)]).unwrap();
    let t = TreeDecomposition::new(
        vec![[0, 1, 2, 3].into_iter().collect(), [0, 1, 4, 5].into_iter().collect()],
        vec![(0, 1)],
    );
    (g, t)
}

#[test]
fn leap_beats_the_optimal_robber_on_a_grid() {
    let g = generate::grid(4, 4);
    let t = grid_path_decomposition(4).unwrap();
    let bc = covers(&g, &t);
    let (g_t, tr_t) = measure_g_tr(&g, &t, &bc.per_bag).unwrap();
    let bound = capture_time_bound(t.centre_and_diameter().1, g_t, tr_t).applicable() as usize;
    let mut c = LeapController::new(&g, &t, &bc.per_bag).unwrap();
    assert_eq!(c.cop_count(), 2);
    let trace = simulate(&g, &mut c, &mut optimal(&g, 2), bound).unwrap();
    assert_eq!(trace.outcome, Outcome::Captured);
    assert!(never_reenter_violations(&trace, &t).is_empty());
}

#[test]
fn stationary_robber_is_caught_quickly() {
    let g = generate::grid(3, 3);
    let t = grid_path_decomposition(3).unwrap();
    let bc = covers(&g, &t);
    let (g_t, tr_t) = measure_g_tr(&g, &t, &bc.per_bag).unwrap();
    let bound = capture_time_bound(t.centre_and_diameter().1, g_t, tr_t);
    assert!(bound.g_t >= 1 && bound.tr_t >= 1);
    let mut c = LeapController::new(&g, &t, &bc.per_bag).unwrap();
    let trace = simulate(&g, &mut c, &mut StationaryRobber, bound.applicable() as usize).unwrap();
    assert_eq!(trace.outcome, Outcome::Captured);
}

#[test]
fn single_bag_has_no_relocation_cost() {
    let g = generate::clique(4);
    let t = TreeDecomposition::trivial(&g);
    let bc = covers(&g, &t);
    let (g_t, tr_t) = measure_g_tr(&g, &t, &bc.per_bag).unwrap();
    assert_eq!(tr_t, 0);
    assert_eq!(g_t, 1);
    assert_eq!(capture_time_bound(0, g_t, tr_t).applicable(), 1);
}

#[test]
fn clique_tree_on_trees_matches_the_optimal_robber() {
    for seed in 0..5 {
        let g = generate::random_connected(9, 0.0, seed);
        let t = edge_bags(&g);
        t.validate(&g).unwrap();
        let mut c = CliqueTreeController::new(&g, &t).unwrap();
        let trace = simulate(&g, &mut c, &mut optimal(&g, 1), 50).unwrap();
        assert_eq!(trace.outcome, Outcome::Captured);
        assert!(never_reenter_violations(&trace, &t).is_empty());
    }
}

#[test]
fn clique_tree_catches_immediately_on_a_clique() {
    let g = generate::clique(6);
    let t = clique_tree(&g).unwrap();
    let mut c = CliqueTreeController::new(&g, &t).unwrap();
    let trace = simulate(&g, &mut c, &mut GreedyRobber, 5).unwrap();
    assert!(trace.capture_round.unwrap() <= 1);
}

#[test]
fn relay_needs_one_cop_fewer_than_leap() {
    let (g, t) = glued_four_cycles();
    let mut b = PoolBuilder::new(&g, PoolLimits { exhaustive_up_to: 0, ..PoolLimits::default() });
    let (thm1, bc) = theorem1_bound(&g, &t, &mut b, RccMode::Exact).unwrap();
    let (main2, _) = theorem_main2_bound(&g, &t, &mut b, RccMode::Exact).unwrap().unwrap();
    assert_eq!((thm1, main2), (4, 3));

    let mut relay = RelayController::new(&g, &t, &bc.per_bag).unwrap();
    assert_eq!(relay.cop_count(), 3);
    let mut leap = LeapController::new(&g, &t, &bc.per_bag).unwrap();
    assert_eq!(leap.cop_count(), 4);
    for (c, k) in [(&mut relay as &mut dyn CopController, 3), (&mut leap, 4)] {
        let trace = simulate(&g, c, &mut optimal(&g, k), 100).unwrap();
        assert_eq!(trace.outcome, Outcome::Captured);
    }
}

#[test]
fn relay_on_a_clique_tree_uses_two_cops() {
    for seed in 0..3 {
        let g = generate::k_tree(2, 10, seed).unwrap();
        let t = clique_tree(&g).unwrap();
        let bc = covers(&g, &t);
        assert_eq!(bc.max_rcc, 1);
        let policies: Vec<Box<dyn RobberPolicy>> =
            vec![Box::new(optimal(&g, 2)), Box::new(GreedyRobber), Box::new(RandomRobber::new(seed))];
        for mut p in policies {
            let mut c = RelayController::new(&g, &t, &bc.per_bag).unwrap();
            assert_eq!(c.cop_count(), 2);
            let trace = simulate(&g, &mut c, p.as_mut(), 100).unwrap();
            assert_eq!(trace.outcome, Outcome::Captured);
            assert!(never_reenter_violations(&trace, &t).is_empty());
        }
    }
}

#[test]
fn controllers_reject_bad_input() {
    let g = generate::grid(3, 3);
    let t = grid_path_decomposition(3).unwrap();
    assert!(!t.pairwise_clique_intersections(&g));
    let bc = covers(&g, &t);
    assert!(RelayController::new(&g, &t, &bc.per_bag).is_err());
    assert!(CliqueTreeController::new(&g, &t).is_err());
    assert!(LeapController::new(&g, &t, &bc.per_bag[..2]).is_err());
}
