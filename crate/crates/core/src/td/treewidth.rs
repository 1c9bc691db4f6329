use alloc::vec;
use alloc::vec::Vec;

use super::TreeDecomposition;
use crate::graph::{Graph, VertexSet};

/// Largest vertex count solved exactly by [`treewidth_exact`] by default.
pub const DEFAULT_EXACT_LIMIT: usize = 16;

/// Hard ceiling for the subset DP (table has `2^n` entries).
const MAX_EXACT: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreewidthResult {
    pub width: usize,
    pub witness: TreeDecomposition,
    /// False when the graph exceeded the exact limit and `width` is only
    /// the width of a min-degree elimination.
    pub optimal: bool,
}

/// Treewidth by dynamic programming over vertex subsets:
///
/// `TW(S) = min_{v ∈ S} max(TW(S \ v), |Q(S \ v, v)|)`
///
/// where `Q(S, v)` is the set of vertices outside `S ∪ {v}` reachable from
/// `v` through `S`. The minimising choices give an elimination ordering,
/// from which the witness decomposition is built. Graphs above
/// `exact_limit` vertices fall back to a min-degree ordering.
pub fn treewidth_exact(g: &Graph, exact_limit: usize) -> TreewidthResult {
    let n = g.n();
    if n == 0 {
        return TreewidthResult {
            width: 0,
            witness: TreeDecomposition::new(vec![VertexSet::new()], Vec::new()),
            optimal: true,
        };
    }
    if n > exact_limit.min(MAX_EXACT) {
        let witness = decomposition_from_elimination(g, &min_degree_order(g));
        return TreewidthResult {
            width: witness.width(),
            witness,
            optimal: false,
        };
    }
    let order = exact_order(g);
    let witness = decomposition_from_elimination(g, &order);
    TreewidthResult {
        width: witness.width(),
        witness,
        optimal: true,
    }
}

fn exact_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut best_v = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = s & !(1 << v);
            let prev = tw[before as usize];
            if prev >= best {
                continue;
            }
            let q = q_set(&adj, before, v).count_ones() as u8;
            let cost = prev.max(q);
            if cost < best {
                best = cost;
                best_v = v;
            }
        }
        tw[s as usize] = best;
        choice[s as usize] = best_v as u8;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

/// Vertices outside `eliminated ∪ {v}` reachable from `v` through `eliminated`.
fn q_set(adj: &[u32], eliminated: u32, v: usize) -> u32 {
    let mut comp = 1u32 << v;
    let mut frontier = adj[v] & eliminated;
    while frontier != 0 {
        comp |= frontier;
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[u];
        }
        frontier = next & eliminated & !comp;
    }
    let mut reach = 0;
    let mut c = comp;
    while c != 0 {
        let u = c.trailing_zeros() as usize;
        c &= c - 1;
        reach |= adj[u];
    }
    reach & !eliminated & !(1 << v)
}

/// Greedy ordering that always eliminates a vertex of minimum degree in the
/// current fill graph (lowest id on ties).
pub fn min_degree_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut fill: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.adjacent(u, v)).collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (0..n).filter(|&w| alive[w] && fill[v][w]).count())
            .expect("vertex left");
        let nb: Vec<usize> = (0..n).filter(|&w| alive[w] && fill[v][w]).collect();
        for &a in &nb {
            for &b in &nb {
                if a != b {
                    fill[a][b] = true;
                }
            }
        }
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Decomposition induced by eliminating vertices in `order`: the bag of `v`
/// is `v` plus its not-yet-eliminated neighbours in the fill graph, hung
/// below the bag of the first of those neighbours to be eliminated.
pub fn decomposition_from_elimination(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex");
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut fill: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.adjacent(u, v)).collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = (0..n).filter(|&w| fill[v][w] && position[w] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    fill[a][b] = true;
                }
            }
        }
        parent[i] = later.iter().map(|&w| position[w]).min();
        bags.push(core::iter::once(v).chain(later).collect::<VertexSet>());
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => edges.push((i, *p)),
            None => roots.push(i),
        }
    }
    // Separate components hang off each other through empty intersections.
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges).simplify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn known_treewidths() {
        assert_eq!(treewidth_exact(&generate::clique(6), 16).width, 5);
        assert_eq!(treewidth_exact(&generate::cycle(7), 16).width, 2);
        assert_eq!(treewidth_exact(&generate::path(9), 16).width, 1);
        let grid = treewidth_exact(&generate::grid(4, 4), 16);
        assert_eq!(grid.width, 4);
        assert!(grid.optimal);
        assert_eq!(treewidth_exact(&generate::grid(3, 3), 16).width, 3);
        assert_eq!(treewidth_exact(&generate::petersen(), 16).width, 4);
    }

    #[test]
    fn witnesses_validate() {
        for seed in 0..20 {
            let g = generate::random(9, 0.35, seed);
            let r = treewidth_exact(&g, 16);
            assert_eq!(r.witness.validate(&g), Ok(()));
            assert_eq!(r.witness.width(), r.width);
            let greedy = treewidth_exact(&g, 0);
            assert!(!greedy.optimal);
            assert_eq!(greedy.witness.validate(&g), Ok(()));
            assert!(greedy.width >= r.width);
        }
    }

    #[test]
    fn trees_have_edge_bags() {
        let g = generate::random_connected(10, 0.0, 4);
        let r = treewidth_exact(&g, 16);
        assert_eq!(r.width, 1);
        assert!(r.witness.bags().iter().all(|b| b.len() == 2));
    }
}
