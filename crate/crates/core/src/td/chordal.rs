use alloc::vec;
use alloc::vec::Vec;

use super::TreeDecomposition;
use crate::graph::{Graph, VertexSet};

/// Maximum cardinality search: repeatedly visit the unvisited vertex with
/// the most visited neighbours (lowest id on ties). Returns the visit order.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], core::cmp::Reverse(v)))
            .expect("unvisited vertex");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

/// True iff, for every vertex, its neighbours later in `order` form a clique.
pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    order.iter().enumerate().all(|(i, &v)| {
        let later: VertexSet = g.neighbors(v).iter().copied().filter(|&w| position[w] > i).collect();
        g.is_clique(&later)
    })
}

/// Clique tree of a chordal graph: bags are the maximal cliques, joined by
/// a maximum-weight spanning tree of the clique intersection graph.
/// `None` when the graph is not chordal.
pub fn clique_tree(g: &Graph) -> Option<TreeDecomposition> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    if !is_perfect_elimination_order(g, &peo) {
        return None;
    }
    let mut position = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        position[v] = i;
    }
    let candidates: Vec<VertexSet> = peo
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            core::iter::once(v)
                .chain(g.neighbors(v).iter().copied().filter(|&w| position[w] > i))
                .collect()
        })
        .collect();
    let mut cliques: Vec<VertexSet> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && c.is_subset(d) && (c.len() < d.len() || j < i));
        if !dominated {
            cliques.push(c.clone());
        }
    }
    cliques.sort();

    // Prim's algorithm for a maximum-weight spanning tree.
    let k = cliques.len();
    let mut in_tree = vec![false; k];
    let mut best: Vec<(usize, usize)> = vec![(0, 0); k];
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    in_tree[0] = true;
    for j in 1..k {
        best[j] = (cliques[0].intersection(&cliques[j]).len(), 0);
    }
    for _ in 1..k {
        let next = (0..k)
            .filter(|&j| !in_tree[j])
            .max_by_key(|&j| (best[j].0, core::cmp::Reverse(j)))
            .expect("bag outside the tree");
        in_tree[next] = true;
        edges.push((best[next].1, next));
        for j in 0..k {
            if !in_tree[j] {
                let w = cliques[next].intersection(&cliques[j]).len();
                if w > best[j].0 {
                    best[j] = (w, next);
                }
            }
        }
    }
    let t = TreeDecomposition::new(cliques, edges);
    debug_assert_eq!(t.validate(g), Ok(()));
    Some(t)
}
