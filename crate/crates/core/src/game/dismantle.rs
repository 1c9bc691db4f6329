use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Result of greedily deleting dominated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dismantling {
    /// Vertices in deletion order; when `complete`, the last entry is the
    /// surviving vertex.
    pub order: Vec<usize>,
    pub complete: bool,
}

/// Cop-win test by dismantling: repeatedly delete a vertex whose closed
/// neighbourhood lies inside another vertex's closed neighbourhood.
///
/// Deleting a dominated vertex leaves a retract, so the greedy choice never
/// blocks a dismantling that exists.
pub fn is_copwin_dismantlable(g: &Graph) -> Dismantling {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut remaining = n;
    while remaining > 1 {
        let dominated = (0..n).filter(|&u| alive[u]).find(|&u| {
            (0..n).any(|v| {
                v != u
                    && alive[v]
                    && g.adjacent(u, v)
                    && g.neighbors(u).iter().all(|&w| !alive[w] || g.adjacent_or_equal(w, v))
            })
        });
        match dominated {
            Some(u) => {
                alive[u] = false;
                order.push(u);
                remaining -= 1;
            }
            None => break,
        }
    }
    let complete = remaining <= 1;
    if complete {
        order.extend((0..n).filter(|&v| alive[v]));
    }
    Dismantling { order, complete }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn cliques_and_trees_dismantle() {
        assert!(is_copwin_dismantlable(&generate::clique(6)).complete);
        assert!(is_copwin_dismantlable(&generate::path(7)).complete);
        let d = is_copwin_dismantlable(&generate::k_tree(3, 10, 2).unwrap());
        assert!(d.complete);
        assert_eq!(d.order.len(), 10);
    }

    #[test]
    fn cycles_do_not() {
        let d = is_copwin_dismantlable(&generate::cycle(4));
        assert!(!d.complete);
        assert!(d.order.is_empty());
        assert!(!is_copwin_dismantlable(&generate::petersen()).complete);
    }
}
