use alloc::vec;
use alloc::vec::Vec;

use super::{capture_move, next_bag_toward, step_toward, Annotation, CopController};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::td::TreeDecomposition;

/// One cop walking a clique tree: it sits in the frontier clique, steps into
/// the separator towards the robber, and the frontier advances.
#[derive(Debug, Clone)]
pub struct CliqueTreeController {
    g: Graph,
    t: TreeDecomposition,
    tree: Vec<Vec<usize>>,
    dist: DistanceMatrix,
    frontier: usize,
    next: Option<usize>,
}

impl CliqueTreeController {
    /// Every bag of `clique_tree` must be a clique of `g`.
    pub fn new(g: &Graph, clique_tree: &TreeDecomposition) -> Result<Self> {
        clique_tree.ensure_valid(g)?;
        if let Some(b) = clique_tree.bags().iter().position(|bag| !g.is_clique(bag)) {
            return Err(Error::Config(alloc::format!("bag {b} is not a clique")));
        }
        if g.n() == 0 {
            return Err(Error::InvalidInput("empty graph".into()));
        }
        let (centre, _) = clique_tree.centre_and_diameter();
        Ok(CliqueTreeController {
            g: g.clone(),
            tree: clique_tree.tree_adjacency(),
            t: clique_tree.clone(),
            dist: g.distances(),
            frontier: centre[0],
            next: None,
        })
    }
}

impl CopController for CliqueTreeController {
    fn cop_count(&self) -> usize {
        1
    }

    fn place(&mut self) -> Result<Vec<usize>> {
        let v = self.t.bag(self.frontier).iter().next().ok_or_else(|| Error::Internal("empty centre bag".into()))?;
        Ok(vec![v])
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>> {
        if let Some(m) = capture_move(&self.g, cops, robber) {
            return Ok(m);
        }
        let cop = cops[0];
        self.next = next_bag_toward(&self.t, &self.tree, self.frontier, robber);
        while let Some(nb) = self.next {
            if !self.t.bag(nb).contains(cop) {
                break;
            }
            self.frontier = nb;
            self.next = next_bag_toward(&self.t, &self.tree, nb, robber);
        }
        let Some(nb) = self.next else {
            return Err(Error::Internal("robber shares a clique with the cop".into()));
        };
        let sep = self.t.bag(self.frontier).intersection(self.t.bag(nb));
        let to = match sep.iter().next() {
            Some(v) => v,
            None => {
                let target = self.t.bag(nb).iter().min_by_key(|&v| self.dist.get(cop, v)).unwrap_or(cop);
                step_toward(&self.g, &self.dist, cop, target)
            }
        };
        let to = if self.g.adjacent_or_equal(cop, to) { to } else { step_toward(&self.g, &self.dist, cop, to) };
        Ok(vec![to])
    }

    fn annotation(&self) -> Option<Annotation> {
        Some(Annotation {
            frontier: Some(self.frontier),
            toward: self.next,
            phase: "clique tree".into(),
        })
    }
}
