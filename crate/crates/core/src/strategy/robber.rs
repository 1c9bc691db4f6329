//! Robber policies.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::RobberPolicy;
use crate::game::GameSolution;
use crate::graph::{Graph, VertexSet};

fn min_distance(dist_rows: &[Vec<u32>], v: usize) -> u32 {
    dist_rows.iter().map(|row| row[v]).min().unwrap_or(u32::MAX)
}

fn cop_rows(g: &Graph, cops: &[usize]) -> Vec<Vec<u32>> {
    cops.iter().map(|&c| g.bfs(c)).collect()
}

/// Vertex of `candidates` farthest from the nearest cop (lowest id on ties).
fn farthest(g: &Graph, cops: &[usize], candidates: impl Iterator<Item = usize>) -> Option<usize> {
    let rows = cop_rows(g, cops);
    candidates.max_by_key(|&v| (min_distance(&rows, v), core::cmp::Reverse(v)))
}

/// Starts as far from the cops as possible and never moves.
#[derive(Debug, Clone, Copy, Default)]
pub struct StationaryRobber;

impl RobberPolicy for StationaryRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        farthest(g, cops, 0..g.n()).expect("nonempty graph")
    }

    fn step(&mut self, _: &Graph, _: &[usize], robber: usize) -> Option<usize> {
        Some(robber)
    }
}

/// Moves to the closed neighbour maximising the distance to the nearest cop.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyRobber;

impl RobberPolicy for GreedyRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        farthest(g, cops, 0..g.n()).expect("nonempty graph")
    }

    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize) -> Option<usize> {
        farthest(g, cops, g.closed_neighbors(robber))
    }
}

/// Uniform choice among closed neighbours that are not next to a cop, then
/// among those not occupied by one, then staying put.
#[derive(Debug, Clone)]
pub struct RandomRobber {
    rng: ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        RandomRobber {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn pick(&mut self, g: &Graph, cops: &[usize], options: Vec<usize>) -> Option<usize> {
        let safe: Vec<usize> = options
            .iter()
            .copied()
            .filter(|&v| !cops.iter().any(|&c| g.adjacent_or_equal(c, v)))
            .collect();
        if let Some(&v) = safe.choose(&mut self.rng) {
            return Some(v);
        }
        let free: Vec<usize> = options.iter().copied().filter(|v| !cops.contains(v)).collect();
        free.choose(&mut self.rng).copied()
    }
}

impl RobberPolicy for RandomRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        self.pick(g, cops, (0..g.n()).collect()).unwrap_or(0)
    }

    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize) -> Option<usize> {
        Some(self.pick(g, cops, g.closed_neighbors(robber).collect()).unwrap_or(robber))
    }
}

/// Plays from a solved game: maximises the cops' remaining capture time.
/// Falls back to the greedy policy when the position is outside the table
/// (different cop count or cops off the arena).
#[derive(Debug, Clone)]
pub struct TableRobber {
    solution: Arc<GameSolution>,
}

impl TableRobber {
    pub fn new(solution: Arc<GameSolution>) -> Self {
        TableRobber { solution }
    }
}

impl RobberPolicy for TableRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        self.solution
            .robber_placement(cops)
            .unwrap_or_else(|_| GreedyRobber.place(g, cops))
    }

    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize) -> Option<usize> {
        Some(
            self.solution
                .robber_move(cops, robber)
                .unwrap_or_else(|_| GreedyRobber.step(g, cops, robber).unwrap_or(robber)),
        )
    }
}

/// Heads straight for the nearest vertex of a target set and stays there.
#[derive(Debug, Clone)]
pub struct RushImage {
    target: VertexSet,
}

impl RushImage {
    pub fn new(target: VertexSet) -> Self {
        RushImage { target }
    }
}

impl RobberPolicy for RushImage {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        farthest(g, cops, 0..g.n()).expect("nonempty graph")
    }

    fn step(&mut self, g: &Graph, _: &[usize], robber: usize) -> Option<usize> {
        if self.target.contains(robber) {
            return Some(robber);
        }
        let d = g.bfs(robber);
        let goal = self.target.iter().min_by_key(|&t| (d[t], t))?;
        let back = g.bfs(goal);
        Some(
            g.neighbors(robber)
                .iter()
                .copied()
                .find(|&w| back[w] + 1 == back[robber])
                .unwrap_or(robber),
        )
    }
}
