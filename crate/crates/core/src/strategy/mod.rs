//! Playable cop controllers built from tree decompositions, robber
//! policies, and the simulator that pits them against each other.

mod clique;
mod layout;
mod leap;
mod relay;
pub mod robber;
mod sim;
mod table;
mod team;

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::Graph;

pub use clique::CliqueTreeController;
pub use layout::{capture_time_bound, measure_g_tr, BagLayout, CaptureTimeBoundReport, Slot};
pub use leap::LeapController;
pub use relay::RelayController;
pub use robber::{GreedyRobber, RandomRobber, RushImage, StationaryRobber, TableRobber};
pub use sim::{never_reenter_violations, simulate, Outcome, Round, SimulationTrace};
pub use table::TableController;

/// Controller state worth recording next to a round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Annotation {
    /// Bag whose cover is currently guarded and bounds the robber's region.
    pub frontier: Option<usize>,
    /// Bag the moving team is heading for.
    pub toward: Option<usize>,
    pub phase: String,
}

pub trait CopController {
    fn cop_count(&self) -> usize;
    /// Round-0 placement.
    fn place(&mut self) -> Result<Vec<usize>>;
    /// New positions (same cop order) given the current ones and the robber.
    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>>;
    fn annotation(&self) -> Option<Annotation> {
        None
    }
}

pub trait RobberPolicy {
    /// Round-0 placement, made after seeing the cops.
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize;
    /// Next vertex (a neighbour or the current one); `None` quits the game.
    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize) -> Option<usize>;
}

/// If a cop can reach the robber this move, send the first such cop there
/// and keep everyone else still.
pub(crate) fn capture_move(g: &Graph, cops: &[usize], robber: usize) -> Option<Vec<usize>> {
    let i = cops.iter().position(|&c| g.adjacent_or_equal(c, robber))?;
    let mut out = cops.to_vec();
    out[i] = robber;
    Some(out)
}

/// First vertex on a shortest path from `from` to `to` (lowest id among
/// the candidates), or `from` itself when already there.
pub(crate) fn step_toward(g: &Graph, dist: &crate::graph::DistanceMatrix, from: usize, to: usize) -> usize {
    if from == to {
        return from;
    }
    let d = dist.get(from, to);
    g.neighbors(from)
        .iter()
        .copied()
        .find(|&w| dist.get(w, to) + 1 == d)
        .unwrap_or(from)
}

/// Neighbour of bag `from` on the tree path towards the bags containing
/// `robber`; `None` when `from` itself contains the robber.
pub(crate) fn next_bag_toward(t: &crate::td::TreeDecomposition, adj: &[Vec<usize>], from: usize, robber: usize) -> Option<usize> {
    let home = t.robber_subtree(robber);
    if home.is_empty() || home.contains(&from) {
        return None;
    }
    let mut parent = alloc::vec![usize::MAX; t.num_bags()];
    parent[from] = from;
    let mut queue = alloc::collections::VecDeque::from([from]);
    while let Some(b) = queue.pop_front() {
        if home.contains(&b) {
            let mut step = b;
            while parent[step] != from {
                step = parent[step];
            }
            return Some(step);
        }
        for &c in &adj[b] {
            if parent[c] == usize::MAX {
                parent[c] = b;
                queue.push_back(c);
            }
        }
    }
    None
}
