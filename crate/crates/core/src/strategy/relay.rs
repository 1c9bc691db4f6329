use alloc::vec::Vec;

use super::layout::{layouts, BagLayout};
use super::team::Team;
use super::{capture_move, next_bag_toward, step_toward, Annotation, CopController};
use crate::cover::RccResult;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::td::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Opening,
    /// The team holds the frontier while the relay cop walks to the separator.
    Relay,
    /// The relay cop sits on the separator while the team moves on.
    Travel,
    /// The robber is inside the frontier bag.
    Hold,
}

/// One team of `m = max rcc` cops plus a relay cop, for decompositions whose
/// adjacent bags meet in cliques. The relay cop seals the clique separator
/// while the team relocates.
#[derive(Debug, Clone)]
pub struct RelayController {
    g: Graph,
    t: TreeDecomposition,
    tree: Vec<Vec<usize>>,
    dist: DistanceMatrix,
    covers: Vec<RccResult>,
    layouts: Vec<BagLayout>,
    team: Team,
    relay: usize,
    phase: Phase,
    frontier: Option<usize>,
    next: Option<usize>,
    relay_target: Option<usize>,
}

impl RelayController {
    pub fn new(g: &Graph, t: &TreeDecomposition, covers: &[RccResult]) -> Result<Self> {
        t.ensure_valid(g)?;
        if let Some(((a, b), (u, v))) = t.clique_intersection_witness(g) {
            return Err(Error::Config(alloc::format!(
                "bags {a} and {b} share non-adjacent vertices {u} and {v}"
            )));
        }
        let (m, layouts) = layouts(t, covers)?;
        let (centre, _) = t.centre_and_diameter();
        let c = centre[0];
        let mut team = Team::new((0..m).collect(), &layouts[c], &covers[c]);
        team.active = true;
        Ok(RelayController {
            g: g.clone(),
            tree: t.tree_adjacency(),
            t: t.clone(),
            dist: g.distances(),
            covers: covers.to_vec(),
            layouts,
            team,
            relay: m,
            phase: Phase::Opening,
            frontier: None,
            next: None,
            relay_target: None,
        })
    }

    fn plan(&mut self, cops: &[usize], robber: usize) {
        let f = self.team.bag;
        self.frontier = Some(f);
        self.next = next_bag_toward(&self.t, &self.tree, f, robber);
        let Some(nb) = self.next else {
            self.phase = Phase::Hold;
            self.relay_target = None;
            return;
        };
        let from = cops[self.relay];
        self.relay_target = self.t.bag(f).intersection(self.t.bag(nb)).iter().min_by_key(|&v| (self.dist.get(from, v), v));
        self.phase = Phase::Relay;
    }

    fn advance(&mut self, cops: &[usize], robber: usize) -> Result<()> {
        match self.phase {
            Phase::Opening if self.team.guarded() => self.plan(cops, robber),
            Phase::Hold => self.plan(cops, robber),
            Phase::Travel if self.team.guarded() => self.plan(cops, robber),
            _ => {}
        }
        if self.phase == Phase::Relay && self.relay_target.is_none_or(|v| cops[self.relay] == v) {
            let nb = self.next.ok_or_else(|| Error::Internal("relay without a next bag".into()))?;
            self.team.dispatch(cops, &self.layouts[nb], &self.covers[nb], &self.dist)?;
            self.phase = Phase::Travel;
        }
        Ok(())
    }
}

impl CopController for RelayController {
    fn cop_count(&self) -> usize {
        self.relay + 1
    }

    fn place(&mut self) -> Result<Vec<usize>> {
        let mut out = self.team.initial_positions();
        let spot = out.first().copied().or_else(|| self.t.bag(self.team.bag).first()).unwrap_or(0);
        out.push(spot);
        Ok(out)
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>> {
        if let Some(m) = capture_move(&self.g, cops, robber) {
            return Ok(m);
        }
        self.advance(cops, robber)?;
        let mut next = cops.to_vec();
        let cover = &self.covers[self.team.bag];
        self.team.play(&self.g, &self.dist, cover, cops, robber, &mut next)?;
        if let (Phase::Relay, Some(v)) = (self.phase, self.relay_target) {
            next[self.relay] = step_toward(&self.g, &self.dist, cops[self.relay], v);
        }
        self.team.settle(cover, &next, robber)?;
        Ok(next)
    }

    fn annotation(&self) -> Option<Annotation> {
        let phase = match self.phase {
            Phase::Opening => "opening",
            Phase::Relay => "relay",
            Phase::Travel => "travel",
            Phase::Hold => "holding",
        };
        Some(Annotation {
            frontier: self.frontier,
            toward: self.next,
            phase: phase.into(),
        })
    }
}
