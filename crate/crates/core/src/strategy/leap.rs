use alloc::format;
use alloc::vec::Vec;

use super::layout::{layouts, BagLayout};
use super::team::Team;
use super::{capture_move, next_bag_toward, Annotation, CopController};
use crate::cover::RccResult;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::td::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Start {
    /// Even diameter: both teams at the centre, the second one parked.
    Single(usize),
    /// Odd diameter: one team on each centre bag.
    Double(usize, usize),
}

/// Two teams of `m = max rcc` cops leapfrogging along the decomposition
/// towards the robber. One team always keeps the frontier bag guarded while
/// the other relocates to the next bag and guards it.
#[derive(Debug, Clone)]
pub struct LeapController {
    g: Graph,
    t: TreeDecomposition,
    tree: Vec<Vec<usize>>,
    dist: DistanceMatrix,
    covers: Vec<RccResult>,
    layouts: Vec<BagLayout>,
    m: usize,
    start: Start,
    teams: [Team; 2],
    holder: Option<usize>,
    mover: Option<usize>,
}

impl LeapController {
    /// `covers[b]` must be a retract cover of bag `b`.
    pub fn new(g: &Graph, t: &TreeDecomposition, covers: &[RccResult]) -> Result<Self> {
        t.ensure_valid(g)?;
        let (m, layouts) = layouts(t, covers)?;
        let (centre, diameter) = t.centre_and_diameter();
        let start = match centre.as_slice() {
            [c] => Start::Single(*c),
            [a, b] if diameter % 2 == 1 => Start::Double(*a, *b),
            _ => return Err(Error::Internal(format!("unexpected centre {centre:?}"))),
        };
        let (a, b) = match start {
            Start::Single(c) => (c, c),
            Start::Double(a, b) => (a, b),
        };
        let mut x = Team::new((0..m).collect(), &layouts[a], &covers[a]);
        let mut y = Team::new((m..2 * m).collect(), &layouts[b], &covers[b]);
        x.active = true;
        y.active = matches!(start, Start::Double(..));
        Ok(LeapController {
            g: g.clone(),
            tree: t.tree_adjacency(),
            t: t.clone(),
            dist: g.distances(),
            covers: covers.to_vec(),
            layouts,
            m,
            start,
            teams: [x, y],
            holder: None,
            mover: None,
        })
    }

    pub fn team_size(&self) -> usize {
        self.m
    }

    fn dispatch(&mut self, free: usize, from: usize, cops: &[usize], robber: usize) -> Result<()> {
        if let Some(next) = next_bag_toward(&self.t, &self.tree, from, robber) {
            self.teams[free].dispatch(cops, &self.layouts[next], &self.covers[next], &self.dist)?;
            self.mover = Some(free);
        }
        Ok(())
    }

    fn advance(&mut self, cops: &[usize], robber: usize) -> Result<()> {
        match (self.holder, self.mover) {
            (None, _) => match self.start {
                Start::Single(c) => {
                    if self.teams[0].guarded() {
                        self.holder = Some(0);
                        self.dispatch(1, c, cops, robber)?;
                    }
                }
                Start::Double(a, b) => {
                    if self.teams[0].guarded() && self.teams[1].guarded() {
                        // The robber is on the side of whichever centre the
                        // path from the other one runs through.
                        let beyond_b = next_bag_toward(&self.t, &self.tree, a, robber) == Some(b);
                        let (hold, free, from) = if beyond_b { (1, 0, b) } else { (0, 1, a) };
                        self.holder = Some(hold);
                        self.dispatch(free, from, cops, robber)?;
                    }
                }
            },
            (Some(h), Some(mv)) => {
                if self.teams[mv].guarded() {
                    self.holder = Some(mv);
                    self.mover = None;
                    let from = self.teams[mv].bag;
                    self.dispatch(h, from, cops, robber)?;
                }
            }
            (Some(h), None) => {
                let from = self.teams[h].bag;
                self.dispatch(1 - h, from, cops, robber)?;
            }
        }
        Ok(())
    }
}

impl CopController for LeapController {
    fn cop_count(&self) -> usize {
        2 * self.m
    }

    fn place(&mut self) -> Result<Vec<usize>> {
        let mut out = self.teams[0].initial_positions();
        out.extend(self.teams[1].initial_positions());
        Ok(out)
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>> {
        if let Some(m) = capture_move(&self.g, cops, robber) {
            return Ok(m);
        }
        self.advance(cops, robber)?;
        let mut next = cops.to_vec();
        for team in &mut self.teams {
            let cover = &self.covers[team.bag];
            team.play(&self.g, &self.dist, cover, cops, robber, &mut next)?;
        }
        for team in &mut self.teams {
            let cover = &self.covers[team.bag];
            team.settle(cover, &next, robber)?;
        }
        Ok(next)
    }

    fn annotation(&self) -> Option<Annotation> {
        let frontier = self.holder.map(|h| self.teams[h].bag);
        let toward = self.mover.map(|m| self.teams[m].bag);
        let phase = match (self.holder, self.mover) {
            (None, _) => "opening",
            (Some(_), Some(m)) if self.teams[m].guarded() => "leap complete",
            (Some(_), Some(_)) => "leaping",
            (Some(_), None) => "holding",
        };
        Some(Annotation {
            frontier,
            toward,
            phase: phase.into(),
        })
    }
}
