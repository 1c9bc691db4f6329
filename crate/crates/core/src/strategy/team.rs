//! A team of cops standing on one bag's retract cover.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::layout::BagLayout;
use super::step_toward;
use crate::cover::RccResult;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::matching::bottleneck_assignment;

#[derive(Debug, Clone)]
struct EntryPlay {
    /// Team cop indices in certificate order.
    cops: Vec<usize>,
    started: bool,
    guarded: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Team {
    /// Global indices of this team's cops.
    pub members: Vec<usize>,
    pub bag: usize,
    /// Team cop -> layout slot.
    slot_of: Vec<usize>,
    targets: Vec<usize>,
    entries: Vec<EntryPlay>,
    /// Parked teams hold still.
    pub active: bool,
}

impl Team {
    pub fn new(members: Vec<usize>, layout: &BagLayout, cover: &RccResult) -> Self {
        let slot_of: Vec<usize> = (0..members.len()).collect();
        let mut t = Team {
            members,
            bag: layout.bag,
            slot_of,
            targets: Vec::new(),
            entries: Vec::new(),
            active: false,
        };
        t.rebuild(layout, cover);
        t
    }

    pub fn initial_positions(&self) -> Vec<usize> {
        self.targets.clone()
    }

    /// Sends the team to `layout`, matching cops to slots so that the
    /// longest walk is as short as possible.
    pub fn dispatch(&mut self, cops: &[usize], layout: &BagLayout, cover: &RccResult, dist: &DistanceMatrix) -> Result<()> {
        let cost: Vec<Vec<u32>> = self
            .members
            .iter()
            .map(|&c| layout.slots.iter().map(|s| dist.get(cops[c], s.target)).collect())
            .collect();
        let (_, assignment) =
            bottleneck_assignment(&cost).ok_or_else(|| Error::Internal("no assignment to the next layout".into()))?;
        self.slot_of = assignment;
        self.bag = layout.bag;
        self.active = true;
        self.rebuild(layout, cover);
        Ok(())
    }

    fn rebuild(&mut self, layout: &BagLayout, cover: &RccResult) {
        self.targets = vec![0; self.members.len()];
        let mut entries: Vec<EntryPlay> = cover
            .cover
            .entries
            .iter()
            .map(|e| EntryPlay {
                cops: vec![usize::MAX; e.guards()],
                started: false,
                guarded: false,
            })
            .collect();
        for (i, &s) in self.slot_of.iter().enumerate() {
            let slot = &layout.slots[s];
            self.targets[i] = slot.target;
            if let Some(e) = slot.entry {
                entries[e].cops[slot.index] = i;
            }
        }
        self.entries = entries;
    }

    pub fn guarded(&self) -> bool {
        self.entries.iter().all(|e| e.guarded)
    }

    /// Writes this team's moves into `next`: cops of a started entry follow
    /// its certificate, everyone else walks to their slot.
    pub fn play(&mut self, g: &Graph, dist: &DistanceMatrix, cover: &RccResult, cops: &[usize], robber: usize, next: &mut [usize]) -> Result<()> {
        if !self.active {
            return Ok(());
        }
        let mut playing = vec![false; self.members.len()];
        for (e, play) in self.entries.iter_mut().enumerate() {
            let pos: Vec<usize> = play.cops.iter().map(|&i| cops[self.members[i]]).collect();
            if !play.started && play.cops.iter().zip(&pos).all(|(&i, &p)| p == self.targets[i]) {
                play.started = true;
            }
            if play.started {
                let cert = &cover.cover.entries[e].certificate;
                let moved = cert.cop_move(&pos, robber)?;
                for (&i, &v) in play.cops.iter().zip(&moved) {
                    next[self.members[i]] = v;
                    playing[i] = true;
                }
            }
        }
        for (i, &c) in self.members.iter().enumerate() {
            if !playing[i] {
                next[c] = step_toward(g, dist, cops[c], self.targets[i]);
            }
        }
        Ok(())
    }

    /// Records which entries hold their shadow after the move to `next`.
    pub fn settle(&mut self, cover: &RccResult, next: &[usize], robber: usize) -> Result<()> {
        if !self.active {
            return Ok(());
        }
        for (e, play) in self.entries.iter_mut().enumerate() {
            if !play.started {
                continue;
            }
            let pos: Vec<usize> = play.cops.iter().map(|&i| next[self.members[i]]).collect();
            let held = cover.cover.entries[e].certificate.shadow_captured(&pos, robber);
            if play.guarded && !held {
                return Err(Error::Internal(format!("bag {} lost the shadow of entry {e}", self.bag)));
            }
            play.guarded |= held;
        }
        Ok(())
    }
}
