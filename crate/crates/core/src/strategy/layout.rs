use alloc::format;
use alloc::vec::Vec;

use crate::cover::RccResult;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, VertexSet};
use crate::matching::bottleneck_assignment;
use crate::td::TreeDecomposition;

/// One cop position in a bag's guarding configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    /// Cover entry this cop plays for; `None` for a spare cop.
    pub entry: Option<usize>,
    /// Index of the cop within the entry's certificate.
    pub index: usize,
    /// Where the cop stands when play starts.
    pub target: usize,
    /// Vertices the cop can occupy while guarding.
    pub region: VertexSet,
}

/// How a team of `m` cops stands on a bag's retract cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagLayout {
    pub bag: usize,
    pub slots: Vec<Slot>,
}

impl BagLayout {
    /// Lays out the cover's certificates, padding with spare cops that
    /// wait on the first entry's first opening vertex.
    pub fn new(bag: usize, cover: &RccResult, m: usize) -> Result<Self> {
        if cover.value > m {
            return Err(Error::Config(format!(
                "bag {bag} needs {} guards, the team has {m}",
                cover.value
            )));
        }
        let mut slots = Vec::with_capacity(m);
        for (e, entry) in cover.cover.entries.iter().enumerate() {
            let cert = &entry.certificate;
            for (i, &v) in cert.opening.iter().enumerate() {
                slots.push(Slot {
                    entry: Some(e),
                    index: i,
                    target: v,
                    region: cert.retraction.image().clone(),
                });
            }
        }
        let spare = slots
            .first()
            .map(|s| s.target)
            .or_else(|| cover.cover.target.first())
            .ok_or_else(|| Error::Config(format!("bag {bag} is empty")))?;
        while slots.len() < m {
            slots.push(Slot {
                entry: None,
                index: slots.len(),
                target: spare,
                region: VertexSet::singleton(spare),
            });
        }
        Ok(BagLayout { bag, slots })
    }

    pub fn targets(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s.target).collect()
    }

    /// Worst-case rounds for a team guarding this layout to reach `next`.
    pub fn transfer_cost(&self, next: &BagLayout, dist: &DistanceMatrix) -> u32 {
        let cost: Vec<Vec<u32>> = self
            .slots
            .iter()
            .map(|s| {
                next.slots
                    .iter()
                    .map(|t| s.region.iter().map(|x| dist.get(x, t.target)).max().unwrap_or(0))
                    .collect()
            })
            .collect();
        bottleneck_assignment(&cost).map_or(u32::MAX, |(c, _)| c)
    }
}

/// Layouts for every bag with team size `m = max rcc`.
pub fn layouts(t: &TreeDecomposition, covers: &[RccResult]) -> Result<(usize, Vec<BagLayout>)> {
    if covers.len() != t.num_bags() {
        return Err(Error::Config(format!(
            "{} covers for {} bags",
            covers.len(),
            t.num_bags()
        )));
    }
    let m = covers.iter().map(|c| c.value).max().unwrap_or(0).max(1);
    let out = covers
        .iter()
        .enumerate()
        .map(|(b, c)| BagLayout::new(b, c, m))
        .collect::<Result<Vec<_>>>()?;
    Ok((m, out))
}

/// `g_T`: worst rounds-to-guard of any certificate in any bag's cover.
/// `tr_T`: worst bottleneck relocation between layouts of bags at tree
/// distance one or two, charging each cop from anywhere in its region.
pub fn measure_g_tr(g: &Graph, t: &TreeDecomposition, covers: &[RccResult]) -> Result<(u32, u32)> {
    let (_, lay) = layouts(t, covers)?;
    let g_t = covers
        .iter()
        .flat_map(|c| c.cover.entries.iter().map(|e| e.certificate.rounds_to_guard))
        .max()
        .unwrap_or(0);
    let dist = g.distances();
    let td = t.tree_distances();
    let mut tr_t = 0;
    for a in 0..t.num_bags() {
        for b in 0..t.num_bags() {
            if (1..=2).contains(&td[a][b]) {
                tr_t = tr_t.max(lay[a].transfer_cost(&lay[b], &dist));
            }
        }
    }
    Ok((g_t, tr_t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaptureTimeBoundReport {
    pub g_t: u32,
    pub tr_t: u32,
    pub diameter: usize,
    /// `g_T(⌈d/2⌉ + 1) + tr_T⌈d/2⌉`.
    pub bound_even: u64,
    /// Same with floors; present only for odd diameter.
    pub bound_odd: Option<u64>,
}

impl CaptureTimeBoundReport {
    /// The bound the leap controller is held to.
    pub fn applicable(&self) -> u64 {
        self.bound_odd.unwrap_or(self.bound_even)
    }
}

pub fn capture_time_bound(diameter: usize, g_t: u32, tr_t: u32) -> CaptureTimeBoundReport {
    let formula = |half: u64| g_t as u64 * (half + 1) + tr_t as u64 * half;
    let d = diameter as u64;
    CaptureTimeBoundReport {
        g_t,
        tr_t,
        diameter,
        bound_even: formula(d.div_ceil(2)),
        bound_odd: (d % 2 == 1).then(|| formula(d / 2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula() {
        let r = capture_time_bound(3, 2, 3);
        assert_eq!((r.bound_even, r.bound_odd), (12, Some(7)));
        assert_eq!(r.applicable(), 7);
        let r = capture_time_bound(0, 5, 9);
        assert_eq!((r.bound_even, r.bound_odd), (5, None));
        assert_eq!(capture_time_bound(4, 1, 1).bound_even, 5);
    }
}
