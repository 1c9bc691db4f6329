use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::DEFAULT_STATE_BUDGET;
use crate::graph::{Graph, VertexSet, UNREACHABLE};
use crate::guard::{guard_number, GuardCertificate};
use crate::retract::{
    find_retractions, retraction_for_clique, retraction_for_isometric_path, Retraction, DEFAULT_SEARCH_BUDGET,
};

/// Limits on how the candidate pool is built.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PoolLimits {
    /// Entries per target before the pool is cut off.
    pub max_pool: usize,
    /// Longest path (in vertices) offered as a candidate.
    pub max_path_len: usize,
    /// Graphs with at most this many vertices also get every connected
    /// induced subgraph that is a retract.
    pub exhaustive_up_to: usize,
    /// Retractions tried per searched subgraph; the smallest guard wins.
    pub retractions_per_subgraph: usize,
    /// Largest guard number tried; retracts needing more are dropped.
    pub guard_k_max: usize,
    pub state_budget: u64,
    pub retraction_budget: u64,
}

impl Default for PoolLimits {
    fn default() -> Self {
        PoolLimits {
            max_pool: 4096,
            max_path_len: 64,
            exhaustive_up_to: 7,
            retractions_per_subgraph: 8,
            guard_k_max: 3,
            state_budget: DEFAULT_STATE_BUDGET,
            retraction_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RetractKind {
    Clique,
    IsometricPath,
    Searched,
}

#[derive(Debug, Clone)]
pub struct PoolEntry {
    pub vertices: VertexSet,
    pub kind: RetractKind,
    pub certificate: Arc<GuardCertificate>,
}

impl PoolEntry {
    pub fn guards(&self) -> usize {
        self.certificate.guards
    }
}

#[derive(Debug, Clone, Default)]
pub struct Pool {
    pub entries: Vec<PoolEntry>,
    /// Hit `max_pool`.
    pub truncated: bool,
    /// Every retract meeting the target is present with its least guard
    /// number over all retractions, so pool-optimal rcc is the true rcc.
    pub complete: bool,
}

type Cached = Option<(RetractKind, Arc<GuardCertificate>)>;

/// Builds candidate pools for many targets in one host, sharing solved
/// guard certificates between them.
#[derive(Debug)]
pub struct PoolBuilder<'g> {
    g: &'g Graph,
    limits: PoolLimits,
    cliques: Vec<VertexSet>,
    cache: BTreeMap<VertexSet, Cached>,
    exhaustive: Option<(Vec<VertexSet>, bool)>,
    /// Some candidate was skipped because a limit or budget was hit.
    lossy: bool,
}

impl<'g> PoolBuilder<'g> {
    pub fn new(g: &'g Graph, limits: PoolLimits) -> Self {
        PoolBuilder {
            g,
            cliques: g.maximal_cliques(),
            limits,
            cache: BTreeMap::new(),
            exhaustive: None,
            lossy: false,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn limits(&self) -> &PoolLimits {
        &self.limits
    }

    /// Candidate retracts for the target `h`, plus the caller's `extras`.
    pub fn pool_for(&mut self, h: &VertexSet, extras: &[VertexSet]) -> Result<Pool> {
        let g = self.g;
        if h.iter().any(|v| v >= g.n()) {
            return Err(Error::invalid("target vertex out of range"));
        }
        let mut candidates: Vec<(VertexSet, RetractKind)> = Vec::new();
        for c in &self.cliques {
            if !c.intersection(h).is_empty() {
                candidates.push((c.clone(), RetractKind::Clique));
            }
        }
        for v in h.iter() {
            candidates.push((VertexSet::singleton(v), RetractKind::Clique));
        }
        let dist = g.distances();
        for u in h.iter() {
            for v in h.iter().filter(|&v| v != u) {
                let d = dist.get(u, v);
                if d == UNREACHABLE || d as usize + 1 > self.limits.max_path_len {
                    continue;
                }
                let inside = g.shortest_path_within(u, v, |x| h.contains(x));
                let path = match inside {
                    Some(p) if p.len() == d as usize + 1 => Some(p),
                    _ => g.shortest_path(u, v),
                };
                if let Some(p) = path {
                    candidates.push((p.iter().copied().collect(), RetractKind::IsometricPath));
                }
            }
        }
        for x in extras {
            candidates.push((x.clone(), RetractKind::Searched));
        }
        let mut complete = false;
        if g.n() <= self.limits.exhaustive_up_to {
            let (all, exhaustive_complete) = self.exhaustive_sets()?;
            complete = exhaustive_complete;
            for s in all {
                if !s.intersection(h).is_empty() {
                    candidates.push((s, RetractKind::Searched));
                }
            }
        }

        let mut pool = Pool::default();
        let mut seen: BTreeMap<VertexSet, ()> = BTreeMap::new();
        for (set, kind) in candidates {
            if seen.insert(set.clone(), ()).is_some() {
                continue;
            }
            if pool.entries.len() >= self.limits.max_pool {
                pool.truncated = true;
                break;
            }
            if let Some((kind, certificate)) = self.certificate(&set, kind)? {
                pool.entries.push(PoolEntry {
                    vertices: set,
                    kind,
                    certificate,
                });
            }
        }
        pool.complete = complete && !pool.truncated && !self.lossy;
        Ok(pool)
    }

    /// Solved certificate for a vertex set, `None` when it is not a retract
    /// or its guard number is out of reach.
    fn certificate(&mut self, set: &VertexSet, kind: RetractKind) -> Result<Cached> {
        if let Some(c) = self.cache.get(set) {
            return Ok(c.clone());
        }
        let g = self.g;
        let mut enumerated = true;
        let retractions: Vec<Retraction> = match kind {
            RetractKind::Clique if g.is_clique(set) => alloc::vec![retraction_for_clique(g, set)?],
            RetractKind::IsometricPath => {
                let path = self.path_order(set);
                match path {
                    Some(p) => alloc::vec![retraction_for_isometric_path(g, &p)?],
                    None => Vec::new(),
                }
            }
            _ => {
                let h = g.induced(set.clone())?;
                match find_retractions(g, &h, self.limits.retractions_per_subgraph, self.limits.retraction_budget) {
                    Ok((found, complete)) => {
                        enumerated = complete;
                        found
                    }
                    Err(Error::Budget { .. }) => {
                        self.lossy = true;
                        Vec::new()
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        let mut best: Option<GuardCertificate> = None;
        for r in &retractions {
            let k_max = best.as_ref().map_or(self.limits.guard_k_max, |b| b.guards);
            match guard_number(g, r, k_max, self.limits.state_budget) {
                Ok(c) => {
                    let better = best
                        .as_ref()
                        .is_none_or(|b| (c.guards, c.rounds_to_guard) < (b.guards, b.rounds_to_guard));
                    if better {
                        best = Some(c);
                    }
                }
                Err(Error::BoundNotFound { .. }) => {
                    if best.is_none() {
                        self.lossy = true;
                    }
                }
                Err(Error::Budget { .. }) => self.lossy = true,
                Err(e) => return Err(e),
            }
        }
        // A skipped retraction only matters if it could beat the best one.
        if !enumerated && best.as_ref().is_none_or(|b| b.guards > 1) {
            self.lossy = true;
        }
        let entry = best.map(|c| (kind, Arc::new(c)));
        self.cache.insert(set.clone(), entry.clone());
        Ok(entry)
    }

    /// The set in path order if it induces an isometric path.
    fn path_order(&self, set: &VertexSet) -> Option<Vec<usize>> {
        let g = self.g;
        let start = set.iter().find(|&v| g.neighbors(v).iter().filter(|&&w| set.contains(w)).count() <= 1)?;
        let mut path = alloc::vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = g
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev && set.contains(w))
        {
            if path.contains(&next) {
                return None;
            }
            path.push(next);
            prev = cur;
            cur = next;
        }
        (path.len() == set.len() && g.is_isometric_path(&path).ok()?).then_some(path)
    }

    /// Every connected vertex set of a small host that is a retract.
    fn exhaustive_sets(&mut self) -> Result<(Vec<VertexSet>, bool)> {
        if let Some(e) = &self.exhaustive {
            return Ok(e.clone());
        }
        let g = self.g;
        let n = g.n();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << n) {
            let set: VertexSet = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if !g.induced(set.clone())?.to_graph().is_connected() {
                continue;
            }
            if self.certificate(&set, RetractKind::Searched)?.is_some() {
                out.push(set);
            }
        }
        let result = (out, !self.lossy);
        self.exhaustive = Some(result.clone());
        Ok(result)
    }
}
