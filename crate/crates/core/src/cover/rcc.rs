use alloc::vec::Vec;

use super::pool::{Pool, PoolEntry};
use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSubgraph, VertexSet};

/// Branch-and-bound nodes explored before exact mode gives up.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Largest target handled (vertices are tracked in a 128-bit mask).
const MAX_TARGET: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RccMode {
    Exact,
    Greedy,
}

/// Retracts whose union contains the target, with their guard certificates.
#[derive(Debug, Clone)]
pub struct RetractCover {
    pub target: VertexSet,
    pub entries: Vec<PoolEntry>,
    pub total_guards: usize,
}

#[derive(Debug, Clone)]
pub struct RccResult {
    pub value: usize,
    pub cover: RetractCover,
    /// The search was exhaustive over the pool.
    pub exact_over_pool: bool,
    /// The pool held every retract, so `value` is the true rcc.
    pub pool_complete: bool,
}

/// Minimum total guard number of a cover of `h` by pool entries.
pub fn rcc(g: &Graph, h: &InducedSubgraph<'_>, pool: &Pool, mode: RccMode) -> Result<RccResult> {
    rcc_with_budget(g, h, pool, mode, DEFAULT_NODE_BUDGET)
}

pub fn rcc_with_budget(
    g: &Graph,
    h: &InducedSubgraph<'_>,
    pool: &Pool,
    mode: RccMode,
    node_budget: u64,
) -> Result<RccResult> {
    if h.host != g {
        return Err(Error::invalid("target is not a subgraph of this host"));
    }
    let target = &h.support;
    if target.len() > MAX_TARGET {
        return Err(Error::Config(alloc::format!(
            "targets above {MAX_TARGET} vertices are not supported"
        )));
    }
    let bit = |v: usize| -> Option<u128> { target.as_slice().binary_search(&v).ok().map(|i| 1u128 << i) };
    let full: u128 = if target.is_empty() {
        0
    } else {
        u128::MAX >> (128 - target.len())
    };
    let items: Vec<Item> = pool
        .entries
        .iter()
        .enumerate()
        .map(|(id, e)| Item {
            id,
            mask: e.vertices.iter().filter_map(bit).fold(0, |m, b| m | b),
            guards: e.guards(),
        })
        .filter(|it| it.mask != 0)
        .collect();
    let reachable = items.iter().fold(0u128, |m, it| m | it.mask);
    if reachable != full {
        let missed = target
            .iter()
            .enumerate()
            .filter(|(i, _)| reachable & (1 << i) == 0)
            .map(|(_, v)| v)
            .collect();
        return Err(Error::Uncoverable { missed });
    }
    let greedy = greedy_cover(&items, full);
    let (chosen, exact) = match mode {
        RccMode::Greedy => (greedy, false),
        RccMode::Exact => (exact_cover(&items, full, greedy, node_budget)?, true),
    };
    let entries: Vec<PoolEntry> = chosen.iter().map(|&id| pool.entries[id].clone()).collect();
    let total_guards = entries.iter().map(PoolEntry::guards).sum();
    Ok(RccResult {
        value: total_guards,
        cover: RetractCover {
            target: target.clone(),
            entries,
            total_guards,
        },
        exact_over_pool: exact,
        pool_complete: exact && pool.complete,
    })
}

#[derive(Debug, Clone, Copy)]
struct Item {
    id: usize,
    mask: u128,
    guards: usize,
}

/// Weighted greedy: best new-coverage per guard, then larger new coverage,
/// then fewer guards, then the earlier pool entry.
fn greedy_cover(items: &[Item], full: u128) -> Vec<usize> {
    let mut covered = 0u128;
    let mut chosen = Vec::new();
    while covered != full {
        let mut best: Option<(u32, &Item)> = None;
        for it in items {
            let gain = (it.mask & !covered).count_ones();
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bg, b)) => {
                    let lhs = gain as usize * b.guards;
                    let rhs = bg as usize * it.guards;
                    lhs > rhs || (lhs == rhs && (gain, core::cmp::Reverse(it.guards)) > (bg, core::cmp::Reverse(b.guards)))
                }
            };
            if better {
                best = Some((gain, it));
            }
        }
        let (_, it) = best.expect("target is coverable");
        covered |= it.mask;
        chosen.push(it.id);
    }
    chosen.sort_unstable();
    chosen
}

fn exact_cover(items: &[Item], full: u128, upper: Vec<usize>, node_budget: u64) -> Result<Vec<usize>> {
    // Drop entries dominated by one covering at least as much for no more.
    let kept: Vec<Item> = items
        .iter()
        .enumerate()
        .filter(|&(i, a)| {
            !items.iter().enumerate().any(|(j, b)| {
                j != i
                    && a.mask & !b.mask == 0
                    && b.guards <= a.guards
                    && (b.mask != a.mask || b.guards < a.guards || j < i)
            })
        })
        .map(|(_, a)| *a)
        .collect();
    let cost_of = |ids: &[usize]| -> usize { ids.iter().map(|&id| items.iter().find(|it| it.id == id).unwrap().guards).sum() };
    let mut search = CoverSearch {
        items: &kept,
        max_gain: kept.iter().map(|it| it.mask.count_ones()).max().unwrap_or(1).max(1),
        best_cost: cost_of(&upper),
        best: upper,
        stack: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    search.run(0, full, 0)?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

struct CoverSearch<'a> {
    items: &'a [Item],
    max_gain: u32,
    best: Vec<usize>,
    best_cost: usize,
    stack: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CoverSearch<'_> {
    fn run(&mut self, covered: u128, full: u128, cost: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                what: "retract cover search nodes",
                needed: self.nodes,
                budget: self.budget,
            });
        }
        let open = full & !covered;
        if open == 0 {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = self.stack.clone();
            }
            return Ok(());
        }
        // Every entry costs at least one guard.
        let lower = open.count_ones().div_ceil(self.max_gain) as usize;
        if cost + lower >= self.best_cost {
            return Ok(());
        }
        // Branch on the open vertex with the fewest covering entries.
        let mut pick = None;
        let mut rest = open;
        while rest != 0 {
            let b = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let count = self.items.iter().filter(|it| it.mask & b != 0).count();
            if pick.is_none_or(|(c, _)| count < c) {
                pick = Some((count, b));
            }
        }
        let (_, b) = pick.expect("open vertex");
        let mut options: Vec<Item> = self.items.iter().copied().filter(|it| it.mask & b != 0).collect();
        options.sort_by_key(|it| (it.guards, core::cmp::Reverse((it.mask & open).count_ones()), it.id));
        for it in options {
            if cost + it.guards >= self.best_cost {
                continue;
            }
            self.stack.push(it.id);
            self.run(covered | it.mask, full, cost + it.guards)?;
            self.stack.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::pool::{PoolBuilder, PoolLimits};
    use super::*;
    use crate::generate;

    fn value(g: &Graph, h: &VertexSet, mode: RccMode) -> RccResult {
        let mut b = PoolBuilder::new(g, PoolLimits::default());
        let pool = b.pool_for(h, &[]).unwrap();
        rcc(g, &g.induced(h.clone()).unwrap(), &pool, mode).unwrap()
    }

    #[test]
    fn clique_needs_one_guard() {
        let g = generate::clique(6);
        let all: VertexSet = (0..6).collect();
        let r = value(&g, &all, RccMode::Exact);
        assert_eq!(r.value, 1);
        assert!(r.pool_complete);
    }

    #[test]
    fn four_cycle_needs_two() {
        let g = generate::cycle(4);
        let all: VertexSet = (0..4).collect();
        let r = value(&g, &all, RccMode::Exact);
        assert_eq!(r.value, 2);
        assert!(r.exact_over_pool);
        assert!(r.pool_complete);
        let covered: VertexSet = r.cover.entries.iter().flat_map(|e| e.vertices.iter()).collect();
        assert_eq!(covered, all);
    }

    #[test]
    fn greedy_is_never_better_than_exact() {
        for seed in 0..15 {
            let g = generate::random_connected(9, 0.25, seed);
            let all: VertexSet = (0..9).collect();
            let e = value(&g, &all, RccMode::Exact);
            let gr = value(&g, &all, RccMode::Greedy);
            assert!(e.value <= gr.value);
            assert!(!gr.exact_over_pool);
        }
    }

    #[test]
    fn uncoverable_targets_are_reported() {
        let g = generate::path(4);
        let h = g.induced(VertexSet::from(alloc::vec![0, 3])).unwrap();
        let err = rcc(&g, &h, &Pool::default(), RccMode::Exact).unwrap_err();
        assert_eq!(err, Error::Uncoverable { missed: alloc::vec![0, 3] });
    }
}
