//! Retract covers, rcc, and the cop-number upper bounds built on them.

mod bounds;
mod pool;
mod rcc;

pub use bounds::{
    best_bound_report, eq1_bound, standard_decompositions, theorem1_bound, theorem_i_bound, theorem_main2_bound,
    BagCovers, BoundConfig, BoundReport, CopWinCertificate, CoverSummary, DecompositionBound, DecompositionSummary,
    Eq1Bound, NamedDecomposition,
};
pub use pool::{Pool, PoolBuilder, PoolEntry, PoolLimits, RetractKind};
pub use rcc::{rcc, rcc_with_budget, RccMode, RccResult, RetractCover, DEFAULT_NODE_BUDGET};

use crate::error::Result;
use crate::graph::{Graph, InducedSubgraph};

/// Candidate retracts for `h` under `limits` (see [`PoolBuilder`]).
pub fn candidate_retracts(g: &Graph, h: &InducedSubgraph<'_>, limits: &PoolLimits) -> Result<Pool> {
    PoolBuilder::new(g, limits.clone()).pool_for(&h.support, &[])
}
