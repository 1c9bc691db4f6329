use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::pool::{PoolBuilder, PoolLimits, RetractKind};
use super::rcc::{rcc, RccMode, RccResult};
use crate::error::{Error, Result};
use crate::game::{cop_number_with_solution, DEFAULT_STATE_BUDGET};
use crate::graph::{Graph, VertexSet};
use crate::strategy::{capture_time_bound, measure_g_tr, CaptureTimeBoundReport};
use crate::td::{clique_tree, grid_path_decomposition, treewidth_exact, TreeDecomposition, DEFAULT_EXACT_LIMIT};

/// `⌊tw/2⌋ + 1`, from the exact treewidth or a certified upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eq1Bound {
    pub treewidth: usize,
    /// False when `treewidth` is only an upper bound.
    pub optimal: bool,
    pub value: usize,
}

impl Eq1Bound {
    pub fn from_width(treewidth: usize, optimal: bool) -> Self {
        Eq1Bound {
            treewidth,
            optimal,
            value: treewidth / 2 + 1,
        }
    }
}

pub fn eq1_bound(g: &Graph, exact_limit: usize) -> Eq1Bound {
    let tw = treewidth_exact(g, exact_limit);
    Eq1Bound::from_width(tw.width, tw.optimal)
}

/// A minimal retract cover for every bag of one decomposition.
#[derive(Debug, Clone)]
pub struct BagCovers {
    pub per_bag: Vec<RccResult>,
    pub max_rcc: usize,
    /// Some bag's value is only optimal over an incomplete pool; the bounds
    /// stay valid since each pool value is at least the true rcc.
    pub pool_relative: bool,
}

impl BagCovers {
    pub fn compute(g: &Graph, t: &TreeDecomposition, builder: &mut PoolBuilder<'_>, mode: RccMode) -> Result<Self> {
        t.ensure_valid(g)?;
        let mut per_bag = Vec::with_capacity(t.num_bags());
        for bag in t.bags() {
            let pool = builder.pool_for(bag, &[])?;
            per_bag.push(rcc(g, &g.induced(bag.clone())?, &pool, mode)?);
        }
        Ok(BagCovers {
            max_rcc: per_bag.iter().map(|r| r.value).max().unwrap_or(0),
            pool_relative: per_bag.iter().any(|r| !r.pool_complete),
            per_bag,
        })
    }
}

/// `2 · max_B rcc(⟨B⟩)` over the bags of `t`.
pub fn theorem1_bound(
    g: &Graph,
    t: &TreeDecomposition,
    builder: &mut PoolBuilder<'_>,
    mode: RccMode,
) -> Result<(usize, BagCovers)> {
    let covers = BagCovers::compute(g, t, builder, mode)?;
    Ok((2 * covers.max_rcc, covers))
}

/// `max_B rcc(⟨B⟩) + 1` when adjacent bags meet in cliques, else `None`.
pub fn theorem_main2_bound(
    g: &Graph,
    t: &TreeDecomposition,
    builder: &mut PoolBuilder<'_>,
    mode: RccMode,
) -> Result<Option<(usize, BagCovers)>> {
    t.ensure_valid(g)?;
    if !t.pairwise_clique_intersections(g) {
        return Ok(None);
    }
    let covers = BagCovers::compute(g, t, builder, mode)?;
    Ok(Some((covers.max_rcc + 1, covers)))
}

/// Every bag of `clique_tree` is a clique, so one cop suffices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopWinCertificate {
    pub clique_tree: TreeDecomposition,
}

pub fn theorem_i_bound(g: &Graph) -> Option<CopWinCertificate> {
    if !g.is_connected() {
        return None;
    }
    clique_tree(g).map(|clique_tree| CopWinCertificate { clique_tree })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NamedDecomposition {
    pub name: String,
    pub decomposition: TreeDecomposition,
}

/// Decompositions tried by default: the treewidth witness, the clique tree
/// when the graph is chordal, and the grid decomposition for `side × side`
/// grids.
pub fn standard_decompositions(g: &Graph, grid_side: Option<usize>, exact_limit: usize) -> Vec<NamedDecomposition> {
    let mut out = Vec::new();
    let tw = treewidth_exact(g, exact_limit);
    out.push(NamedDecomposition {
        name: "treewidth-witness".into(),
        decomposition: tw.witness,
    });
    if let Some(ct) = clique_tree(g) {
        out.push(NamedDecomposition {
            name: "clique-tree".into(),
            decomposition: ct,
        });
    }
    if let Some(side) = grid_side.filter(|&s| s >= 2 && s * s == g.n()) {
        if let Ok(t) = grid_path_decomposition(side) {
            out.push(NamedDecomposition {
                name: "grid".into(),
                decomposition: t,
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundConfig {
    pub pool: PoolLimits,
    pub mode: RccMode,
    pub state_budget: u64,
    /// Largest cop count tried by the exact solver.
    pub cop_k_max: usize,
    pub treewidth_exact_limit: usize,
    pub solve_exact: bool,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            pool: PoolLimits::default(),
            mode: RccMode::Exact,
            state_budget: DEFAULT_STATE_BUDGET,
            cop_k_max: 4,
            treewidth_exact_limit: DEFAULT_EXACT_LIMIT,
            solve_exact: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoverSummary {
    pub vertices: VertexSet,
    pub kind: RetractKind,
    pub guards: usize,
    pub rounds_to_guard: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecompositionBound {
    pub decomposition: String,
    pub value: usize,
    pub pool_relative: bool,
    pub per_bag_rcc: Vec<usize>,
    pub covers: Vec<Vec<CoverSummary>>,
}

impl DecompositionBound {
    fn new(name: &str, value: usize, covers: &BagCovers) -> Self {
        DecompositionBound {
            decomposition: name.into(),
            value,
            pool_relative: covers.pool_relative,
            per_bag_rcc: covers.per_bag.iter().map(|r| r.value).collect(),
            covers: covers
                .per_bag
                .iter()
                .map(|r| {
                    r.cover
                        .entries
                        .iter()
                        .map(|e| CoverSummary {
                            vertices: e.vertices.clone(),
                            kind: e.kind,
                            guards: e.guards(),
                            rounds_to_guard: e.certificate.rounds_to_guard,
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecompositionSummary {
    pub name: String,
    pub bags: usize,
    pub width: usize,
    pub diameter: usize,
    pub valid: bool,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub violation: Option<String>,
    pub clique_intersections: bool,
}

/// Every bound computed for one graph, with the exact cop number when the
/// solver fits the budget.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub exact_c: Option<usize>,
    pub capture_time: Option<u32>,
    pub treewidth: usize,
    pub treewidth_optimal: bool,
    pub eq1_bound: usize,
    pub thm1: Option<DecompositionBound>,
    /// Name of the clique decomposition proving the graph cop-win.
    pub thm_i_copwin: Option<String>,
    pub thm_main2: Option<DecompositionBound>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub capt_bound: Option<CaptureTimeBoundReport>,
    pub decompositions: Vec<DecompositionSummary>,
    pub notes: Vec<String>,
    /// Exact values above a claimed bound. Must stay empty.
    pub violations: Vec<String>,
}

impl BoundReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every bound over the supplied decompositions and checks them
/// against the exact cop number.
pub fn best_bound_report(
    g: &Graph,
    graph_id: &str,
    decomps: &[NamedDecomposition],
    config: &BoundConfig,
) -> Result<BoundReport> {
    if g.n() == 0 {
        return Err(Error::invalid("empty graph"));
    }
    let mut notes = Vec::new();
    let tw = treewidth_exact(g, config.treewidth_exact_limit);
    let eq1 = Eq1Bound::from_width(tw.width, tw.optimal);
    if !tw.optimal {
        notes.push(format!("treewidth {} is a min-degree upper bound", tw.width));
    }

    let (mut exact_c, mut capture_time) = (None, None);
    if config.solve_exact {
        match cop_number_with_solution(g, config.cop_k_max, config.state_budget) {
            Ok(sol) => {
                exact_c = Some(sol.k);
                capture_time = sol.capture_time;
            }
            Err(e @ (Error::Budget { .. } | Error::BoundNotFound { .. } | Error::InvalidInput(_))) => {
                notes.push(format!("exact cop number unavailable: {e}"));
            }
            Err(e) => return Err(e),
        }
    }

    let mut builder = PoolBuilder::new(g, config.pool.clone());
    let mut summaries = Vec::new();
    let mut thm1: Option<(DecompositionBound, &TreeDecomposition, BagCovers)> = None;
    let mut main2: Option<DecompositionBound> = None;
    for nd in decomps {
        let t = &nd.decomposition;
        let violation = t.validate(g).err();
        let (centre_diam, cliques) = if violation.is_none() {
            (t.centre_and_diameter().1, t.pairwise_clique_intersections(g))
        } else {
            (0, false)
        };
        summaries.push(DecompositionSummary {
            name: nd.name.clone(),
            bags: t.num_bags(),
            width: t.width(),
            diameter: centre_diam,
            valid: violation.is_none(),
            violation: violation.as_ref().map(|v| v.to_string()),
            clique_intersections: cliques,
        });
        if let Some(v) = violation {
            notes.push(format!("decomposition {} skipped: {v}", nd.name));
            continue;
        }
        let covers = match BagCovers::compute(g, t, &mut builder, config.mode) {
            Ok(c) => c,
            Err(e @ (Error::Budget { .. } | Error::Uncoverable { .. } | Error::Config(_))) => {
                notes.push(format!("decomposition {}: {e}", nd.name));
                continue;
            }
            Err(e) => return Err(e),
        };
        let value = 2 * covers.max_rcc;
        if thm1.as_ref().is_none_or(|(b, _, _)| value < b.value) {
            thm1 = Some((DecompositionBound::new(&nd.name, value, &covers), t, covers.clone()));
        }
        if cliques {
            let value = covers.max_rcc + 1;
            if main2.as_ref().is_none_or(|b| value < b.value) {
                main2 = Some(DecompositionBound::new(&nd.name, value, &covers));
            }
        }
    }

    let thm_i = theorem_i_bound(g).map(|_| "clique-tree".to_string());
    let capt_bound = match &thm1 {
        Some((_, t, covers)) => {
            let (g_t, tr_t) = measure_g_tr(g, t, &covers.per_bag)?;
            Some(capture_time_bound(t.centre_and_diameter().1, g_t, tr_t))
        }
        None => None,
    };

    let mut violations = Vec::new();
    if let Some(c) = exact_c {
        let mut check = |name: &str, bound: usize| {
            if c > bound {
                violations.push(format!("exact cop number {c} exceeds {name} bound {bound}"));
            }
        };
        if tw.optimal {
            check("eq1_bound", eq1.value);
        }
        if let Some((b, _, _)) = &thm1 {
            check("thm1", b.value);
        }
        if let Some(b) = &main2 {
            check("thm_main2", b.value);
        }
        if thm_i.is_some() {
            check("thm_i_copwin", 1);
        }
    }
    // With exactly the leap controller's cop count the optimal game is no
    // longer than the leap controller's.
    if let (Some(ct), Some(bound), Some((b, _, _))) = (capture_time, capt_bound, &thm1) {
        if exact_c == Some(b.value) && ct as u64 > bound.applicable() {
            violations.push(format!("capture time {ct} exceeds the capture-time bound {}", bound.applicable()));
        }
    }

    Ok(BoundReport {
        graph: graph_id.into(),
        n: g.n(),
        m: g.num_edges(),
        exact_c,
        capture_time,
        treewidth: tw.width,
        treewidth_optimal: tw.optimal,
        eq1_bound: eq1.value,
        thm1: thm1.map(|(b, _, _)| b),
        thm_i_copwin: thm_i,
        thm_main2: main2,
        capt_bound,
        decompositions: summaries,
        notes,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn eq1_examples() {
        assert_eq!(eq1_bound(&generate::clique(6), 16).value, 3);
        assert_eq!(eq1_bound(&generate::grid(4, 4), 16).value, 3);
        assert_eq!(eq1_bound(&generate::cycle(9), 16).value, 2);
    }

    #[test]
    fn clique_report() {
        let g = generate::clique(5);
        let ds = standard_decompositions(&g, None, 16);
        let r = best_bound_report(&g, "clique:5", &ds, &BoundConfig::default()).unwrap();
        assert_eq!(r.exact_c, Some(1));
        assert_eq!(r.eq1_bound, 3);
        assert_eq!(r.thm1.as_ref().unwrap().value, 2);
        assert!(r.thm_i_copwin.is_some());
        assert!(r.is_sound());
    }

    #[test]
    fn grid_report() {
        let g = generate::grid(4, 4);
        let ds = standard_decompositions(&g, Some(4), 16);
        let r = best_bound_report(&g, "grid:4", &ds, &BoundConfig::default()).unwrap();
        assert_eq!(r.exact_c, Some(2));
        assert_eq!(r.eq1_bound, 3);
        let thm1 = r.thm1.unwrap();
        assert_eq!(thm1.value, 2);
        assert!(r.thm_main2.is_none() || r.thm_main2.unwrap().decomposition != "grid");
        assert!(r.thm_i_copwin.is_none());
        assert!(r.violations.is_empty());
    }

    #[test]
    fn glued_four_cycles() {
        // Two 4-cycles sharing the edge {0,1}.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 1)]).unwrap();
        let t = TreeDecomposition::new(
            alloc::vec![VertexSet::from(alloc::vec![0, 1, 2, 3]), VertexSet::from(alloc::vec![0, 1, 4, 5])],
            alloc::vec![(0, 1)],
        );
        let limits = PoolLimits {
            exhaustive_up_to: 0,
            ..PoolLimits::default()
        };
        let mut b = PoolBuilder::new(&g, limits);
        let (v, covers) = theorem_main2_bound(&g, &t, &mut b, RccMode::Exact).unwrap().unwrap();
        assert_eq!(covers.max_rcc, 2);
        assert_eq!(v, 3);
        let (v1, _) = theorem1_bound(&g, &t, &mut b, RccMode::Exact).unwrap();
        assert_eq!(v1, 4);
    }

    #[test]
    fn chordal_graphs_are_certified() {
        let g = generate::k_tree(2, 9, 4).unwrap();
        let cert = theorem_i_bound(&g).unwrap();
        assert!(cert.clique_tree.bags().iter().all(|b| g.is_clique(b)));
        assert!(theorem_i_bound(&generate::cycle(5)).is_none());
        let mut b = PoolBuilder::new(&g, PoolLimits::default());
        let (v, _) = theorem_main2_bound(&g, &cert.clique_tree, &mut b, RccMode::Exact).unwrap().unwrap();
        assert_eq!(v, 2);
    }
}
