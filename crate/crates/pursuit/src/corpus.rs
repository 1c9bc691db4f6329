//! The fixed instance set used by the acceptance runs.

use pursuit_core::cover::{standard_decompositions, NamedDecomposition};
use pursuit_core::generate::Family;
use pursuit_core::Graph;

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
    pub decompositions: Vec<NamedDecomposition>,
}

/// Generator specs of the corpus, in a fixed order.
pub fn specs() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    out.extend((3..=6).map(|n| format!("grid:{n}")));
    out.push("grid:2,5".into());
    out.extend([2, 5, 8].map(|n| format!("path:{n}")));
    out.extend([4, 5, 7].map(|n| format!("cycle:{n}")));
    out.extend([1, 4, 6].map(|n| format!("clique:{n}")));
    out.extend((0..4).map(|s| format!("ktree:2,9,{s}")));
    out.extend((0..2).map(|s| format!("ktree:3,10,{s}")));
    out.push("petersen".into());
    out.extend((0..6).map(|s| format!("connected:8,0.3,{s}")));
    out
}

pub fn instance(spec: &str, exact_limit: usize) -> pursuit_core::Result<Instance> {
    let family = Family::parse(spec, 0)?;
    let graph = family.generate()?;
    let decompositions = standard_decompositions(&graph, family.square_grid_side(), exact_limit);
    Ok(Instance {
        id: family.to_string(),
        graph,
        decompositions,
    })
}

pub fn instances(exact_limit: usize) -> Vec<Instance> {
    specs()
        .iter()
        .map(|s| instance(s, exact_limit).expect("corpus specs are valid"))
        .collect()
}
