//! Cops and Robbers on finite reflexive graphs.
//!
//! The crate bundles an exact k-cop game solver, retractions and the shadow
//! game used to guard retracts, tree decompositions (validation, exact
//! treewidth, clique trees) and the retract-cover bounds on the cop number,
//! together with executable cop controllers that realise those bounds.
//!
//! Everything here is `no_std` with `alloc`; file formats, reports and the
//! command-line driver live in the `pursuit` crate.

#![no_std]

extern crate alloc;

pub mod cover;
pub mod error;
pub mod game;
pub mod generate;
pub mod graph;
pub mod guard;
pub mod matching;
pub mod retract;
pub mod strategy;
pub mod td;

pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, InducedSubgraph, VertexSet, UNREACHABLE};
pub use td::TreeDecomposition;
