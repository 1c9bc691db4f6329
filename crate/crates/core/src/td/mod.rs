//! Tree decompositions and the tree utilities the cop strategies need.

mod chordal;
mod treewidth;

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use chordal::{clique_tree, is_perfect_elimination_order, maximum_cardinality_search};
pub use treewidth::{
    decomposition_from_elimination, min_degree_order, treewidth_exact, TreewidthResult,
    DEFAULT_EXACT_LIMIT,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Bags over the host's vertices, joined by tree edges between bag ids.
///
/// Construction does not validate; call [`TreeDecomposition::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

/// The first broken rule found by [`TreeDecomposition::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    VertexOutOfRange { bag: usize, vertex: usize },
    /// Property (1): some vertex is in no bag.
    UncoveredVertex(usize),
    /// Property (2): no bag holds both ends of this edge.
    UncoveredEdge(usize, usize),
    /// Property (3): the bags holding `vertex` are not connected in the
    /// tree; `bags` are two of them in different pieces.
    DisconnectedOccurrences { vertex: usize, bags: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "bag graph is not a tree: {why}"),
            Violation::VertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} holds vertex {vertex}, which is out of range")
            }
            Violation::UncoveredVertex(v) => write!(f, "property 1: vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "property 2: edge ({u},{v}) is in no bag"),
            Violation::DisconnectedOccurrences { vertex, bags } => write!(
                f,
                "property 3: bags {} and {} hold vertex {vertex} but the bags between them do not",
                bags.0, bags.1
            ),
        }
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition { bags, edges }
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![(0..g.n()).collect()],
            edges: Vec::new(),
        }
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, i: usize) -> &VertexSet {
        &self.bags[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Checks that the bag graph is a tree.
    pub fn check_tree(&self) -> core::result::Result<(), Violation> {
        let k = self.bags.len();
        if k == 0 {
            return Err(Violation::NotATree("no bags".into()));
        }
        for &(a, b) in &self.edges {
            if a >= k || b >= k {
                return Err(Violation::NotATree(alloc::format!("edge ({a},{b}) names a missing bag")));
            }
            if a == b {
                return Err(Violation::NotATree(alloc::format!("loop at bag {a}")));
            }
        }
        if self.edges.len() != k - 1 {
            return Err(Violation::NotATree(alloc::format!(
                "{} edges over {k} bags",
                self.edges.len()
            )));
        }
        let dist = bfs(&self.tree_adjacency(), 0);
        if let Some(b) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Violation::NotATree(alloc::format!("bag {b} is not connected to bag 0")));
        }
        Ok(())
    }

    /// Checks the tree structure and the three decomposition properties.
    /// Property (3) is checked as "the bags holding each vertex induce a
    /// connected subtree".
    pub fn validate(&self, g: &Graph) -> core::result::Result<(), Violation> {
        self.check_tree()?;
        let n = g.n();
        let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for v in bag.iter() {
                if v >= n {
                    return Err(Violation::VertexOutOfRange { bag: i, vertex: v });
                }
                occurrences[v].push(i);
            }
        }
        if let Some(v) = occurrences.iter().position(Vec::is_empty) {
            return Err(Violation::UncoveredVertex(v));
        }
        for (u, v) in g.edges() {
            if !occurrences[u].iter().any(|&b| self.bags[b].contains(v)) {
                return Err(Violation::UncoveredEdge(u, v));
            }
        }
        let adj = self.tree_adjacency();
        for (v, occ) in occurrences.iter().enumerate() {
            let reached = bfs_within(&adj, occ[0], |b| self.bags[b].contains(v));
            if let Some(&other) = occ.iter().find(|&&b| reached[b] == usize::MAX) {
                return Err(Violation::DisconnectedOccurrences {
                    vertex: v,
                    bags: (occ[0], other),
                });
            }
        }
        Ok(())
    }

    /// [`validate`](Self::validate) as a crate error.
    pub fn ensure_valid(&self, g: &Graph) -> Result<()> {
        self.validate(g).map_err(Error::InvalidDecomposition)
    }

    /// Hop distances between all pairs of bags.
    pub fn tree_distances(&self) -> Vec<Vec<usize>> {
        let adj = self.tree_adjacency();
        (0..self.bags.len()).map(|b| bfs(&adj, b)).collect()
    }

    /// Centre bags (one or two, by repeated leaf stripping) and the tree's
    /// diameter in edges.
    pub fn centre_and_diameter(&self) -> (Vec<usize>, usize) {
        let adj = self.tree_adjacency();
        let k = self.bags.len();
        if k <= 1 {
            return ((0..k).collect(), 0);
        }
        let d0 = bfs(&adj, 0);
        let far = (0..k).max_by_key(|&b| (d0[b], core::cmp::Reverse(b))).expect("bags");
        let d1 = bfs(&adj, far);
        let diameter = *d1.iter().max().expect("bags");

        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; k];
        let mut layer: Vec<usize> = (0..k).filter(|&b| degree[b] <= 1).collect();
        let mut remaining = k;
        while remaining > 2 {
            let mut next = Vec::new();
            for &leaf in &layer {
                removed[leaf] = true;
                remaining -= 1;
                for &w in &adj[leaf] {
                    if !removed[w] {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        let centre = (0..k).filter(|&b| !removed[b]).collect();
        (centre, diameter)
    }

    /// Bags containing vertex `r` (a connected subtree in a valid decomposition).
    pub fn robber_subtree(&self, r: usize) -> Vec<usize> {
        (0..self.bags.len()).filter(|&b| self.bags[b].contains(r)).collect()
    }

    /// True iff every pair of adjacent bags meets in a clique. By the subtree
    /// property this covers every pair of bags: the intersection of any two
    /// lies inside the intersection across each tree edge between them.
    pub fn pairwise_clique_intersections(&self, g: &Graph) -> bool {
        self.clique_intersection_witness(g).is_none()
    }

    /// A tree edge whose bag intersection is not a clique, with a
    /// non-adjacent pair from it.
    pub fn clique_intersection_witness(&self, g: &Graph) -> Option<((usize, usize), (usize, usize))> {
        for &(a, b) in &self.edges {
            let common = self.bags[a].intersection(&self.bags[b]);
            let s = common.as_slice();
            for (i, &x) in s.iter().enumerate() {
                if let Some(&y) = s[i + 1..].iter().find(|&&y| !g.adjacent(x, y)) {
                    return Some(((a, b), (x, y)));
                }
            }
        }
        None
    }

    /// Contracts every bag that is contained in a neighbouring bag.
    pub fn simplify(mut self) -> Self {
        loop {
            let found = self.edges.iter().enumerate().find_map(|(i, &(a, b))| {
                if self.bags[a].is_subset(&self.bags[b]) {
                    Some((i, a, b))
                } else if self.bags[b].is_subset(&self.bags[a]) {
                    Some((i, b, a))
                } else {
                    None
                }
            });
            let Some((edge, gone, keep)) = found else {
                return self;
            };
            self.edges.swap_remove(edge);
            for e in &mut self.edges {
                if e.0 == gone {
                    e.0 = keep;
                }
                if e.1 == gone {
                    e.1 = keep;
                }
            }
            // Move the last bag into the freed slot.
            let last = self.bags.len() - 1;
            self.bags.swap_remove(gone);
            if gone != last {
                for e in &mut self.edges {
                    if e.0 == last {
                        e.0 = gone;
                    }
                    if e.1 == last {
                        e.1 = gone;
                    }
                }
            }
        }
    }
}

pub(crate) fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
    bfs_within(adj, source, |_| true)
}

fn bfs_within<F: Fn(usize) -> bool>(adj: &[Vec<usize>], source: usize, allowed: F) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX && allowed(w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Vertex id of the grid cell `(i, j)`, 1-based as in the bag formula.
fn cell(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// Index of bag `B_{i,j}` (1-based) in [`grid_path_decomposition`].
pub fn grid_bag_index(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// Vertices of `B_{i,j}` in path order: `(i+1,1) .. (i+1,j)` then
/// `(i,j) .. (i,n)`.
pub fn grid_bag_path(n: usize, i: usize, j: usize) -> Vec<usize> {
    (1..=j)
        .map(|k| cell(n, i + 1, k))
        .chain((j..=n).map(|k| cell(n, i, k)))
        .collect()
}

/// Decomposition of the `n × n` grid into the bags
/// `B_{i,j} = {(i,k): j ≤ k ≤ n} ∪ {(i+1,k): 1 ≤ k ≤ j}` for
/// `1 ≤ i ≤ n-1`, `1 ≤ j ≤ n`, joined as a path in lexicographic `(i, j)`
/// order. Each bag is an isometric path of `n + 1` vertices.
pub fn grid_path_decomposition(n: usize) -> Result<TreeDecomposition> {
    if n < 2 {
        return Err(Error::invalid("grid decomposition needs n >= 2"));
    }
    let mut bags = Vec::with_capacity(n * (n - 1));
    for i in 1..n {
        for j in 1..=n {
            bags.push(grid_bag_path(n, i, j).into_iter().collect());
        }
    }
    let edges = (1..bags.len()).map(|b| (b - 1, b)).collect();
    Ok(TreeDecomposition { bags, edges })
}
