//! Finite reflexive undirected graphs.
//!
//! Loops are implicit: every vertex is treated as adjacent to itself for
//! movement purposes ("passing"), but no self-loop is ever stored.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Distance between vertices in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Sorted, duplicate-free list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = core::iter::Copied<core::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Undirected graph on dense vertex ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Repeated edges collapse into one;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(alloc::format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(alloc::format!("self-loop at vertex {u}")));
            }
            if !g.matrix[u * n + v] {
                g.matrix[u * n + v] = true;
                g.matrix[v * n + u] = true;
                g.adj[u].push(v);
                g.adj[v].push(u);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::invalid("label count does not match vertex count"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Open neighbourhood, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// `v` followed by its neighbours: every legal destination of a player on `v`.
    pub fn closed_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        core::iter::once(v).chain(self.adj[v].iter().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    /// Adjacency in the reflexive sense.
    pub fn adjacent_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.adjacent(u, v)
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// BFS distances from `source`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances(&self) -> DistanceMatrix {
        let mut d = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            d.extend(self.bfs(s));
        }
        DistanceMatrix { n: self.n, d }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let d = self.bfs(s);
            let comp: VertexSet = (0..self.n).filter(|&v| d[v] != UNREACHABLE).collect();
            for v in comp.iter() {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// A shortest path from `from` to `to` using only vertices accepted by
    /// `allowed` (the endpoints must be allowed too). Among shortest paths
    /// the one returned is lexicographically smallest by vertex id.
    pub fn shortest_path_within<F>(&self, from: usize, to: usize, allowed: F) -> Option<Vec<usize>>
    where
        F: Fn(usize) -> bool,
    {
        if !allowed(from) || !allowed(to) {
            return None;
        }
        // BFS backwards from `to` so the walk from `from` can pick the
        // smallest next vertex greedily.
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[to] = 0;
        queue.push_back(to);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE && allowed(w) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist[from] == UNREACHABLE {
            return None;
        }
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| dist[w] != UNREACHABLE && dist[w] + 1 == dist[cur])?;
            path.push(cur);
        }
        Some(path)
    }

    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        self.shortest_path_within(from, to, |_| true)
    }

    /// True iff every pair of distinct vertices in `s` is adjacent.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let v = s.as_slice();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    /// True iff `seq` is a path whose internal distances agree with the
    /// host metric, i.e. `d(seq[i], seq[j]) = |i - j|`.
    pub fn is_isometric_path(&self, seq: &[usize]) -> Result<bool> {
        if seq.is_empty() {
            return Err(Error::invalid("empty vertex sequence"));
        }
        let mut seen = vec![false; self.n];
        for &v in seq {
            if v >= self.n {
                return Err(Error::invalid(alloc::format!("vertex {v} out of range")));
            }
            if core::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(alloc::format!("vertex {v} repeated in path")));
            }
        }
        for (i, &a) in seq.iter().enumerate() {
            let d = self.bfs(a);
            for (j, &b) in seq.iter().enumerate().skip(i + 1) {
                if d[b] as usize != j - i {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn induced<'a>(&'a self, support: VertexSet) -> Result<InducedSubgraph<'a>> {
        if let Some(&v) = support.as_slice().last() {
            if v >= self.n {
                return Err(Error::invalid(alloc::format!("vertex {v} out of range")));
            }
        }
        Ok(InducedSubgraph {
            host: self,
            support,
        })
    }

    /// Copy of the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length mismatch"));
        }
        let check: VertexSet = perm.iter().copied().collect();
        if check.len() != self.n || check.as_slice().last().is_some_and(|&m| m >= self.n) {
            return Err(Error::invalid("not a permutation"));
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// All maximal cliques (Bron-Kerbosch with pivoting), each sorted, in
    /// lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let p: Vec<usize> = (0..self.n).collect();
        self.bron_kerbosch(&mut Vec::new(), p, Vec::new(), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.iter().copied().collect());
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.adjacent(u, v)).count())
            .expect("p or x nonempty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.adjacent(pivot, v)).collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}

/// All-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

/// A vertex subset of a host graph, carrying the induced adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph<'a> {
    pub host: &'a Graph,
    pub support: VertexSet,
}

impl InducedSubgraph<'_> {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.support.contains(v)
    }

    /// Standalone copy with vertices renumbered `0..len` in support order.
    pub fn to_graph(&self) -> Graph {
        let s = self.support.as_slice();
        let mut edges = Vec::new();
        for (i, &a) in s.iter().enumerate() {
            for (j, &b) in s.iter().enumerate().skip(i + 1) {
                if self.host.adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(s.len(), edges).expect("induced edges are valid");
        match self.host.labels() {
            Some(l) => g
                .with_labels(s.iter().map(|&v| l[v].clone()).collect())
                .expect("label count matches"),
            None => g,
        }
    }

    /// Distances measured inside the subgraph, indexed by support position.
    pub fn internal_distances(&self) -> DistanceMatrix {
        self.to_graph().distances()
    }
}
