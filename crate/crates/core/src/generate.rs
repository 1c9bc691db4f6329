//! Deterministic graph families used as the test corpus.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Clique(usize),
    Grid(usize, usize),
    KTree { k: usize, n: usize, seed: u64 },
    /// Erdős–Rényi G(n, p); may be disconnected.
    Random { n: usize, p: f64, seed: u64 },
    /// Random labelled tree with every other pair added with probability `p`.
    Connected { n: usize, p: f64, seed: u64 },
    Petersen,
}

impl Family {
    /// Parses `name:args`, e.g. `grid:4`, `grid:3,5`, `ktree:2,10`,
    /// `random:8,0.3`. A trailing seed argument overrides `default_seed`.
    pub fn parse(spec: &str, default_seed: u64) -> Result<Family> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let args: Vec<&str> = args.split(',').filter(|s| !s.is_empty()).collect();
        let int = |i: usize| -> Result<usize> {
            args.get(i)
                .ok_or_else(|| Error::invalid(format!("{name}: missing argument {}", i + 1)))?
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{name}: bad integer '{}'", args[i])))
        };
        let float = |i: usize| -> Result<f64> {
            args.get(i)
                .ok_or_else(|| Error::invalid(format!("{name}: missing argument {}", i + 1)))?
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{name}: bad number '{}'", args[i])))
        };
        let seed = |i: usize| -> Result<u64> {
            match args.get(i) {
                None => Ok(default_seed),
                Some(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("{name}: bad seed '{s}'"))),
            }
        };
        let family = match name {
            "path" => Family::Path(int(0)?),
            "cycle" => Family::Cycle(int(0)?),
            "clique" => Family::Clique(int(0)?),
            "grid" => {
                let n = int(0)?;
                let m = if args.len() > 1 { int(1)? } else { n };
                Family::Grid(n, m)
            }
            "ktree" => Family::KTree {
                k: int(0)?,
                n: int(1)?,
                seed: seed(2)?,
            },
            "random" => Family::Random {
                n: int(0)?,
                p: float(1)?,
                seed: seed(2)?,
            },
            "connected" => Family::Connected {
                n: int(0)?,
                p: float(1)?,
                seed: seed(2)?,
            },
            "petersen" => Family::Petersen,
            other => return Err(Error::invalid(format!("unknown graph family '{other}'"))),
        };
        Ok(family)
    }

    pub fn generate(&self) -> Result<Graph> {
        match *self {
            Family::Path(n) => positive(n).map(|_| path(n)),
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::invalid("cycle needs at least 3 vertices"));
                }
                Ok(cycle(n))
            }
            Family::Clique(n) => positive(n).map(|_| clique(n)),
            Family::Grid(n, m) => {
                positive(n)?;
                positive(m)?;
                Ok(grid(n, m))
            }
            Family::KTree { k, n, seed } => k_tree(k, n, seed),
            Family::Random { n, p, seed } => {
                positive(n)?;
                probability(p)?;
                Ok(random(n, p, seed))
            }
            Family::Connected { n, p, seed } => {
                positive(n)?;
                probability(p)?;
                Ok(random_connected(n, p, seed))
            }
            Family::Petersen => Ok(petersen()),
        }
    }

    /// Side length when the family is a square grid.
    pub fn square_grid_side(&self) -> Option<usize> {
        match *self {
            Family::Grid(n, m) if n == m => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Clique(n) => write!(f, "clique:{n}"),
            Family::Grid(n, m) => write!(f, "grid:{n},{m}"),
            Family::KTree { k, n, seed } => write!(f, "ktree:{k},{n},{seed}"),
            Family::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
            Family::Connected { n, p, seed } => write!(f, "connected:{n},{p},{seed}"),
            Family::Petersen => f.write_str("petersen"),
        }
    }
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::invalid("size parameter must be positive"))
    } else {
        Ok(())
    }
}

fn probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("edge probability {p} outside [0,1]")))
    }
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
}

pub fn clique(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("valid clique")
}

/// Vertex id of grid cell `(row, col)` (0-based) in a grid with `cols` columns.
pub fn grid_vertex(cols: usize, row: usize, col: usize) -> usize {
    row * cols + col
}

/// `rows × cols` Cartesian grid; labels are 1-based `(row,col)`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = grid_vertex(cols, r, c);
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    let labels: Vec<String> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| format!("({},{})", r + 1, c + 1)))
        .collect();
    Graph::from_edges(rows * cols, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("valid grid")
}

/// Random k-tree: a (k+1)-clique grown by repeatedly adding a vertex
/// adjacent to a uniformly chosen existing k-clique.
pub fn k_tree(k: usize, n: usize, seed: u64) -> Result<Graph> {
    if k == 0 {
        return Err(Error::invalid("k-tree needs k >= 1"));
    }
    if k >= n {
        return Err(Error::invalid(format!("k-tree needs k < n (k={k}, n={n})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
    let base: Vec<usize> = (0..=k).collect();
    let mut k_cliques: Vec<Vec<usize>> = (0..=k)
        .map(|skip| base.iter().copied().filter(|&v| v != skip).collect())
        .collect();
    for v in k + 1..n {
        let chosen = k_cliques[rng.gen_range(0..k_cliques.len())].clone();
        for &u in &chosen {
            edges.push((u, v));
        }
        for &drop in &chosen {
            let mut c: Vec<usize> = chosen.iter().copied().filter(|&u| u != drop).collect();
            c.push(v);
            k_cliques.push(c);
        }
    }
    Graph::from_edges(n, edges)
}

pub fn random(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("valid Petersen graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        assert_eq!(clique(5).num_edges(), 10);
        let g = grid(3, 3);
        assert_eq!((g.n(), g.num_edges()), (9, 12));
        assert_eq!(petersen().num_edges(), 15);
        assert!(petersen().neighbors(0).len() == 3);
    }

    #[test]
    fn k_tree_shape() {
        let g = k_tree(2, 6, 1).unwrap();
        assert_eq!((g.n(), g.num_edges()), (6, 9));
        for k in 1..4 {
            for seed in 0..5 {
                let g = k_tree(k, 9, seed).unwrap();
                assert_eq!(g.num_edges(), k * (k + 1) / 2 + (9 - k - 1) * k);
            }
        }
        assert!(matches!(k_tree(3, 3, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random(12, 0.3, 7), random(12, 0.3, 7));
        assert_eq!(k_tree(3, 10, 4).unwrap(), k_tree(3, 10, 4).unwrap());
        assert!(random_connected(9, 0.1, 3).is_connected());
    }

    #[test]
    fn family_parsing() {
        assert_eq!(Family::parse("grid:4", 0).unwrap(), Family::Grid(4, 4));
        assert_eq!(
            Family::parse("ktree:2,10", 5).unwrap(),
            Family::KTree { k: 2, n: 10, seed: 5 }
        );
        assert_eq!(
            Family::parse("ktree:2,10,9", 5).unwrap(),
            Family::KTree { k: 2, n: 10, seed: 9 }
        );
        assert!(Family::parse("hypercube:3", 0).is_err());
        assert!(Family::parse("random:5,1.5", 0).unwrap().generate().is_err());
        use alloc::string::ToString;
        let f = Family::parse("connected:7,0.2,3", 0).unwrap();
        assert_eq!(Family::parse(&f.to_string(), 0).unwrap(), f);
    }
}
