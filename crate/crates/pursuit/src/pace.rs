//! PACE 2017 `.gr` graphs and `.td` tree decompositions.
//!
//! Files are 1-indexed; everything in memory is 0-indexed. Reading a `.td`
//! does not validate the decomposition.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use log::warn;
use pursuit_core::{Graph, TreeDecomposition, VertexSet};

use crate::error::{CliError, FormatError};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && t[0] != "c")
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| FormatError::new(line, format!("{what}: expected a non-negative integer, found '{tok}'")))
}

pub fn parse_gr(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::new(1, "missing 'p tw' header"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "tw" {
        return Err(FormatError::new(hl, "expected header 'p tw <n> <m>'"));
    }
    let n = number(hl, header[2], "vertex count")?;
    let m = number(hl, header[3], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0;
    for (ln, t) in lines {
        if t.len() != 2 {
            return Err(FormatError::new(ln, "expected an edge '<u> <v>'"));
        }
        let u = number(ln, t[0], "endpoint")?;
        let v = number(ln, t[1], "endpoint")?;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(FormatError::new(ln, format!("vertex out of range 1..={n}")));
        }
        if u == v {
            return Err(FormatError::new(ln, format!("self-loop on vertex {u}")));
        }
        count += 1;
        if !seen.insert((u.min(v), u.max(v))) {
            warn!("line {ln}: duplicate edge {u} {v} ignored");
            continue;
        }
        edges.push((u - 1, v - 1));
    }
    if count != m {
        return Err(FormatError::new(hl, format!("header announces {m} edges, found {count}")));
    }
    Graph::from_edges(n, edges).map_err(|e| FormatError::new(hl, e.to_string()))
}

pub fn format_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Parses a `.td` file for a host with `n` vertices.
pub fn parse_td(text: &str, n: usize) -> Result<TreeDecomposition, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::new(1, "missing 's td' header"))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(FormatError::new(hl, "expected header 's td <bags> <max bag size> <n>'"));
    }
    let nb = number(hl, header[2], "bag count")?;
    let max_bag = number(hl, header[3], "bag size")?;
    let hn = number(hl, header[4], "vertex count")?;
    if hn != n {
        return Err(FormatError::new(hl, format!("decomposition is for {hn} vertices, graph has {n}")));
    }
    let mut bags: Vec<Option<VertexSet>> = vec![None; nb];
    let mut edges = Vec::new();
    for (ln, t) in lines {
        if t[0] == "b" {
            let id = number(ln, t.get(1).copied().unwrap_or(""), "bag id")?;
            if id == 0 || id > nb {
                return Err(FormatError::new(ln, format!("bag id {id} out of range 1..={nb}")));
            }
            let mut vs = Vec::with_capacity(t.len() - 2);
            for tok in &t[2..] {
                let v = number(ln, tok, "vertex")?;
                if v == 0 || v > n {
                    return Err(FormatError::new(ln, format!("vertex {v} out of range 1..={n}")));
                }
                vs.push(v - 1);
            }
            if vs.len() > max_bag {
                return Err(FormatError::new(ln, format!("bag has {} vertices, header allows {max_bag}", vs.len())));
            }
            if bags[id - 1].replace(vs.into_iter().collect()).is_some() {
                return Err(FormatError::new(ln, format!("bag {id} defined twice")));
            }
        } else {
            if t.len() != 2 {
                return Err(FormatError::new(ln, "expected a tree edge '<i> <j>'"));
            }
            let a = number(ln, t[0], "bag id")?;
            let b = number(ln, t[1], "bag id")?;
            if a == 0 || b == 0 || a > nb || b > nb {
                return Err(FormatError::new(ln, format!("bag id out of range 1..={nb}")));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| FormatError::new(hl, format!("bag {} is never defined", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TreeDecomposition::new(bags, edges))
}

pub fn format_td(t: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", t.num_bags(), t.max_bag_size(), n);
    for (i, bag) in t.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag.iter() {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in t.edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn with_path(path: &Path) -> impl FnOnce(FormatError) -> CliError + '_ {
    move |source| CliError::Format {
        path: path.to_path_buf(),
        source,
    }
}

pub fn read_gr(path: &Path) -> Result<Graph, CliError> {
    parse_gr(&read(path)?).map_err(with_path(path))
}

pub fn read_td(path: &Path, n: usize) -> Result<TreeDecomposition, CliError> {
    parse_td(&read(path)?, n).map_err(with_path(path))
}

pub fn write_gr(path: &Path, g: &Graph) -> Result<(), CliError> {
    fs::write(path, format_gr(g)).map_err(|e| CliError::io(path, e))
}

pub fn write_td(path: &Path, t: &TreeDecomposition, n: usize) -> Result<(), CliError> {
    fs::write(path, format_td(t, n)).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_three() {
        let g = parse_gr("c a path\np tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && !g.adjacent(0, 2));
        assert_eq!(format_gr(&g), "p tw 3 2\n1 2\n2 3\n");
    }

    #[test]
    fn self_loop_is_rejected() {
        let e = parse_gr("p tw 2 1\n1 1\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_gr("p tw 2 2\n1 2\n2 1\n").unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn td_errors_carry_line_numbers() {
        let e = parse_td("s td 1 3 3\nb 1 1 2 4\n", 3).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_td("s td 2 2 3\nb 1 1 2\nb 3 2 3\n", 3).unwrap_err();
        assert_eq!(e.line, 3);
        let t = parse_td("s td 1 3 3\nb 1 1 2 3\n", 3).unwrap();
        assert_eq!(t.num_bags(), 1);
        assert_eq!(t.bag(0).as_slice(), &[0, 1, 2]);
    }
}
