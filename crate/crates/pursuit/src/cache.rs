//! On-disk cache of solved games.
//!
//! A cache file is plain text:
//!
//! ```text
//! pursuit-solution 1
//! graph <sha256 of the graph's .gr text>
//! k <cops>
//! states <states per side>
//! C <cop,cop,...> <robber> <label>
//! ...
//! R <cop,cop,...> <robber> <label>
//! ```
//!
//! with one state per line, cops-to-move states first, each side in the
//! solver's index order. A label is the number of cop moves to capture
//! under optimal play, or `-` when the robber escapes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use pursuit_core::game::{solve_arena, Arena, GameSolution, Turn};
use pursuit_core::Graph;
use sha2::{Digest, Sha256};

use crate::error::{CliError, FormatError};
use crate::pace::format_gr;

const MAGIC: &str = "pursuit-solution 1";

/// Hex SHA-256 of the graph's `.gr` serialisation.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(format_gr(g).as_bytes()))
}

pub fn encode_solution(g: &Graph, sol: &GameSolution) -> String {
    let per_side = sol.state_count() / 2;
    let mut out = format!("{MAGIC}\ngraph {}\nk {}\nstates {per_side}\n", graph_hash(g), sol.k);
    for (turn, cops, robber, label) in sol.labels() {
        let side = match turn {
            Turn::Cops => 'C',
            Turn::Robber => 'R',
        };
        let cops: Vec<String> = cops.iter().map(|c| c.to_string()).collect();
        let label = label.map_or_else(|| "-".to_string(), |l| l.to_string());
        let _ = writeln!(out, "{side} {} {robber} {label}", cops.join(","));
    }
    out
}

/// Rebuilds the solution for `g`, rejecting files written for another graph.
pub fn decode_solution(g: &Graph, text: &str) -> Result<GameSolution, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| lines.next().ok_or_else(|| FormatError::new(0, format!("missing {what}")));
    let (ln, magic) = next("header")?;
    if magic != MAGIC {
        return Err(FormatError::new(ln, "not a pursuit solution file"));
    }
    let mut field = |name: &str| -> Result<(usize, String), FormatError> {
        let (ln, l) = next(name)?;
        let value = l
            .strip_prefix(name)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| FormatError::new(ln, format!("expected '{name} <value>'")))?;
        Ok((ln, value.to_string()))
    };
    let (ln, hash) = field("graph")?;
    if hash != graph_hash(g) {
        return Err(FormatError::new(ln, "solution belongs to a different graph"));
    }
    let (ln, k) = field("k")?;
    let k: usize = k.parse().map_err(|_| FormatError::new(ln, "bad cop count"))?;
    let (ln, states) = field("states")?;
    let states: usize = states.parse().map_err(|_| FormatError::new(ln, "bad state count"))?;

    let mut cop_turn = Vec::with_capacity(states);
    let mut robber_turn = Vec::with_capacity(states);
    for (ln, l) in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.is_empty() {
            continue;
        }
        if t.len() != 4 {
            return Err(FormatError::new(ln, "expected '<side> <cops> <robber> <label>'"));
        }
        let label = match t[3] {
            "-" => None,
            s => Some(s.parse::<u32>().map_err(|_| FormatError::new(ln, format!("bad label '{s}'")))?),
        };
        match t[0] {
            "C" => cop_turn.push(label),
            "R" => robber_turn.push(label),
            s => return Err(FormatError::new(ln, format!("unknown side '{s}'"))),
        }
    }
    if cop_turn.len() != states || robber_turn.len() != states {
        return Err(FormatError::new(0, format!("expected {states} states per side")));
    }
    GameSolution::from_labels(&Arena::full(g), k, &cop_turn, &robber_turn).map_err(|e| FormatError::new(0, e.to_string()))
}

/// Directory of cached solutions, one file per graph and cop count.
#[derive(Debug, Clone)]
pub struct SolutionCache {
    dir: PathBuf,
}

impl SolutionCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SolutionCache { dir: dir.into() }
    }

    pub fn path_for(&self, g: &Graph, k: usize) -> PathBuf {
        self.dir.join(format!("{}-k{k}.sol", &graph_hash(g)[..16]))
    }

    /// Cached solution if present and readable, else solves and stores it.
    pub fn solve(&self, g: &Graph, k: usize, state_budget: u64) -> Result<GameSolution, CliError> {
        let path = self.path_for(g, k);
        if let Ok(text) = fs::read_to_string(&path) {
            match decode_solution(g, &text) {
                Ok(sol) => {
                    info!("loaded {}", path.display());
                    return Ok(sol);
                }
                Err(e) => warn!("ignoring {}: {e}", path.display()),
            }
        }
        let sol = solve_arena(&Arena::full(g), k, state_budget)?;
        store(&self.dir, &path, &encode_solution(g, &sol))?;
        Ok(sol)
    }
}

fn store(dir: &Path, path: &Path, text: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pursuit_core::game::DEFAULT_STATE_BUDGET;
    use pursuit_core::generate;

    #[test]
    fn round_trip_keeps_every_label() {
        let g = generate::cycle(5);
        let sol = solve_arena(&Arena::full(&g), 2, DEFAULT_STATE_BUDGET).unwrap();
        let text = encode_solution(&g, &sol);
        let back = decode_solution(&g, &text).unwrap();
        assert_eq!(back.cops_win, sol.cops_win);
        assert_eq!(back.capture_time, sol.capture_time);
        assert_eq!(back.opening, sol.opening);
        assert!(sol.labels().eq(back.labels()));
    }

    #[test]
    fn other_graph_is_rejected() {
        let sol = solve_arena(&Arena::full(&generate::cycle(5)), 1, DEFAULT_STATE_BUDGET).unwrap();
        let text = encode_solution(&generate::cycle(5), &sol);
        let e = decode_solution(&generate::path(5), &text).unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn second_solve_reads_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SolutionCache::new(dir.path());
        let g = generate::grid(3, 3);
        let a = cache.solve(&g, 2, DEFAULT_STATE_BUDGET).unwrap();
        assert!(cache.path_for(&g, 2).exists());
        let b = cache.solve(&g, 2, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(a.capture_time, b.capture_time);
    }
}
