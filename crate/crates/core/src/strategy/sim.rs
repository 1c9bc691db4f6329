use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Annotation, CopController, RobberPolicy};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::td::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Outcome {
    Captured,
    Timeout,
    /// The robber policy quit before the game ended.
    Aborted,
}

/// Positions at the end of one round. Round 0 is the placement.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Round {
    pub round: usize,
    pub cops: Vec<usize>,
    pub robber: usize,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none", default))]
    pub note: Option<Annotation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimulationTrace {
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
    /// Cop moves made when the robber was caught.
    pub capture_round: Option<usize>,
}

/// Plays `controller` against `robber` for at most `max_rounds` rounds.
/// Every move is checked; an illegal cop or robber move is an error.
pub fn simulate(
    g: &Graph,
    controller: &mut dyn CopController,
    robber: &mut dyn RobberPolicy,
    max_rounds: usize,
) -> Result<SimulationTrace> {
    let n = g.n();
    let k = controller.cop_count();
    let mut cops = controller.place()?;
    if cops.len() != k || cops.iter().any(|&c| c >= n) {
        return Err(Error::IllegalMove {
            round: 0,
            detail: format!("controller placed {:?}, expected {k} vertices below {n}", cops),
        });
    }
    let mut r = robber.place(g, &cops);
    if r >= n {
        return Err(Error::IllegalMove {
            round: 0,
            detail: format!("robber placed on {r}"),
        });
    }
    let mut rounds = vec![Round {
        round: 0,
        cops: cops.clone(),
        robber: r,
        note: controller.annotation(),
    }];
    let done = |rounds, outcome, capture_round| SimulationTrace {
        rounds,
        outcome,
        capture_round,
    };
    if cops.contains(&r) {
        return Ok(done(rounds, Outcome::Captured, Some(0)));
    }
    for round in 1..=max_rounds {
        let next = controller.respond(&cops, r)?;
        if next.len() != k {
            return Err(Error::IllegalMove {
                round,
                detail: format!("controller moved {} cops, expected {k}", next.len()),
            });
        }
        if let Some(i) = (0..k).find(|&i| next[i] >= n || !g.adjacent_or_equal(cops[i], next[i])) {
            return Err(Error::IllegalMove {
                round,
                detail: format!("cop {i} jumped from {} to {}", cops[i], next[i]),
            });
        }
        cops = next;
        let note = controller.annotation();
        if cops.contains(&r) {
            rounds.push(Round {
                round,
                cops,
                robber: r,
                note,
            });
            return Ok(done(rounds, Outcome::Captured, Some(round)));
        }
        let Some(r2) = robber.step(g, &cops, r) else {
            rounds.push(Round {
                round,
                cops,
                robber: r,
                note,
            });
            return Ok(done(rounds, Outcome::Aborted, None));
        };
        if r2 >= n || !g.adjacent_or_equal(r, r2) {
            return Err(Error::IllegalMove {
                round,
                detail: format!("robber jumped from {r} to {r2}"),
            });
        }
        r = r2;
        let caught = cops.contains(&r);
        rounds.push(Round {
            round,
            cops: cops.clone(),
            robber: r,
            note,
        });
        if caught {
            return Ok(done(rounds, Outcome::Captured, Some(round)));
        }
    }
    Ok(done(rounds, Outcome::Timeout, None))
}

/// Rounds in which the robber stood on a vertex already sealed off: once a
/// round's annotation names a guarded frontier bag, every vertex in bags
/// outside the robber's side of that bag (the frontier included) is sealed
/// for all later rounds. Entering a guarded bag just before the capture is
/// not counted.
pub fn never_reenter_violations(trace: &SimulationTrace, t: &TreeDecomposition) -> Vec<usize> {
    let adj = t.tree_adjacency();
    let mut sealed: Vec<usize> = Vec::new();
    let mut violations = Vec::new();
    for (i, round) in trace.rounds.iter().enumerate() {
        let captured = trace.capture_round == Some(round.round) && i + 1 == trace.rounds.len();
        // Stepping onto a guarded bag is answered by the capture.
        let doomed = trace.capture_round.is_some() && i + 2 == trace.rounds.len();
        if !captured && !doomed && sealed.contains(&round.robber) {
            violations.push(round.round);
        }
        let Some(frontier) = round.note.as_ref().and_then(|a| a.frontier) else {
            continue;
        };
        if captured || t.bag(frontier).contains(round.robber) {
            continue;
        }
        let home = t.robber_subtree(round.robber);
        let Some(&start) = home.first() else { continue };
        // Bags on the robber's side of the frontier.
        let mut side = vec![false; t.num_bags()];
        let mut stack = vec![start];
        side[start] = true;
        while let Some(b) = stack.pop() {
            for &c in &adj[b] {
                if c != frontier && !side[c] {
                    side[c] = true;
                    stack.push(c);
                }
            }
        }
        for (b, bag) in t.bags().iter().enumerate() {
            if !side[b] {
                for v in bag.iter() {
                    if !sealed.contains(&v) {
                        sealed.push(v);
                    }
                }
            }
        }
    }
    violations
}
