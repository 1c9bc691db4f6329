//! Guarding a retract: the shadow game and its certificates.
//!
//! Cops confined to the retract `H` chase the robber's image `f(r)`. Once a
//! cop stands on the image it can follow it forever, because `f` sends every
//! robber step to a step or a pass inside `H`; a robber entering `H` then
//! lands next to that cop and is caught on the following move.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::{solve_arena, Arena, GameSolution};
use crate::graph::Graph;
use crate::retract::Retraction;
use crate::strategy::RobberPolicy;

/// Guard number of one retraction together with a playable strategy.
#[derive(Debug, Clone)]
pub struct GuardCertificate {
    pub retraction: Retraction,
    pub guards: usize,
    /// Solved shadow game with `guards` cops.
    pub solution: GameSolution,
    /// Cop placement the strategy starts from (image vertices).
    pub opening: Vec<usize>,
    /// Worst-case cop moves from `opening` until a cop sits on the shadow.
    pub rounds_to_guard: u32,
}

impl GuardCertificate {
    /// True when some cop occupies the robber's shadow.
    pub fn shadow_captured(&self, cops: &[usize], robber: usize) -> bool {
        cops.contains(&self.retraction.apply(robber))
    }

    /// Strategy move for the cops of this certificate (same order as given).
    pub fn cop_move(&self, cops: &[usize], robber: usize) -> Result<Vec<usize>> {
        self.solution.cop_move(cops, robber)
    }

    pub fn image(&self) -> &[usize] {
        self.retraction.image().as_slice()
    }
}

/// Least `k <= k_max` cops that win the shadow game for `r`.
pub fn guard_number(g: &Graph, r: &Retraction, k_max: usize, state_budget: u64) -> Result<GuardCertificate> {
    r.validate(g)?;
    let arena = Arena::shadow(g, r.image().as_slice(), r.map())?;
    for k in 1..=k_max {
        let solution = solve_arena(&arena, k, state_budget)?;
        if let Some(rounds) = solution.capture_time {
            return Ok(GuardCertificate {
                retraction: r.clone(),
                guards: k,
                opening: solution.opening.clone(),
                rounds_to_guard: rounds,
                solution,
            });
        }
    }
    Err(Error::BoundNotFound { k_max })
}

/// A failed guarding trial: the rounds played and what went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardFailure {
    pub trial: usize,
    /// `(cops, robber)` after each round; entry 0 is the placement.
    pub rounds: Vec<(Vec<usize>, usize)>,
    pub reason: String,
}

/// Plays the certificate's strategy against `robber` for `trials` games of
/// `max_rounds` rounds. Checks that the shadow is caught within
/// `rounds_to_guard` moves and that afterwards every robber step into the
/// image is answered by a capture. Trial 0 lets the policy place the robber,
/// trial `t > 0` starts it on vertex `(t - 1) mod n`.
pub fn verify_guarding(
    g: &Graph,
    cert: &GuardCertificate,
    robber: &mut dyn RobberPolicy,
    trials: usize,
    max_rounds: usize,
) -> core::result::Result<(), GuardFailure> {
    let image = cert.retraction.image();
    for trial in 0..trials {
        let mut cops = cert.opening.clone();
        let mut r = if trial == 0 {
            robber.place(g, &cops)
        } else {
            (trial - 1) % g.n()
        };
        let mut rounds = alloc::vec![(cops.clone(), r)];
        let fail = |rounds: &Vec<(Vec<usize>, usize)>, reason: String| GuardFailure {
            trial,
            rounds: rounds.clone(),
            reason,
        };
        let mut guarded_at = cert.shadow_captured(&cops, r).then_some(0);
        for round in 1..=max_rounds {
            let entered = image.contains(r);
            let next = cert
                .cop_move(&cops, r)
                .map_err(|e| fail(&rounds, format!("strategy failed: {e}")))?;
            if let Some((i, _)) = cops
                .iter()
                .zip(&next)
                .enumerate()
                .find(|(_, (a, b))| !g.adjacent_or_equal(**a, **b) || !image.contains(**b))
            {
                return Err(fail(&rounds, format!("cop {i} made an illegal move in round {round}")));
            }
            cops = next;
            let shadow = cert.shadow_captured(&cops, r);
            if guarded_at.is_some() && !shadow {
                return Err(fail(&rounds, format!("shadow escaped in round {round}")));
            }
            if shadow && guarded_at.is_none() {
                guarded_at = Some(round);
                if round as u32 > cert.rounds_to_guard {
                    return Err(fail(
                        &rounds,
                        format!("shadow caught after {round} rounds, certificate promises {}", cert.rounds_to_guard),
                    ));
                }
            }
            if guarded_at.is_some() && entered && !cops.contains(&r) {
                return Err(fail(&rounds, format!("robber entered the image at {r} and survived")));
            }
            if cops.contains(&r) {
                rounds.push((cops.clone(), r));
                break;
            }
            if guarded_at.is_none() && round as u32 >= cert.rounds_to_guard {
                return Err(fail(&rounds, format!("shadow still free after {round} rounds")));
            }
            match robber.step(g, &cops, r) {
                Some(next) if g.adjacent_or_equal(r, next) => r = next,
                Some(next) => return Err(fail(&rounds, format!("robber jumped from {r} to {next}"))),
                None => break,
            }
            rounds.push((cops.clone(), r));
            if cops.contains(&r) {
                break;
            }
        }
    }
    Ok(())
}
