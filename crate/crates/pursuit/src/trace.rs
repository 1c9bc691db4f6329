//! Simulation traces as JSON lines, plus a text board for grid graphs.

use std::fmt::Write as _;

use pursuit_core::strategy::{Outcome, Round, SimulationTrace};
use serde::{Deserialize, Serialize};

use crate::error::FormatError;

#[derive(Serialize, Deserialize)]
struct Footer {
    outcome: Outcome,
    capture_round: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Line {
    Round(Round),
    Footer(Footer),
}

/// One round per line, then a footer line with the outcome.
pub fn to_jsonl(trace: &SimulationTrace) -> String {
    let mut out = String::new();
    for r in &trace.rounds {
        out.push_str(&serde_json::to_string(r).expect("rounds serialise"));
        out.push('\n');
    }
    let footer = Footer {
        outcome: trace.outcome,
        capture_round: trace.capture_round,
    };
    out.push_str(&serde_json::to_string(&footer).expect("footer serialises"));
    out.push('\n');
    out
}

pub fn from_jsonl(text: &str) -> Result<SimulationTrace, FormatError> {
    let mut rounds = Vec::new();
    let mut footer = None;
    for (i, l) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        if footer.is_some() {
            return Err(FormatError::new(i + 1, "content after the footer"));
        }
        match serde_json::from_str::<Line>(l).map_err(|e| FormatError::new(i + 1, e.to_string()))? {
            Line::Round(r) => rounds.push(r),
            Line::Footer(f) => footer = Some(f),
        }
    }
    let f = footer.ok_or_else(|| FormatError::new(0, "missing footer line"))?;
    Ok(SimulationTrace {
        rounds,
        outcome: f.outcome,
        capture_round: f.capture_round,
    })
}

/// Row-major board for a `rows × cols` grid: `C` cop, `R` robber, `X` both,
/// digits for stacked cops.
pub fn render_board(rows: usize, cols: usize, cops: &[usize], robber: usize) -> String {
    let mut out = String::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            let k = cops.iter().filter(|&&x| x == v).count();
            let ch = match (k, v == robber) {
                (0, false) => '.',
                (0, true) => 'R',
                (_, true) => 'X',
                (1, false) => 'C',
                (k, false) => char::from_digit(k.min(9) as u32, 10).unwrap_or('C'),
            };
            if c > 0 {
                out.push(' ');
            }
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

/// Plain listing of a trace, with boards when the grid shape is known.
pub fn render_trace(trace: &SimulationTrace, grid: Option<(usize, usize)>) -> String {
    let mut out = String::new();
    for r in &trace.rounds {
        let _ = write!(out, "round {}: cops {:?} robber {}", r.round, r.cops, r.robber);
        if let Some(a) = &r.note {
            let _ = write!(out, " [{}", a.phase);
            if let Some(f) = a.frontier {
                let _ = write!(out, ", frontier {f}");
            }
            if let Some(t) = a.toward {
                let _ = write!(out, ", toward {t}");
            }
            out.push(']');
        }
        out.push('\n');
        if let Some((rows, cols)) = grid {
            out.push_str(&render_board(rows, cols, &r.cops, r.robber));
        }
    }
    let _ = writeln!(out, "outcome: {}", outcome_name(trace.outcome));
    out
}

pub fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Captured => "captured",
        Outcome::Timeout => "timeout",
        Outcome::Aborted => "incomplete",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pursuit_core::strategy::Annotation;

    #[test]
    fn jsonl_round_trip() {
        let trace = SimulationTrace {
            rounds: vec![
                Round {
                    round: 0,
                    cops: vec![0, 4],
                    robber: 8,
                    note: None,
                },
                Round {
                    round: 1,
                    cops: vec![1, 4],
                    robber: 8,
                    note: Some(Annotation {
                        frontier: Some(2),
                        toward: None,
                        phase: "holding".into(),
                    }),
                },
            ],
            outcome: Outcome::Timeout,
            capture_round: None,
        };
        let text = to_jsonl(&trace);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(from_jsonl(&text).unwrap(), trace);
    }

    #[test]
    fn board() {
        assert_eq!(render_board(2, 3, &[0, 0, 4], 5), "2 . .\n. C R\n");
        assert_eq!(render_board(1, 2, &[1], 1), ". X\n");
    }
}
