use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{capture_move, Annotation, CopController};
use crate::error::Result;
use crate::game::GameSolution;

/// Plays the exact solver's optimal cop strategy.
#[derive(Debug, Clone)]
pub struct TableController {
    solution: Arc<GameSolution>,
}

impl TableController {
    pub fn new(solution: Arc<GameSolution>) -> Self {
        TableController { solution }
    }
}

impl CopController for TableController {
    fn cop_count(&self) -> usize {
        self.solution.k
    }

    fn place(&mut self) -> Result<Vec<usize>> {
        Ok(self.solution.opening.clone())
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>> {
        if let Some(m) = capture_move(self.solution.arena().host(), cops, robber) {
            return Ok(m);
        }
        self.solution.cop_move(cops, robber)
    }

    fn annotation(&self) -> Option<Annotation> {
        Some(Annotation {
            phase: if self.solution.cops_win { "optimal" } else { "losing" }.into(),
            ..Annotation::default()
        })
    }
}
