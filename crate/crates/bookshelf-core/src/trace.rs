//! Replaying move sequences into fully annotated traces.

use crate::potential::Potential;
use crate::shelf::{BookId, IllegalMove, MoveRecord, Shelf};
use alloc::vec::Vec;

/// One executed move plus the lamp reading right after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: MoveRecord,
    pub after: Potential,
}

/// A complete record of a game: where it started, every move with the
/// potential it reached, and where it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace {
    pub initial: Shelf,
    pub steps: Vec<TraceStep>,
    pub final_shelf: Shelf,
}

impl GameTrace {
    /// Number of moves played.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The moves alone, in order.
    pub fn moves(&self) -> Vec<BookId> {
        self.steps.iter().map(|s| s.mv.book).collect()
    }
}

/// A replay stopped because a requested move was not legal. Steps count
/// from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("illegal move at step {step}: {source}")]
pub struct SimulateError {
    pub step: usize,
    pub source: IllegalMove,
}

/// Plays the given moves from `initial`, recording each move and the lamp
/// reading after it. The sequence does not have to end sorted; a prefix of a
/// game is a valid trace too.
pub fn simulate(initial: &Shelf, moves: &[BookId]) -> Result<GameTrace, SimulateError> {
    let mut current = initial.clone();
    let mut steps = Vec::with_capacity(moves.len());
    for (i, &book) in moves.iter().enumerate() {
        let (next, mv) = current
            .apply_move(book)
            .map_err(|source| SimulateError { step: i + 1, source })?;
        steps.push(TraceStep {
            mv,
            after: Potential::of(&next),
        });
        current = next;
    }
    Ok(GameTrace {
        initial: initial.clone(),
        steps,
        final_shelf: current,
    })
}
