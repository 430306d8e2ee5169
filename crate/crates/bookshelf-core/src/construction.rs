//! The inductive worst-case family: shelves that take `2^(n-1) - 1` moves.
//!
//! Start from `n, 1, 2, ..., n-1`. The move sequence is defined by
//! recursion: two books take the single move `1`; to sort `n + 1` books,
//! play the `n`-book sequence with every id shifted up by one (this sorts
//! books `2..=n+1` in front while book 1 rides along at the back), then move
//! book 1 home, which drags the shelf back to the shifted worst start, and
//! play the shifted sequence again. The length therefore satisfies
//! `len(n + 1) = 2 * len(n) + 1`, i.e. `len(n) = 2^(n-1) - 1`, and book `n`
//! is never touched.
//!
//! Unrolling the recursion gives a closed form: step `t` (1-based) moves
//! book `n - 1 - v` where `v` is the number of trailing zero bits of `t`.
//! Odd steps come from the innermost copies, and each extra factor of two
//! walks one level out. [`worst_moves_iter`] uses this to stream the
//! sequence without materializing the recursion.

use crate::shelf::{BookId, Shelf};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("the worst-case family needs at least 2 books, got {n}")]
    TooSmall { n: usize },
    /// The construction failed its own replay. This signals a bug in this
    /// module, not bad input.
    #[error("construction invariant broken: {reason}")]
    Bug { reason: String },
}

/// A verified worst-case instance: the starting shelf and the full move
/// sequence that sorts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstCase {
    pub n: usize,
    pub initial: Shelf,
    pub moves: Vec<BookId>,
}

/// The starting shelf `n, 1, 2, ..., n-1`.
pub fn worst_initial(n: usize) -> Result<Shelf, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::TooSmall { n });
    }
    let mut books = Vec::with_capacity(n);
    books.push(n as BookId);
    books.extend(1..n as BookId);
    Ok(Shelf::new(books).expect("worst start is a permutation"))
}

/// `2^(n-1) - 1`, how many moves the worst-case game takes.
pub fn worst_move_count(n: usize) -> u128 {
    if n < 2 {
        0
    } else {
        (1u128 << (n - 1)) - 1
    }
}

/// The full move sequence, materialized by running the recursion. The
/// result has `2^(n-1) - 1` entries, so keep `n` modest; use
/// [`worst_moves_iter`] when streaming is enough.
pub fn worst_moves(n: usize) -> Result<Vec<BookId>, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::TooSmall { n });
    }
    let mut moves: Vec<BookId> = alloc::vec![1];
    for _ in 3..=n {
        let shifted: Vec<BookId> = moves.iter().map(|&b| b + 1).collect();
        let mut next = Vec::with_capacity(2 * shifted.len() + 1);
        next.extend_from_slice(&shifted);
        next.push(1);
        next.extend_from_slice(&shifted);
        moves = next;
    }
    Ok(moves)
}

/// Streams the same sequence as [`worst_moves`] via the closed form
/// `book(t) = n - 1 - trailing_zeros(t)`.
pub fn worst_moves_iter(n: usize) -> Result<WorstMovesIter, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::TooSmall { n });
    }
    assert!(n <= 64, "streaming supports up to 64 books");
    Ok(WorstMovesIter {
        n: n as u32,
        t: 1,
        count: if n == 64 { u64::MAX } else { (1u64 << (n - 1)) - 1 },
    })
}

pub struct WorstMovesIter {
    n: u32,
    t: u64,
    count: u64,
}

impl Iterator for WorstMovesIter {
    type Item = BookId;

    fn next(&mut self) -> Option<BookId> {
        if self.t > self.count {
            return None;
        }
        let book = self.n - 1 - self.t.trailing_zeros();
        self.t += 1;
        Some(book)
    }
}

/// Builds the `n`-book worst case and replays it, checking the three
/// promised invariants: every move is legal and never touches book `n`, the
/// replay ends sorted, and the length is exactly `2^(n-1) - 1`. A failure
/// is a [`ConstructionError::Bug`].
pub fn verify_worst_case(n: usize) -> Result<WorstCase, ConstructionError> {
    let initial = worst_initial(n)?;
    let moves = worst_moves(n)?;
    let mut current = initial.clone();
    for (i, &book) in moves.iter().enumerate() {
        if book as usize == n {
            return Err(ConstructionError::Bug {
                reason: format!("book {n} moved at step {}", i + 1),
            });
        }
        match current.apply_move(book) {
            Ok((next, _)) => current = next,
            Err(e) => {
                return Err(ConstructionError::Bug {
                    reason: format!("illegal move at step {}: {e}", i + 1),
                })
            }
        }
    }
    if !current.is_sorted() {
        return Err(ConstructionError::Bug {
            reason: format!("replay ended unsorted at {current}"),
        });
    }
    if moves.len() as u128 != worst_move_count(n) {
        return Err(ConstructionError::Bug {
            reason: format!(
                "length {} does not match 2^{} - 1",
                moves.len(),
                n - 1
            ),
        });
    }
    Ok(WorstCase { n, initial, moves })
}
