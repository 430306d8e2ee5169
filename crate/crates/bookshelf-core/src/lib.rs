//! The bookshelf sorting process and everything needed to analyze it.
//!
//! A librarian looks at a shelf of `n` books, takes any book that is not at
//! its home position, and reinserts it where it belongs; the books in
//! between shift over by one. The process repeats until the shelf is
//! sorted. This crate implements the process and the machinery around it:
//!
//! - [`shelf`]: shelf states and the move itself.
//! - [`potential`]: the two-row lamp display whose reading strictly
//!   increases with every move, proving termination and bounding game
//!   length by `2^n - 2` (improved to `2^n - ceil(2^(n/2))`).
//! - [`construction`]: the family of shelves that take exactly
//!   `2^(n-1) - 1` moves.
//! - [`search`]: exact worst cases for small `n` by longest path over the
//!   (acyclic) state graph.
//! - [`strategy`]: deterministic, random, and oracle-guided librarians,
//!   with fully reproducible traces.
//! - [`inversion`]: the companion process that swaps any two books standing
//!   in the wrong order, with its own quadratic bound.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization, and the command
//! line live in the companion `bookshelf-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod construction;
pub mod inversion;
pub mod potential;
pub mod search;
pub mod shelf;
pub mod strategy;
pub mod trace;

pub use shelf::{BookId, Direction, IllegalMove, MoveRecord, PermutationError, Shelf};

/// An exhaustive operation was asked for more states than its configured
/// limit allows. The caller opts into the cost by raising the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("n = {n} is over the exhaustive limit {limit}; raise the limit to acknowledge the cost")]
pub struct LimitExceeded {
    pub n: usize,
    pub limit: usize,
}
