//! The companion process: swap any two books standing in the wrong order.
//!
//! Pick positions `i < j` whose books satisfy `book(i) > book(j)` and
//! exchange them. Each such swap fixes the pair itself and, for any third
//! position between the two, can only repair pairs, never break more than it
//! repairs; in total the inversion count strictly decreases. It starts at
//! most `n(n-1)/2`, so the process stops within that many swaps, and the
//! reversed shelf swapped one neighbor pair at a time attains the bound
//! exactly.
//!
//! The general process allows any inverted pair; [`SwapMode`] also offers
//! the adjacent-only restriction the optimal example uses. Exact extremal
//! lengths for small `n` come from the same dense-table machinery as the
//! move search: shortest sort by breadth-first search backwards from the
//! sorted shelf, adversarial longest game by longest path (acyclic again,
//! this time because inversions strictly decrease).

use crate::search::{factorial, fill_longest_from, rank_perm, StateIndex};
use crate::shelf::{BookId, Shelf};
use crate::LimitExceeded;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// Exhaustive swap analyses refuse above this shelf size by default.
pub const DEFAULT_SWAP_LIMIT: usize = 8;

/// Which pairs a swap may touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapMode {
    /// Any inverted pair, the process as stated.
    AnyInverted,
    /// Only neighboring inverted pairs.
    AdjacentOnly,
}

/// One executed swap: the books at `pos_i < pos_j` were inverted
/// (`book_i > book_j`) and changed places.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapRecord {
    pub pos_i: usize,
    pub pos_j: usize,
    pub book_i: BookId,
    pub book_j: BookId,
}

/// A full run of the swap process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapGame {
    pub initial: Shelf,
    pub swaps: Vec<SwapRecord>,
    pub final_shelf: Shelf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum IllegalSwap {
    #[error("swap positions must satisfy 1 <= i < j <= {n}, got ({pos_i}, {pos_j})")]
    BadPositions { pos_i: usize, pos_j: usize, n: usize },
    #[error("books {book_i} and {book_j} at positions {pos_i}, {pos_j} are not inverted")]
    NotInverted {
        pos_i: usize,
        pos_j: usize,
        book_i: BookId,
        book_j: BookId,
    },
}

/// Number of pairs standing in the wrong order.
pub fn inversion_count(shelf: &Shelf) -> u64 {
    let books = shelf.books();
    let mut count = 0u64;
    for i in 0..books.len() {
        for j in i + 1..books.len() {
            if books[i] > books[j] {
                count += 1;
            }
        }
    }
    count
}

/// All position pairs a swap may legally touch right now.
pub fn legal_swaps(shelf: &Shelf, mode: SwapMode) -> Vec<(usize, usize)> {
    let books = shelf.books();
    let n = books.len();
    let mut out = Vec::new();
    for i in 1..=n {
        let last = match mode {
            SwapMode::AnyInverted => n,
            SwapMode::AdjacentOnly => (i + 1).min(n),
        };
        for j in i + 1..=last {
            if books[i - 1] > books[j - 1] {
                out.push((i, j));
            }
        }
    }
    out
}

/// Exchanges the inverted pair at `pos_i < pos_j`.
pub fn apply_swap(
    shelf: &Shelf,
    pos_i: usize,
    pos_j: usize,
) -> Result<(Shelf, SwapRecord), IllegalSwap> {
    let n = shelf.len();
    if pos_i == 0 || pos_i >= pos_j || pos_j > n {
        return Err(IllegalSwap::BadPositions { pos_i, pos_j, n });
    }
    let book_i = shelf.book_at(pos_i);
    let book_j = shelf.book_at(pos_j);
    if book_i <= book_j {
        return Err(IllegalSwap::NotInverted {
            pos_i,
            pos_j,
            book_i,
            book_j,
        });
    }
    let mut books = shelf.books().to_vec();
    books.swap(pos_i - 1, pos_j - 1);
    Ok((
        Shelf::new(books).expect("swapping keeps a permutation"),
        SwapRecord {
            pos_i,
            pos_j,
            book_i,
            book_j,
        },
    ))
}

/// The extremal game: sort the reversed shelf `n, ..., 1` with adjacent
/// swaps only, taking exactly `n(n-1)/2` steps (each swap removes exactly
/// one inversion, and the reversed shelf starts with all of them).
pub fn max_swap_game(n: usize) -> SwapGame {
    let initial = if n == 0 {
        Shelf::identity(0)
    } else {
        Shelf::new((1..=n as BookId).rev().collect()).expect("reversal is a permutation")
    };
    let mut current = initial.clone();
    let mut swaps = Vec::with_capacity(n * (n - 1) / 2);
    // Bubble passes; on the reversed shelf every comparison in the first
    // n - 1 passes swaps.
    loop {
        let mut swapped = false;
        for i in 1..n {
            if current.book_at(i) > current.book_at(i + 1) {
                let (next, record) = apply_swap(&current, i, i + 1).expect("checked inverted");
                current = next;
                swaps.push(record);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    assert!(current.is_sorted());
    assert_eq!(swaps.len(), n * (n - 1) / 2, "bubble on the reversal attains the bound");
    SwapGame {
        initial,
        swaps,
        final_shelf: current,
    }
}

/// Cycles of the permutation, fixed points included. The classical
/// unrestricted-transposition sort distance is `n` minus this.
pub fn cycle_count(shelf: &Shelf) -> usize {
    let books = shelf.books();
    let n = books.len();
    let mut seen = vec![false; n + 1];
    let mut cycles = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut b = start;
        while !seen[b] {
            seen[b] = true;
            b = books[b - 1] as usize;
        }
    }
    cycles
}

/// Fewest swaps from every state to sorted, indexed by Lehmer rank.
/// Breadth-first search backwards from the sorted shelf: the predecessors
/// of a state are exactly the swaps of a currently non-inverted pair.
pub fn sort_distance_table(n: usize, mode: SwapMode) -> Result<Vec<u32>, LimitExceeded> {
    sort_distance_table_with_limit(n, mode, DEFAULT_SWAP_LIMIT)
}

pub fn sort_distance_table_with_limit(
    n: usize,
    mode: SwapMode,
    limit: usize,
) -> Result<Vec<u32>, LimitExceeded> {
    if n > limit {
        return Err(LimitExceeded { n, limit });
    }
    assert!(n >= 1, "a shelf holds at least one book");
    let count = factorial(n) as usize;
    let mut dist = vec![u32::MAX; count];
    let mut queue = VecDeque::new();
    dist[rank_perm(&Shelf::identity(n)).0 as usize] = 0;
    queue.push_back(Shelf::identity(n));
    while let Some(state) = queue.pop_front() {
        let d = dist[rank_perm(&state).0 as usize];
        let books = state.books();
        for i in 1..=n {
            let last = match mode {
                SwapMode::AnyInverted => n,
                SwapMode::AdjacentOnly => (i + 1).min(n),
            };
            for j in i + 1..=last {
                // Un-swapping: a predecessor holds these books the other
                // way around, so the pair must read non-inverted here.
                if books[i - 1] < books[j - 1] {
                    let mut prev = books.to_vec();
                    prev.swap(i - 1, j - 1);
                    let prev = Shelf::new(prev).expect("swapping keeps a permutation");
                    let r = rank_perm(&prev).0 as usize;
                    if dist[r] == u32::MAX {
                        dist[r] = d + 1;
                        queue.push_back(prev);
                    }
                }
            }
        }
    }
    Ok(dist)
}

/// Exact minimum number of swaps to sort `shelf`.
pub fn min_sort_length(shelf: &Shelf, mode: SwapMode) -> Result<u64, LimitExceeded> {
    min_sort_length_with_limit(shelf, mode, DEFAULT_SWAP_LIMIT)
}

pub fn min_sort_length_with_limit(
    shelf: &Shelf,
    mode: SwapMode,
    limit: usize,
) -> Result<u64, LimitExceeded> {
    let table = sort_distance_table_with_limit(shelf.len(), mode, limit)?;
    Ok(table[rank_perm(shelf).0 as usize] as u64)
}

/// Longest possible run of the swap process from every state, indexed by
/// Lehmer rank. Same longest-path machinery as the move search.
pub fn swap_longest_table(n: usize, mode: SwapMode) -> Result<Vec<u32>, LimitExceeded> {
    swap_longest_table_with_limit(n, mode, DEFAULT_SWAP_LIMIT)
}

pub fn swap_longest_table_with_limit(
    n: usize,
    mode: SwapMode,
    limit: usize,
) -> Result<Vec<u32>, LimitExceeded> {
    if n > limit {
        return Err(LimitExceeded { n, limit });
    }
    assert!(n >= 1, "a shelf holds at least one book");
    let count = factorial(n) as usize;
    let mut table = vec![u32::MAX; count];
    let successors = |state: &Shelf, out: &mut Vec<StateIndex>| {
        for (i, j) in legal_swaps(state, mode) {
            let (next, _) = apply_swap(state, i, j).expect("legal_swaps returns inverted pairs");
            out.push(rank_perm(&next));
        }
    };
    for rank in 0..count as u64 {
        fill_longest_from(&mut table, n, StateIndex(rank), &successors);
    }
    Ok(table)
}

/// Exact maximum number of swaps an adversarial run from `shelf` can last.
pub fn swap_longest_game(shelf: &Shelf, mode: SwapMode) -> Result<u64, LimitExceeded> {
    swap_longest_game_with_limit(shelf, mode, DEFAULT_SWAP_LIMIT)
}

pub fn swap_longest_game_with_limit(
    shelf: &Shelf,
    mode: SwapMode,
    limit: usize,
) -> Result<u64, LimitExceeded> {
    let n = shelf.len();
    if n > limit {
        return Err(LimitExceeded { n, limit });
    }
    assert!(n >= 1, "a shelf holds at least one book");
    let mut table = vec![u32::MAX; factorial(n) as usize];
    let successors = |state: &Shelf, out: &mut Vec<StateIndex>| {
        for (i, j) in legal_swaps(state, mode) {
            let (next, _) = apply_swap(state, i, j).expect("legal_swaps returns inverted pairs");
            out.push(rank_perm(&next));
        }
    };
    let start = rank_perm(shelf);
    fill_longest_from(&mut table, n, start, &successors);
    Ok(table[start.0 as usize] as u64)
}
