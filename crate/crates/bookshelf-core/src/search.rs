//! Exact adversarial analysis by exhaustive search.
//!
//! Every legal move strictly raises `L + R`, so the directed graph of all
//! `n!` shelves with move edges is acyclic and "longest game from here" is a
//! well-defined longest-path problem. States are addressed by their Lehmer
//! rank (position in lexicographic order), values live in a dense table
//! filled lazily with an explicit stack, and a witness sequence is read back
//! by walking the table downhill.
//!
//! The table has `n!` entries, so these operations refuse to run above a
//! configured shelf-size limit rather than quietly allocating gigabytes;
//! callers raise the limit explicitly to acknowledge the cost.

use crate::shelf::{BookId, Shelf};
use crate::LimitExceeded;
use alloc::vec;
use alloc::vec::Vec;

/// Default shelf-size cap for the exhaustive operations. `9! = 362880`
/// states fill in seconds; each step up multiplies the work by `n`.
pub const DEFAULT_STATE_LIMIT: usize = 9;

/// Hard ceiling for the dense table: `12!` entries is ~1.9 GiB, the last
/// size that is even worth attempting in memory.
pub const MAX_STATE_LIMIT: usize = 12;

const UNSET: u32 = u32::MAX;

/// A shelf's Lehmer rank: its index in the lexicographic order of all `n!`
/// arrangements. The sorted shelf is state 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateIndex(pub u64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error("state index {rank} out of range for {n} books")]
    RangeError { rank: u64, n: usize },
    #[error("per-state table has {got} entries, expected {expect}")]
    WrongTableSize { got: usize, expect: u64 },
    #[error("per-state table is inconsistent at state {rank}; recompute it")]
    CorruptTable { rank: u64 },
}

pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "{n}! does not fit in u64");
    (1..=n as u64).product()
}

/// Lehmer rank of `shelf` among all arrangements of its size.
pub fn rank_perm(shelf: &Shelf) -> StateIndex {
    let books = shelf.books();
    let n = books.len();
    let mut rank = 0u64;
    for i in 0..n {
        let smaller_later = books[i + 1..].iter().filter(|&&x| x < books[i]).count();
        rank = rank * (n - i) as u64 + smaller_later as u64;
    }
    StateIndex(rank)
}

/// Inverse of [`rank_perm`].
pub fn unrank_perm(n: usize, index: StateIndex) -> Result<Shelf, SearchError> {
    let count = factorial(n);
    if n == 0 || index.0 >= count {
        return Err(SearchError::RangeError { rank: index.0, n });
    }
    let mut avail: Vec<BookId> = (1..=n as BookId).collect();
    let mut rem = index.0;
    let mut books = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let digit = (rem / f) as usize;
        rem %= f;
        books.push(avail.remove(digit));
    }
    Ok(Shelf::new(books).expect("unranking yields a permutation"))
}

// Longest path to the sink for every state reachable from `start`, shared
// by the move graph here and the swap graph in the inversion module. The
// graph must be acyclic; as a defense against a successor-function bug the
// fill panics if it pushes more work than an acyclic graph allows.
pub(crate) fn fill_longest_from<F>(table: &mut [u32], n: usize, start: StateIndex, successors: &F)
where
    F: Fn(&Shelf, &mut Vec<StateIndex>),
{
    if table[start.0 as usize] != UNSET {
        return;
    }
    // Out-degree is at most n for move edges and n(n-1)/2 for swap edges;
    // n^2 + 1 covers both.
    let push_budget = (table.len() as u64).saturating_mul(n as u64 * n as u64 + 1);
    let mut pushes = 0u64;
    let mut stack: Vec<u64> = vec![start.0];
    let mut succ = Vec::new();
    while let Some(&rank) = stack.last() {
        if table[rank as usize] != UNSET {
            stack.pop();
            continue;
        }
        let shelf = unrank_perm(n, StateIndex(rank)).expect("rank came from the table");
        succ.clear();
        successors(&shelf, &mut succ);
        let mut pending = false;
        let mut best = 0u32;
        for &child in &succ {
            let v = table[child.0 as usize];
            if v == UNSET {
                pending = true;
                pushes += 1;
                assert!(
                    pushes <= push_budget,
                    "state graph is not acyclic: fill exceeded its push budget"
                );
                stack.push(child.0);
            } else if v + 1 > best {
                best = v + 1;
            }
        }
        if !pending {
            table[rank as usize] = best;
            stack.pop();
        }
    }
}

/// Dense memo of "longest game from here" for all `n!` states, filled
/// lazily. Ranks index the table; untouched entries stay at `u32::MAX`.
pub struct SearchMemo {
    n: usize,
    table: Vec<u32>,
}

impl core::fmt::Debug for SearchMemo {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let filled = self.table.iter().filter(|&&v| v != UNSET).count();
        write!(f, "SearchMemo {{ n: {}, filled: {}/{} }}", self.n, filled, self.table.len())
    }
}

impl SearchMemo {
    pub fn new(n: usize) -> Result<Self, LimitExceeded> {
        Self::with_limit(n, DEFAULT_STATE_LIMIT)
    }

    pub fn with_limit(n: usize, limit: usize) -> Result<Self, LimitExceeded> {
        let effective = limit.min(MAX_STATE_LIMIT);
        if n > effective {
            return Err(LimitExceeded { n, limit: effective });
        }
        assert!(n >= 1, "a shelf holds at least one book");
        Ok(SearchMemo {
            n,
            table: vec![UNSET; factorial(n) as usize],
        })
    }

    /// Wraps a previously computed table (say, one loaded from disk). The
    /// size is checked here; the values are cross-checked when a witness
    /// walk uses them, which reports [`SearchError::CorruptTable`] on
    /// anything inconsistent.
    pub fn from_parts(n: usize, table: Vec<u32>) -> Result<Self, SearchError> {
        let expect = factorial(n);
        if table.len() as u64 != expect {
            return Err(SearchError::WrongTableSize {
                got: table.len(),
                expect,
            });
        }
        Ok(SearchMemo { n, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn move_successors(shelf: &Shelf, out: &mut Vec<StateIndex>) {
        for book in shelf.misplaced() {
            let (next, _) = shelf.apply_move(book).expect("misplaced books move");
            out.push(rank_perm(&next));
        }
    }

    /// The exact maximum number of moves any game starting at `shelf` can
    /// last.
    pub fn longest_from(&mut self, shelf: &Shelf) -> u64 {
        assert_eq!(shelf.len(), self.n, "shelf size does not match this memo");
        let start = rank_perm(shelf);
        fill_longest_from(&mut self.table, self.n, start, &Self::move_successors);
        self.table[start.0 as usize] as u64
    }

    /// A move sequence realizing [`Self::longest_from`], preferring the
    /// smallest book id wherever several moves stay on a longest path. The
    /// result replays legally and ends sorted.
    pub fn witness_from(&mut self, shelf: &Shelf) -> Result<Vec<BookId>, SearchError> {
        let mut need = self.longest_from(shelf);
        let mut witness = Vec::with_capacity(need as usize);
        let mut current = shelf.clone();
        'walk: while need > 0 {
            for book in current.misplaced() {
                let (next, _) = current.apply_move(book).expect("misplaced books move");
                let v = self.table[rank_perm(&next).0 as usize];
                if v != UNSET && v as u64 == need - 1 {
                    witness.push(book);
                    current = next;
                    need -= 1;
                    continue 'walk;
                }
            }
            return Err(SearchError::CorruptTable {
                rank: rank_perm(&current).0,
            });
        }
        if !current.is_sorted() {
            return Err(SearchError::CorruptTable {
                rank: rank_perm(&current).0,
            });
        }
        Ok(witness)
    }

    /// Fills the whole table.
    pub fn fill_all(&mut self) {
        for rank in 0..self.table.len() as u64 {
            fill_longest_from(
                &mut self.table,
                self.n,
                StateIndex(rank),
                &Self::move_successors,
            );
        }
    }

    /// The raw table, indexed by rank. Entries never computed read
    /// `u32::MAX`.
    pub fn per_state(&self) -> &[u32] {
        &self.table
    }

    pub fn into_per_state(self) -> Vec<u32> {
        self.table
    }
}

/// Longest possible game from one shelf, with a witness. Uses the default
/// size limit.
pub fn longest_game(shelf: &Shelf) -> Result<(u64, Vec<BookId>), SearchError> {
    longest_game_with_limit(shelf, DEFAULT_STATE_LIMIT)
}

pub fn longest_game_with_limit(
    shelf: &Shelf,
    limit: usize,
) -> Result<(u64, Vec<BookId>), SearchError> {
    let mut memo = SearchMemo::with_limit(shelf.len(), limit)?;
    let length = memo.longest_from(shelf);
    let witness = memo.witness_from(shelf)?;
    Ok((length, witness))
}

/// The global worst case over all `n!` shelves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    /// The worst-case game length `W(n)`.
    pub w: u64,
    /// The smallest-ranked shelf attaining `w`.
    pub argmax: Shelf,
    /// A maximal game from `argmax`.
    pub witness: Vec<BookId>,
    /// Longest game from every state, indexed by rank. Fully filled.
    pub per_state: Vec<u32>,
}

/// Computes `W(n)` exactly, with argmax, witness, and the full per-state
/// table. Uses the default size limit.
pub fn global_worst(n: usize) -> Result<SearchResult, SearchError> {
    global_worst_with_limit(n, DEFAULT_STATE_LIMIT)
}

pub fn global_worst_with_limit(n: usize, limit: usize) -> Result<SearchResult, SearchError> {
    let mut memo = SearchMemo::with_limit(n, limit)?;
    memo.fill_all();
    let (mut w, mut arg_rank) = (0u32, 0u64);
    for (rank, &v) in memo.per_state().iter().enumerate() {
        if v > w {
            w = v;
            arg_rank = rank as u64;
        }
    }
    let argmax = unrank_perm(n, StateIndex(arg_rank))?;
    let witness = memo.witness_from(&argmax)?;
    Ok(SearchResult {
        n,
        w: w as u64,
        argmax,
        witness,
        per_state: memo.into_per_state(),
    })
}
