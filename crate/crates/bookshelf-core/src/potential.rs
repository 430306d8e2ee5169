//! The two-row lamp display and the move-count bounds it yields.
//!
//! Next to the shelf hang two rows of `n - 1` lamps. In row 1, lamp `i` is
//! lit when book `i` stands somewhere in the first `i` positions; in row 2,
//! lamp `i` is lit when book `n + 1 - i` stands somewhere in the last `i`
//! positions. Reading each row as a binary number with lamp 1 as the most
//! significant bit gives the pair `(L, R)`.
//!
//! The display is rigged so that every move makes progress. Moving book `k`
//! left (home from position `p > k`) lights row-1 lamp `k`: the book lands in
//! the first `k` positions, and lamps `1..k` of row 1 are untouched because
//! only the interval `[k, p]` changed and a book in the first `i < k`
//! positions stays there when that interval shifts right by one. Lamps right
//! of `k` may do anything, but they are less significant bits, so `L`
//! strictly increases. `R` cannot drop: books in the last `i` positions with
//! `n + 1 - i < k` or `> p` are outside the shifted interval, and the shift
//! moves interval books rightward, never pulling one out of a suffix.
//! Right moves are the mirror image: `R` strictly increases, `L` never drops.
//!
//! So `L + R` climbs strictly with every move and is capped by
//! `2 * (2^(n-1) - 1) = 2^n - 2`, which bounds any game from shelf `s` by
//! `(2^n - 2) - (L(s) + R(s))` moves. A counting argument tightens the cap:
//! for a middle book `1 < k < n`, comparing `pos(k)` with `k` shows row-1
//! lamp `k` and row-2 lamp `n + 1 - k` cannot both be dark, so at least one
//! lamp of each such guard pair is lit in every arrangement, and the initial
//! `L + R` is at least `ceil(2^(n/2)) - 2`. No game exceeds
//! `2^n - ceil(2^(n/2))` moves.
//!
//! Everything in this module supports shelves of up to 127 books; beyond
//! that `2^n - 2` no longer fits in the `u128` arithmetic used here.

use crate::shelf::{BookId, Direction, Shelf};
use crate::LimitExceeded;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest shelf the u128 lamp arithmetic supports.
pub const MAX_BOOKS: usize = 127;

/// Default cap for [`min_initial_potential`], which enumerates all `n!`
/// shelves.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 9;

/// The lamp display for one arrangement. Both rows have `n - 1` entries;
/// index 0 is lamp 1, the most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LampRows {
    pub n: usize,
    pub row1: Vec<bool>,
    pub row2: Vec<bool>,
}

impl LampRows {
    pub fn of(shelf: &Shelf) -> Self {
        let n = shelf.len();
        assert!(n <= MAX_BOOKS, "lamp display supports up to {MAX_BOOKS} books");
        let mut pos = vec![0usize; n + 1];
        for (i, &b) in shelf.books().iter().enumerate() {
            pos[b as usize] = i + 1;
        }
        let mut row1 = Vec::with_capacity(n.saturating_sub(1));
        let mut row2 = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            row1.push(pos[i] <= i);
            row2.push(pos[n + 1 - i] >= n + 1 - i);
        }
        LampRows { n, row1, row2 }
    }

    /// The guard pair for a middle book `1 < k < n`: row-1 lamp `k` and
    /// row-2 lamp `n + 1 - k`. At least one of the two is always lit,
    /// because `pos(k) <= k` lights the first and `pos(k) >= k` lights the
    /// second. Returns `None` for the end books, which have no such pair.
    pub fn guard_pair(&self, book: BookId) -> Option<(bool, bool)> {
        let k = book as usize;
        if k <= 1 || k >= self.n {
            return None;
        }
        Some((self.row1[k - 1], self.row2[self.n - k]))
    }
}

/// The pair `(L, R)` read off the lamp display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Potential {
    pub l: u128,
    pub r: u128,
}

impl Potential {
    pub fn of(shelf: &Shelf) -> Self {
        let rows = LampRows::of(shelf);
        Potential {
            l: row_value(&rows.row1),
            r: row_value(&rows.row2),
        }
    }

    pub fn sum(self) -> u128 {
        self.l + self.r
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(L={}, R={})", self.l, self.r)
    }
}

fn row_value(row: &[bool]) -> u128 {
    row.iter().fold(0u128, |acc, &lit| (acc << 1) | lit as u128)
}

/// The ceiling of the sum, `2^n - 2` (0 for `n <= 1`, where no lamps exist).
pub fn max_potential_sum(n: usize) -> u128 {
    assert!(n <= MAX_BOOKS, "supports up to {MAX_BOOKS} books");
    if n < 2 {
        0
    } else {
        (1u128 << n) - 2
    }
}

/// How many moves a game from `shelf` can still last, at most:
/// `(2^n - 2) - (L + R)`.
pub fn remaining_bound(shelf: &Shelf) -> u128 {
    max_potential_sum(shelf.len()) - Potential::of(shelf).sum()
}

/// `ceil(2^(n/2))`, the half-power that appears in the counting bound. Exact
/// for even `n`; for odd `n` it is the ceiling of `2^(n/2) = sqrt(2^n)`.
pub fn ceil_pow2_half(n: usize) -> u128 {
    assert!(n <= MAX_BOOKS, "supports up to {MAX_BOOKS} books");
    if n % 2 == 0 {
        1u128 << (n / 2)
    } else {
        let sq = 1u128 << n;
        let root = sq.isqrt();
        if root * root == sq {
            root
        } else {
            root + 1
        }
    }
}

/// Lower bound on the initial `L + R` of any arrangement of `n` books:
/// `ceil(2^(n/2)) - 2`. Comes from the guard pairs: lamp `k` of row 1 or
/// lamp `n + 1 - k` of row 2 is lit for every middle `k`, and the cheapest
/// way to satisfy all pairs still sums to this much.
pub fn min_initial_lower_bound(n: usize) -> u128 {
    if n < 2 {
        0
    } else {
        ceil_pow2_half(n) - 2
    }
}

/// Upper bound on any game of `n` books: `2^n - ceil(2^(n/2))`.
pub fn improved_game_bound(n: usize) -> u128 {
    if n < 2 {
        0
    } else {
        (1u128 << n) - ceil_pow2_half(n)
    }
}

/// The exact minimum of `L + R` over all `n!` arrangements, by enumeration.
pub fn min_initial_potential(n: usize) -> Result<u128, LimitExceeded> {
    min_initial_potential_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

/// Same as [`min_initial_potential`] with an explicit size cap. The
/// enumeration walks all `n!` arrangements, so the caller raises the cap
/// only to acknowledge the cost.
pub fn min_initial_potential_with_limit(n: usize, limit: usize) -> Result<u128, LimitExceeded> {
    if n > limit {
        return Err(LimitExceeded { n, limit });
    }
    assert!(n >= 1, "a shelf holds at least one book");
    let mut arr: Vec<BookId> = (1..=n as BookId).collect();
    let mut pos = vec![0usize; n + 1];
    let mut best = lamp_sum(&arr, &mut pos);
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                arr.swap(0, i);
            } else {
                arr.swap(c[i], i);
            }
            let sum = lamp_sum(&arr, &mut pos);
            if sum < best {
                best = sum;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

// L + R of a raw arrangement without building a Shelf, for the enumerator's
// inner loop. `pos` is scratch of length n + 1.
fn lamp_sum(arr: &[BookId], pos: &mut [usize]) -> u128 {
    let n = arr.len();
    for (i, &b) in arr.iter().enumerate() {
        pos[b as usize] = i + 1;
    }
    let mut l = 0u128;
    let mut r = 0u128;
    for i in 1..n {
        l = (l << 1) | (pos[i] <= i) as u128;
        r = (r << 1) | (pos[n + 1 - i] >= n + 1 - i) as u128;
    }
    l + r
}

/// What the monotonicity laws said about one executed move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepVerdict {
    pub direction: Direction,
    /// `L` did not decrease.
    pub l_non_decreasing: bool,
    /// `R` did not decrease.
    pub r_non_decreasing: bool,
    /// The side matching the move direction strictly increased.
    pub strict_in_direction: bool,
}

impl StepVerdict {
    pub fn pass(self) -> bool {
        self.l_non_decreasing && self.r_non_decreasing && self.strict_in_direction
    }
}

impl fmt::Display for StepVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            return f.write_str("ok");
        }
        let mut broken: Vec<&str> = Vec::new();
        if !self.l_non_decreasing {
            broken.push("L decreased");
        }
        if !self.r_non_decreasing {
            broken.push("R decreased");
        }
        if !self.strict_in_direction {
            broken.push(match self.direction {
                Direction::Left => "left move did not increase L",
                Direction::Right => "right move did not increase R",
            });
        }
        f.write_str(&broken.join("; "))
    }
}

/// Checks one move against the lamp laws: both sides non-decreasing, and the
/// side matching the move direction strictly up.
pub fn check_step(before: Potential, after: Potential, direction: Direction) -> StepVerdict {
    StepVerdict {
        direction,
        l_non_decreasing: after.l >= before.l,
        r_non_decreasing: after.r >= before.r,
        strict_in_direction: match direction {
            Direction::Left => after.l > before.l,
            Direction::Right => after.r > before.r,
        },
    }
}
