//! Shelf state and the librarian's move.
//!
//! A shelf of `n` books is a permutation of `1..=n` laid out on positions
//! `1..=n` (everything here is 1-based, matching how you'd point at a real
//! shelf). Book `b` belongs at position `b`. One move picks any misplaced
//! book, pulls it out, and reinserts it at its home position; the books
//! between the old and the new slot shift by one to close and reopen the gap.
//! Nothing outside that interval moves.

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Book identifier, 1-based. Book `b` is home when it stands at position `b`.
pub type BookId = u32;

/// Which way a book travels when it goes home.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The book was right of its home position and moves left.
    Left,
    /// The book was left of its home position and moves right.
    Right,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Left => "left",
            Direction::Right => "right",
        }
    }
}

/// An arrangement of books `1..=n`. Always a valid permutation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shelf {
    books: Vec<BookId>,
}

/// One executed move: `book` travelled from `from_pos` to `to_pos`.
///
/// `to_pos` always equals `book` because a move lands at the home position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveRecord {
    pub book: BookId,
    pub from_pos: usize,
    pub to_pos: usize,
    pub direction: Direction,
}

/// Rejected input that was supposed to be a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermutationError {
    #[error("empty shelf")]
    Empty,
    #[error("invalid book id {0:?}")]
    InvalidToken(String),
    #[error("book id {id} out of range 1..={n}")]
    OutOfRange { id: u64, n: usize },
    #[error("book id {id} appears more than once")]
    Duplicate { id: BookId },
}

/// A move request the process does not allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum IllegalMove {
    #[error("book {book} is already at its home position")]
    AlreadyHome { book: BookId },
    #[error("book {book} does not exist on a shelf of {n} books")]
    NoSuchBook { book: BookId, n: usize },
}

impl Shelf {
    /// Validates that `books` is a permutation of `1..=n`.
    pub fn new(books: Vec<BookId>) -> Result<Self, PermutationError> {
        if books.is_empty() {
            return Err(PermutationError::Empty);
        }
        let n = books.len();
        let mut seen = alloc::vec![false; n + 1];
        for &b in &books {
            if b == 0 || b as usize > n {
                return Err(PermutationError::OutOfRange { id: b as u64, n });
            }
            if seen[b as usize] {
                return Err(PermutationError::Duplicate { id: b });
            }
            seen[b as usize] = true;
        }
        Ok(Shelf { books })
    }

    /// The sorted shelf `1, 2, ..., n`.
    pub fn identity(n: usize) -> Self {
        Shelf {
            books: (1..=n as BookId).collect(),
        }
    }

    /// Parses a comma-separated shelf like `"3,1,2"`. Whitespace around the
    /// numbers is fine.
    pub fn parse(text: &str) -> Result<Self, PermutationError> {
        if text.trim().is_empty() {
            return Err(PermutationError::Empty);
        }
        let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
        let n = tokens.len();
        let mut books = Vec::with_capacity(n);
        for tok in tokens {
            let id: u64 = tok
                .parse()
                .map_err(|_| PermutationError::InvalidToken(tok.to_string()))?;
            if id == 0 || id > n as u64 {
                return Err(PermutationError::OutOfRange { id, n });
            }
            books.push(id as BookId);
        }
        Shelf::new(books)
    }

    pub fn len(&self) -> usize {
        self.books.len()
    }

    pub fn is_empty(&self) -> bool {
        self.books.is_empty()
    }

    pub fn books(&self) -> &[BookId] {
        &self.books
    }

    /// The book standing at 1-based `pos`.
    ///
    /// Panics if `pos` is not in `1..=n`; positions come from this module's
    /// own records, so an out-of-range one is a caller bug.
    pub fn book_at(&self, pos: usize) -> BookId {
        self.books[pos - 1]
    }

    /// Where `book` currently stands (1-based), or `None` if it is not on
    /// this shelf.
    pub fn position_of(&self, book: BookId) -> Option<usize> {
        self.books.iter().position(|&b| b == book).map(|i| i + 1)
    }

    pub fn is_sorted(&self) -> bool {
        self.books
            .iter()
            .enumerate()
            .all(|(i, &b)| b as usize == i + 1)
    }

    /// Books that are not at their home position, ascending by id.
    ///
    /// These are exactly the books the librarian may move. Empty iff sorted.
    pub fn misplaced(&self) -> Vec<BookId> {
        let mut out: Vec<BookId> = self
            .books
            .iter()
            .enumerate()
            .filter(|&(i, &b)| b as usize != i + 1)
            .map(|(_, &b)| b)
            .collect();
        out.sort_unstable();
        out
    }

    /// Moves `book` to its home position and returns the new shelf together
    /// with a record of what happened.
    pub fn apply_move(&self, book: BookId) -> Result<(Shelf, MoveRecord), IllegalMove> {
        let from_pos = self
            .position_of(book)
            .ok_or(IllegalMove::NoSuchBook { book, n: self.len() })?;
        let to_pos = book as usize;
        if from_pos == to_pos {
            return Err(IllegalMove::AlreadyHome { book });
        }
        let mut books = self.books.clone();
        books.remove(from_pos - 1);
        books.insert(to_pos - 1, book);
        let direction = if from_pos > to_pos {
            Direction::Left
        } else {
            Direction::Right
        };
        Ok((
            Shelf { books },
            MoveRecord {
                book,
                from_pos,
                to_pos,
                direction,
            },
        ))
    }
}

impl fmt::Display for Shelf {
    /// The same comma-separated form `parse` accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.books.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Shelf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shelf[{self}]")
    }
}

impl FromStr for Shelf {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Shelf::parse(s)
    }
}
