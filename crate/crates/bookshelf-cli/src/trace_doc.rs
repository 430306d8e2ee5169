//! The on-disk trace format and its validator.
//!
//! JSON is the canonical trace format. The schema carries a version field
//! from day one; field order below is the serialized order, and emitting is
//! deterministic, so a fixed (config, seed, tool_version) produces
//! byte-identical documents.

use bookshelf_core::potential::{check_step, Potential};
use bookshelf_core::shelf::Direction;
use bookshelf_core::strategy::{StrategyId, RNG_NAME};
use bookshelf_core::trace::GameTrace;
use bookshelf_core::Shelf;
use serde::{Deserialize, Serialize};

/// Version of every JSON document and cache file this crate writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub schema_version: u32,
    pub n: usize,
    /// Comma format, same as the `--shelf` flag.
    pub initial: String,
    pub moves: Vec<MoveDoc>,
    /// Lamp readings after each move, aligned with `moves`.
    pub potentials: Vec<PotentialDoc>,
    #[serde(rename = "final")]
    pub final_shelf: String,
    pub length: u64,
    pub metadata: TraceMetadata,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveDoc {
    pub book: u32,
    pub from: usize,
    pub to: usize,
    /// "left" or "right".
    pub direction: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialDoc {
    #[serde(rename = "L")]
    pub l: u128,
    #[serde(rename = "R")]
    pub r: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMetadata {
    pub strategy: String,
    pub seed: u64,
    pub rng_name: String,
    pub tool_version: String,
}

/// Wraps a played-out game into the document form.
pub fn trace_document(trace: &GameTrace, strategy: StrategyId, seed: u64) -> TraceDocument {
    TraceDocument {
        schema_version: SCHEMA_VERSION,
        n: trace.initial.len(),
        initial: trace.initial.to_string(),
        moves: trace
            .steps
            .iter()
            .map(|s| MoveDoc {
                book: s.mv.book,
                from: s.mv.from_pos,
                to: s.mv.to_pos,
                direction: s.mv.direction.name().to_string(),
            })
            .collect(),
        potentials: trace
            .steps
            .iter()
            .map(|s| PotentialDoc {
                l: s.after.l,
                r: s.after.r,
            })
            .collect(),
        final_shelf: trace.final_shelf.to_string(),
        length: trace.steps.len() as u64,
        metadata: TraceMetadata {
            strategy: strategy.name().to_string(),
            seed,
            rng_name: RNG_NAME.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        },
    }
}

/// One disagreement found while re-running a trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceIssue {
    /// 1-based step the issue is anchored to; `null` for document-level
    /// problems.
    pub step: Option<usize>,
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceVerdict {
    pub pass: bool,
    pub issues: Vec<TraceIssue>,
}

fn issue(issues: &mut Vec<TraceIssue>, step: Option<usize>, kind: &str, detail: String) {
    issues.push(TraceIssue {
        step,
        kind: kind.to_string(),
        detail,
    });
}

/// Re-runs the document through the move and lamp machinery and lists every
/// step where replay, potential values, or monotonicity disagree.
pub fn validate_trace_document(doc: &TraceDocument) -> TraceVerdict {
    let mut issues = Vec::new();

    if doc.schema_version != SCHEMA_VERSION {
        issue(
            &mut issues,
            None,
            "schema_version",
            format!(
                "document is version {}, this tool reads {}",
                doc.schema_version, SCHEMA_VERSION
            ),
        );
    }

    let initial = match Shelf::parse(&doc.initial) {
        Ok(s) => s,
        Err(e) => {
            issue(&mut issues, None, "bad_initial", e.to_string());
            return TraceVerdict {
                pass: false,
                issues,
            };
        }
    };

    if initial.len() != doc.n {
        issue(
            &mut issues,
            None,
            "shape",
            format!("n is {} but the initial shelf holds {}", doc.n, initial.len()),
        );
    }
    if doc.moves.len() as u64 != doc.length {
        issue(
            &mut issues,
            None,
            "shape",
            format!("length is {} but {} moves are listed", doc.length, doc.moves.len()),
        );
    }
    if doc.potentials.len() != doc.moves.len() {
        issue(
            &mut issues,
            None,
            "shape",
            format!(
                "{} moves but {} potential readings",
                doc.moves.len(),
                doc.potentials.len()
            ),
        );
    }

    let mut current = initial;
    let mut before = Potential::of(&current);
    for (i, mv_doc) in doc.moves.iter().enumerate() {
        let step = i + 1;
        let (next, mv) = match current.apply_move(mv_doc.book) {
            Ok(pair) => pair,
            Err(e) => {
                issue(&mut issues, Some(step), "illegal_move", e.to_string());
                // The shelf state is unknown from here on; stop replaying.
                return TraceVerdict {
                    pass: false,
                    issues,
                };
            }
        };
        if mv.from_pos != mv_doc.from
            || mv.to_pos != mv_doc.to
            || mv.direction.name() != mv_doc.direction
        {
            issue(
                &mut issues,
                Some(step),
                "move_mismatch",
                format!(
                    "recorded {} -> {} ({}), replay says {} -> {} ({})",
                    mv_doc.from,
                    mv_doc.to,
                    mv_doc.direction,
                    mv.from_pos,
                    mv.to_pos,
                    mv.direction.name()
                ),
            );
        }
        let after = Potential::of(&next);
        if let Some(p) = doc.potentials.get(i) {
            if p.l != after.l || p.r != after.r {
                issue(
                    &mut issues,
                    Some(step),
                    "potential_mismatch",
                    format!(
                        "recorded (L={}, R={}), replay says (L={}, R={})",
                        p.l, p.r, after.l, after.r
                    ),
                );
            }
        }
        let verdict = check_step(before, after, direction_of(&mv_doc.direction, mv.direction));
        if !verdict.pass() {
            issue(&mut issues, Some(step), "monotonicity", verdict.to_string());
        }
        before = after;
        current = next;
    }

    if current.to_string() != doc.final_shelf {
        issue(
            &mut issues,
            None,
            "final_mismatch",
            format!("recorded final {}, replay ends at {}", doc.final_shelf, current),
        );
    }

    TraceVerdict {
        pass: issues.is_empty(),
        issues,
    }
}

// The monotonicity check needs a direction; trust the replayed one and fall
// back to it when the recorded string is unparseable (that mismatch is
// already reported separately).
fn direction_of(recorded: &str, replayed: Direction) -> Direction {
    match recorded {
        "left" => Direction::Left,
        "right" => Direction::Right,
        _ => replayed,
    }
}
