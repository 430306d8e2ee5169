//! JSON and CSV shapes for the non-trace commands.

use crate::trace_doc::SCHEMA_VERSION;
use bookshelf_core::construction::WorstCase;
use bookshelf_core::search::SearchResult;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// `construct` output. The verification block is present with `--verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub schema_version: u32,
    pub n: usize,
    pub initial: String,
    pub length: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub book_n_moved: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_sorted: Option<bool>,
    pub moves: Vec<u32>,
}

pub fn construct_report(case: &WorstCase, verified: bool) -> ConstructReport {
    ConstructReport {
        schema_version: SCHEMA_VERSION,
        n: case.n,
        initial: case.initial.to_string(),
        length: case.moves.len() as u128,
        // verify_worst_case replayed the sequence; these report its checks.
        verified: verified.then_some(true),
        book_n_moved: verified.then_some(false),
        final_sorted: verified.then_some(true),
        moves: case.moves.clone(),
    }
}

/// `search` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub n: usize,
    /// Worst-case game length over all n! shelves.
    pub w: u64,
    /// Smallest-ranked shelf attaining `w`.
    pub argmax: String,
    pub witness: Vec<u32>,
    /// Whether the per-state table came from the disk cache.
    pub from_cache: bool,
}

pub fn search_report(result: &SearchResult, from_cache: bool) -> SearchReport {
    SearchReport {
        schema_version: SCHEMA_VERSION,
        n: result.n,
        w: result.w,
        argmax: result.argmax.to_string(),
        witness: result.witness.clone(),
        from_cache,
    }
}

/// One `bounds` row: the construction lower bound, the exact worst case,
/// and the counting upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: usize,
    pub lower: u128,
    pub w: u64,
    pub upper: u128,
}

pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("n,lower,w,upper\n");
    for row in rows {
        writeln!(out, "{},{},{},{}", row.n, row.lower, row.w, row.upper).expect("string write");
    }
    out
}

/// `inversions` summary. The exhaustive block appears with `--exhaustive`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionsReport {
    pub schema_version: u32,
    pub n: usize,
    /// "any" or "adjacent": which pairs a swap may touch.
    pub mode: String,
    /// n(n-1)/2.
    pub max_swaps: u64,
    /// Replayed length of the bubble game on the reversed shelf.
    pub bubble_game_length: u64,
    pub bubble_attains_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<InversionsExhaustive>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionsExhaustive {
    pub states: u64,
    pub max_min_sort_length: u32,
    /// The n-1 claim: no shelf needs more than n-1 swaps.
    pub min_sort_within_n_minus_1: bool,
    /// How min_sort_length compares with n - cycles across all states.
    pub cycle_bound_agreements: u64,
    pub cycle_bound_disagreements: u64,
    /// Whether the adversarial longest game equals the inversion count on
    /// every state.
    pub swap_longest_equals_inversions: bool,
    /// Exact distribution of min_sort_length: entry k counts shelves
    /// needing exactly k swaps.
    pub min_sort_distribution: Vec<u64>,
}

/// Per-state CSV emitted by `inversions --exhaustive --csv`.
pub fn inversions_csv(
    ranks: impl Iterator<Item = (u64, u64, u32, u32)>,
) -> String {
    let mut out = String::from("rank,inversion_count,min_sort_length,swap_longest_game\n");
    for (rank, inv, min_sort, longest) in ranks {
        writeln!(out, "{rank},{inv},{min_sort},{longest}").expect("string write");
    }
    out
}
