//! Flag parsing, dispatch, and the exit-code contract.
//!
//! Exit codes are part of the interface: 0 success, 1 failed validation or
//! IO trouble, 2 usage, 3 a size or budget limit refused the request, 4 an
//! internal invariant broke (always worth a bug report). Failures print one
//! JSON object to stderr: `{"error": kind, "detail": text}`.

use crate::cache;
use crate::reports::{
    bounds_csv, construct_report, inversions_csv, search_report, BoundsRow, InversionsExhaustive,
    InversionsReport,
};
use crate::trace_doc::{trace_document, validate_trace_document, TraceDocument, SCHEMA_VERSION};
use bookshelf_core::construction::{
    verify_worst_case, worst_initial, worst_move_count, worst_moves, ConstructionError, WorstCase,
};
use bookshelf_core::inversion::{self, SwapMode, DEFAULT_SWAP_LIMIT};
use bookshelf_core::potential::{improved_game_bound, MAX_BOOKS};
use bookshelf_core::search::{
    factorial, unrank_perm, SearchError, SearchMemo, SearchResult, StateIndex,
    DEFAULT_STATE_LIMIT, MAX_STATE_LIMIT,
};
use bookshelf_core::strategy::{play_cached, OracleCache, StrategyError, StrategyId};
use bookshelf_core::trace::simulate;
use bookshelf_core::Shelf;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser)]
#[command(
    name = "bookshelf",
    version,
    about = "Simulate and analyze the bookshelf sorting process",
    arg_required_else_help = true
)]
struct Cli {
    /// Directory for cached search tables. Overrides BOOKSHELF_CACHE_DIR.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Let exhaustive commands go up to n = 12, acknowledging the memory
    /// and time cost.
    #[arg(long, global = true)]
    unsafe_n: bool,

    /// Largest move list any command will materialize.
    #[arg(long, global = true, value_name = "MOVES", default_value_t = 10_000_000)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and print its trace as JSON.
    Simulate {
        /// Starting arrangement, comma format, e.g. "3,1,2".
        #[arg(long)]
        shelf: String,
        /// leftmost, rightmost, random, greedy, or oracle.
        #[arg(long, default_value = "leftmost")]
        strategy: String,
        /// Seed for the random strategy's draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the trace to this file.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
    },
    /// Emit the n-book member of the 2^(n-1)-1 family as JSON.
    Construct {
        #[arg(long)]
        n: usize,
        /// Replay the sequence and report the invariant checks.
        #[arg(long)]
        verify: bool,
        /// Also write the report to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Exact worst case over all n! starting shelves.
    Search {
        #[arg(long)]
        n: usize,
        /// Write the per-state table to this file (same binary layout as
        /// the cache).
        #[arg(long, value_name = "FILE")]
        per_state: Option<PathBuf>,
        /// Write the worst game as a trace document to this file.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Table of lower bound, exact worst case, and upper bound for
    /// n = 2..=n-max.
    Bounds {
        #[arg(long)]
        n_max: usize,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Also write the table to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Statistics for the inverted-pair swap process.
    Inversions {
        #[arg(long)]
        n: usize,
        /// Sweep all n! shelves for min-sort and longest-game statistics.
        #[arg(long)]
        exhaustive: bool,
        /// Write per-shelf rows (rank, inversion_count, min_sort_length,
        /// swap_longest_game) to this file. Implies the exhaustive sweep.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        /// Restrict swaps to adjacent positions.
        #[arg(long)]
        adjacent_only: bool,
    },
    /// Re-check a trace document produced by simulate.
    Validate {
        /// Trace file to check.
        #[arg(long, value_name = "FILE")]
        trace: PathBuf,
    },
}

struct Globals {
    cache_dir: PathBuf,
    unsafe_n: bool,
    budget: u64,
}

impl Globals {
    /// Cap for commands that walk all n! shelf states.
    fn state_limit(&self) -> usize {
        if self.unsafe_n {
            MAX_STATE_LIMIT
        } else {
            DEFAULT_STATE_LIMIT
        }
    }

    /// Cap for the swap-process sweeps, whose graphs are denser.
    fn swap_limit(&self) -> usize {
        if self.unsafe_n {
            MAX_STATE_LIMIT
        } else {
            DEFAULT_SWAP_LIMIT
        }
    }
}

struct CliError {
    exit: i32,
    kind: &'static str,
    detail: String,
}

impl CliError {
    fn usage(detail: String) -> Self {
        CliError { exit: EXIT_USAGE, kind: "usage", detail }
    }

    fn schema(detail: String) -> Self {
        CliError { exit: EXIT_USAGE, kind: "schema", detail }
    }

    fn limit(detail: String) -> Self {
        CliError { exit: EXIT_LIMIT, kind: "limit", detail }
    }

    fn invariant(detail: String) -> Self {
        CliError { exit: EXIT_INVARIANT, kind: "invariant", detail }
    }

    fn io(detail: String) -> Self {
        CliError { exit: EXIT_FAILURE, kind: "io", detail }
    }
}

/// Parses the process arguments, runs the command, and returns the exit
/// code for `main` to pass to `process::exit`.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let globals = Globals {
        cache_dir: cli
            .cache_dir
            .or_else(|| std::env::var_os(cache::CACHE_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(default_cache_dir),
        unsafe_n: cli.unsafe_n,
        budget: cli.budget,
    };
    match dispatch(cli.command, &globals) {
        Ok(code) => code,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.kind, "detail": e.detail })
            );
            e.exit
        }
    }
}

fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("bookshelf");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("bookshelf");
    }
    std::env::temp_dir().join("bookshelf-cache")
}

fn dispatch(command: Command, g: &Globals) -> Result<i32, CliError> {
    match command {
        Command::Simulate { shelf, strategy, seed, trace } => {
            cmd_simulate(&shelf, &strategy, seed, trace.as_deref(), g)
        }
        Command::Construct { n, verify, out } => cmd_construct(n, verify, out.as_deref(), g),
        Command::Search { n, per_state, witness } => {
            cmd_search(n, per_state.as_deref(), witness.as_deref(), g)
        }
        Command::Bounds { n_max, format, out } => cmd_bounds(n_max, &format, out.as_deref(), g),
        Command::Inversions { n, exhaustive, csv, adjacent_only } => {
            cmd_inversions(n, exhaustive, csv.as_deref(), adjacent_only, g)
        }
        Command::Validate { trace } => cmd_validate(&trace),
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(format!("writing {}: {e}", path.display())))
}

fn map_strategy_error(e: StrategyError) -> CliError {
    match e {
        StrategyError::Search(SearchError::Limit(inner)) => CliError::limit(format!(
            "{inner}; pass --unsafe-n to allow up to {MAX_STATE_LIMIT}"
        )),
        StrategyError::NoMove | StrategyError::Search(_) => {
            CliError::invariant(e.to_string())
        }
        StrategyError::BoundViolation { .. } => CliError::invariant(e.to_string()),
    }
}

fn cmd_simulate(
    shelf_text: &str,
    strategy_name: &str,
    seed: u64,
    trace_path: Option<&Path>,
    g: &Globals,
) -> Result<i32, CliError> {
    let shelf = Shelf::parse(shelf_text)
        .map_err(|e| CliError::usage(format!("bad --shelf value: {e}")))?;
    if shelf.len() > MAX_BOOKS {
        return Err(CliError::usage(format!(
            "shelves hold at most {MAX_BOOKS} books, got {}",
            shelf.len()
        )));
    }
    let strategy = StrategyId::parse_name(strategy_name).ok_or_else(|| {
        let names: Vec<&str> = StrategyId::ALL.iter().map(|s| s.name()).collect();
        CliError::usage(format!(
            "unknown strategy \"{strategy_name}\"; expected one of {}",
            names.join(", ")
        ))
    })?;
    let mut oracle = OracleCache::with_limit(g.state_limit());
    let trace =
        play_cached(&shelf, strategy, seed, &mut oracle).map_err(map_strategy_error)?;
    let doc = trace_document(&trace, strategy, seed);
    let text = pretty(&doc);
    println!("{text}");
    if let Some(path) = trace_path {
        write_output(path, &text)?;
    }
    Ok(EXIT_OK)
}

fn map_construction_error(e: ConstructionError) -> CliError {
    match e {
        ConstructionError::TooSmall { .. } => CliError::usage(e.to_string()),
        ConstructionError::Bug { .. } => CliError::invariant(e.to_string()),
    }
}

fn cmd_construct(
    n: usize,
    verify: bool,
    out: Option<&Path>,
    g: &Globals,
) -> Result<i32, CliError> {
    if n < 2 {
        return Err(CliError::usage(format!(
            "the worst-case family needs at least 2 books, got {n}"
        )));
    }
    if n > 128 || worst_move_count(n) > g.budget as u128 {
        let count = if n <= 128 {
            worst_move_count(n).to_string()
        } else {
            format!("2^{} - 1", n - 1)
        };
        return Err(CliError::limit(format!(
            "the {n}-book worst case has {count} moves, over the --budget cap of {}",
            g.budget
        )));
    }
    let case = if verify {
        verify_worst_case(n).map_err(map_construction_error)?
    } else {
        WorstCase {
            n,
            initial: worst_initial(n).map_err(map_construction_error)?,
            moves: worst_moves(n).map_err(map_construction_error)?,
        }
    };
    let report = construct_report(&case, verify);
    let text = pretty(&report);
    println!("{text}");
    if let Some(path) = out {
        write_output(path, &text)?;
    }
    Ok(EXIT_OK)
}

/// Builds the exact worst-case answer for n, consulting the disk cache.
/// Whatever the table's origin, the answer is cross-checked: the witness
/// must replay to the sorted shelf with the claimed length, and the length
/// must sit between the construction lower bound and the counting upper
/// bound. A cached table that fails any check is discarded and rebuilt.
fn search_result(n: usize, g: &Globals) -> Result<(SearchResult, bool), CliError> {
    let limit = g.state_limit();
    if n > limit {
        let hint = if limit < MAX_STATE_LIMIT {
            format!("; pass --unsafe-n to allow up to {MAX_STATE_LIMIT}")
        } else {
            String::new()
        };
        return Err(CliError::limit(format!(
            "n = {n} is over the exhaustive limit {limit}{hint}"
        )));
    }
    if let Some(memo) = cache::load_table(&g.cache_dir, n) {
        if let Ok(result) = result_from_memo(memo) {
            return Ok((result, true));
        }
        // The cached table passed the structural checks but still produced
        // a wrong answer. Fall through and rebuild from scratch.
    }
    let mut memo = SearchMemo::with_limit(n, limit)
        .map_err(|e| CliError::limit(e.to_string()))?;
    memo.fill_all();
    if let Err(e) = cache::store_table(&g.cache_dir, &memo) {
        eprintln!(
            "warning: could not write the search cache under {}: {e}",
            g.cache_dir.display()
        );
    }
    let result = result_from_memo(memo).map_err(CliError::invariant)?;
    Ok((result, false))
}

fn result_from_memo(mut memo: SearchMemo) -> Result<SearchResult, String> {
    let n = memo.n();
    let (mut w, mut arg_rank) = (0u32, 0u64);
    for (rank, &v) in memo.per_state().iter().enumerate() {
        if v > w {
            w = v;
            arg_rank = rank as u64;
        }
    }
    let argmax =
        unrank_perm(n, StateIndex(arg_rank)).map_err(|e| format!("bad argmax rank: {e}"))?;
    let witness = memo
        .witness_from(&argmax)
        .map_err(|e| format!("witness walk failed: {e}"))?;
    let trace =
        simulate(&argmax, &witness).map_err(|e| format!("witness replay failed: {e}"))?;
    if !trace.final_shelf.is_sorted() {
        return Err(format!(
            "witness replay from {argmax} ended unsorted at {}",
            trace.final_shelf
        ));
    }
    if trace.len() as u32 != w {
        return Err(format!(
            "witness replays {} moves but the table claims {w}",
            trace.len()
        ));
    }
    if n >= 2 && (w as u128) < worst_move_count(n) {
        return Err(format!(
            "claimed worst case {w} is below the construction lower bound {}",
            worst_move_count(n)
        ));
    }
    if (w as u128) > improved_game_bound(n) {
        return Err(format!(
            "claimed worst case {w} is over the counting bound {}",
            improved_game_bound(n)
        ));
    }
    Ok(SearchResult {
        n,
        w: w as u64,
        argmax,
        witness,
        per_state: memo.into_per_state(),
    })
}

fn cmd_search(
    n: usize,
    per_state: Option<&Path>,
    witness: Option<&Path>,
    g: &Globals,
) -> Result<i32, CliError> {
    if n < 1 {
        return Err(CliError::usage("--n must be at least 1".to_string()));
    }
    let (result, from_cache) = search_result(n, g)?;
    let report = search_report(&result, from_cache);
    println!("{}", pretty(&report));
    if let Some(path) = per_state {
        let memo = SearchMemo::from_parts(n, result.per_state.clone())
            .map_err(|e| CliError::invariant(format!("per-state table rejected: {e}")))?;
        fs::write(path, cache::table_bytes(&memo))
            .map_err(|e| CliError::io(format!("writing {}: {e}", path.display())))?;
    }
    if let Some(path) = witness {
        let trace = simulate(&result.argmax, &result.witness)
            .map_err(|e| CliError::invariant(format!("witness replay failed: {e}")))?;
        let doc = trace_document(&trace, StrategyId::Oracle, 0);
        write_output(path, &pretty(&doc))?;
    }
    Ok(EXIT_OK)
}

fn cmd_bounds(
    n_max: usize,
    format: &str,
    out: Option<&Path>,
    g: &Globals,
) -> Result<i32, CliError> {
    if n_max < 2 {
        return Err(CliError::usage(format!(
            "--n-max must be at least 2, got {n_max}"
        )));
    }
    let mut rows = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let (result, _) = search_result(n, g)?;
        rows.push(BoundsRow {
            n,
            lower: worst_move_count(n),
            w: result.w,
            upper: improved_game_bound(n),
        });
    }
    let text = match format {
        "csv" => bounds_csv(&rows),
        "json" => {
            let mut text = pretty(&rows);
            text.push('\n');
            text
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown format \"{other}\"; expected csv or json"
            )))
        }
    };
    print!("{text}");
    if let Some(path) = out {
        write_output(path, &text)?;
    }
    Ok(EXIT_OK)
}

fn map_limit(e: bookshelf_core::LimitExceeded) -> CliError {
    CliError::limit(format!(
        "{e}; pass --unsafe-n to allow up to {MAX_STATE_LIMIT}"
    ))
}

fn cmd_inversions(
    n: usize,
    exhaustive: bool,
    csv: Option<&Path>,
    adjacent_only: bool,
    g: &Globals,
) -> Result<i32, CliError> {
    if n < 1 {
        return Err(CliError::usage("--n must be at least 1".to_string()));
    }
    let mode = if adjacent_only {
        SwapMode::AdjacentOnly
    } else {
        SwapMode::AnyInverted
    };
    let max_swaps = n as u128 * (n as u128 - 1) / 2;
    if max_swaps > g.budget as u128 {
        return Err(CliError::limit(format!(
            "the bubble game on {n} books has {max_swaps} swaps, over the --budget cap of {}",
            g.budget
        )));
    }
    let bubble = inversion::max_swap_game(n);

    let sweep = if exhaustive || csv.is_some() {
        let limit = g.swap_limit();
        let dist = inversion::sort_distance_table_with_limit(n, mode, limit)
            .map_err(map_limit)?;
        let longest = inversion::swap_longest_table_with_limit(n, mode, limit)
            .map_err(map_limit)?;
        Some((dist, longest))
    } else {
        None
    };

    let exhaustive_block = sweep.as_ref().filter(|_| exhaustive).map(|(dist, longest)| {
        let states = factorial(n);
        let max_min_sort = dist.iter().copied().max().unwrap_or(0);
        let mut distribution = vec![0u64; max_min_sort as usize + 1];
        let mut cycle_agreements = 0u64;
        let mut swap_longest_ok = true;
        for rank in 0..states {
            let shelf = unrank_perm(n, StateIndex(rank)).expect("rank is in range");
            let idx = rank as usize;
            distribution[dist[idx] as usize] += 1;
            if dist[idx] as usize == n - inversion::cycle_count(&shelf) {
                cycle_agreements += 1;
            }
            if longest[idx] as u64 != inversion::inversion_count(&shelf) {
                swap_longest_ok = false;
            }
        }
        InversionsExhaustive {
            states,
            max_min_sort_length: max_min_sort,
            min_sort_within_n_minus_1: max_min_sort as usize <= n.saturating_sub(1),
            cycle_bound_agreements: cycle_agreements,
            cycle_bound_disagreements: states - cycle_agreements,
            swap_longest_equals_inversions: swap_longest_ok,
            min_sort_distribution: distribution,
        }
    });

    let report = InversionsReport {
        schema_version: SCHEMA_VERSION,
        n,
        mode: match mode {
            SwapMode::AnyInverted => "any".to_string(),
            SwapMode::AdjacentOnly => "adjacent".to_string(),
        },
        max_swaps: max_swaps as u64,
        bubble_game_length: bubble.swaps.len() as u64,
        bubble_attains_bound: bubble.swaps.len() as u128 == max_swaps,
        exhaustive: exhaustive_block,
    };
    println!("{}", pretty(&report));

    if let Some(path) = csv {
        let (dist, longest) = sweep.as_ref().expect("tables exist when --csv is set");
        let states = factorial(n);
        let rows = (0..states).map(|rank| {
            let shelf = unrank_perm(n, StateIndex(rank)).expect("rank is in range");
            (
                rank,
                inversion::inversion_count(&shelf),
                dist[rank as usize],
                longest[rank as usize],
            )
        });
        write_output(path, &inversions_csv(rows))?;
    }
    Ok(EXIT_OK)
}

fn cmd_validate(trace_path: &Path) -> Result<i32, CliError> {
    let text = fs::read_to_string(trace_path)
        .map_err(|e| CliError::usage(format!("reading {}: {e}", trace_path.display())))?;
    let doc: TraceDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::schema(format!("{}: {e}", trace_path.display())))?;
    let verdict = validate_trace_document(&doc);
    println!("{}", pretty(&verdict));
    Ok(if verdict.pass { EXIT_OK } else { EXIT_FAILURE })
}
