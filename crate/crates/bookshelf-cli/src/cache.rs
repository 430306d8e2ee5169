//! Disk cache for the per-state longest-game tables.
//!
//! A full table for one n is expensive to rebuild (seconds at n = 9), so
//! `search` persists it. The format is deliberately dumb: a fixed magic,
//! a schema version, n, the entry count, then the raw u32 entries, all
//! little-endian. Anything that fails validation is treated as absent and
//! rebuilt; a stale or truncated cache must never change an answer.

use crate::trace_doc::SCHEMA_VERSION;
use bookshelf_core::search::{factorial, SearchMemo};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 4] = b"WTBL";

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "BOOKSHELF_CACHE_DIR";

/// Where the table for a given n lives under `dir`.
pub fn table_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("wtable-n{n}-v{SCHEMA_VERSION}.bin"))
}

/// Loads a cached table, or None if it is missing, unreadable, or fails
/// any structural check.
pub fn load_table(dir: &Path, n: usize) -> Option<SearchMemo> {
    let bytes = fs::read(table_path(dir, n)).ok()?;
    decode_table(&bytes, n)
}

/// Decodes bytes produced by [`table_bytes`]. None on any structural
/// mismatch.
pub fn decode_table(bytes: &[u8], n: usize) -> Option<SearchMemo> {
    let expect = usize::try_from(factorial(n)).ok()?;
    let header = 4 + 4 + 4 + 8;
    if bytes.len() != header + 4 * expect {
        return None;
    }
    if &bytes[0..4] != MAGIC {
        return None;
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    let stored_n = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    let count = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
    if version != SCHEMA_VERSION || stored_n as usize != n || count != expect as u64 {
        return None;
    }
    let mut table = Vec::with_capacity(expect);
    for chunk in bytes[header..].chunks_exact(4) {
        table.push(u32::from_le_bytes(chunk.try_into().unwrap()));
    }
    SearchMemo::from_parts(n, table).ok()
}

/// The on-disk encoding of one table.
pub fn table_bytes(memo: &SearchMemo) -> Vec<u8> {
    let entries = memo.per_state();
    let mut bytes = Vec::with_capacity(20 + 4 * entries.len());
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&SCHEMA_VERSION.to_le_bytes());
    bytes.extend_from_slice(&(memo.n() as u32).to_le_bytes());
    bytes.extend_from_slice(&(entries.len() as u64).to_le_bytes());
    for &value in entries {
        bytes.extend_from_slice(&value.to_le_bytes());
    }
    bytes
}

/// Writes the table via a temp file and rename so readers never see a
/// half-written cache.
pub fn store_table(dir: &Path, memo: &SearchMemo) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let n = memo.n();
    let bytes = table_bytes(memo);
    let target = table_path(dir, n);
    let tmp = dir.join(format!(".wtable-n{n}-{}.tmp", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(&bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, &target)
}
