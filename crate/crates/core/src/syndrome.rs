//! Syndrome → error-pattern lookup tables for general constituent blocks.
//!
//! For a polar block with frozen local positions `f_0 < f_1 < …` the
//! parity checks are the kernel columns at those positions, and syndrome
//! bit `r` (the `2^r` place of the row index) is the check on `f_r`.
//! Error patterns put block position `p` at the `2^p` place.
//!
//! File layout (little endian): magic `FSLT`, version `u16`, `B u16`,
//! `K_B u16`, `l_sd u16`, `frozen_mask u32`, then `2^{B-K_B}` rows of
//! `l_sd` `u16` pattern words, then the CRC-32 of everything before it.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::gf2::{low_mask, parity};
use crate::polar::kernel_column;
use crate::{Error, Result};

pub const TABLE_MAGIC: &[u8; 4] = b"FSLT";
pub const TABLE_VERSION: u16 = 1;
/// Directory for cached table files.
pub const TABLE_CACHE_ENV: &str = "FSLPOLAR_TABLE_CACHE";
/// Tables are limited to 16-bit patterns.
pub const MAX_TABLE_BLOCK: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ErrorPattern {
    pub mask: u32,
    pub weight: u32,
}

impl ErrorPattern {
    pub fn new(mask: u32) -> Self {
        ErrorPattern { mask, weight: mask.count_ones() }
    }
}

/// Parity checks of a polar block: kernel columns at the frozen positions,
/// ascending.
pub fn polar_parity_checks(block_len: usize, frozen_mask: u32) -> Vec<u32> {
    (0..block_len)
        .filter(|&j| frozen_mask >> j & 1 == 1)
        .map(|j| kernel_column(j, block_len))
        .collect()
}

/// `Σ_r ⟨checks[r], β⟩ · 2^r`.
#[inline]
pub fn syndrome_word(checks: &[u32], beta: u32) -> u32 {
    checks
        .iter()
        .enumerate()
        .fold(0, |d, (r, &h)| d | (parity(h & beta) as u32) << r)
}

/// Syndrome bits `d_r` of a polar block's hard estimate.
pub fn compute_syndrome(beta: &[u8], frozen_mask: u32) -> Result<Vec<u8>> {
    let len = beta.len();
    if !len.is_power_of_two() || len > 32 {
        return Err(Error::invalid(format!("block length {len} unsupported")));
    }
    if len < 32 && frozen_mask >> len != 0 {
        return Err(Error::invalid("frozen mask wider than the block"));
    }
    let word = beta.iter().enumerate().fold(0u32, |m, (j, &b)| m | ((b & 1) as u32) << j);
    Ok(polar_parity_checks(len, frozen_mask).iter().map(|&h| parity(h & word)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeTable {
    block_len: usize,
    k_local: usize,
    /// Present for polar blocks; outer-code tables are defined by `checks`.
    frozen_mask: Option<u32>,
    checks: Vec<u32>,
    l_sd: usize,
    /// Every row holds its whole coset (`2^{K_B} <= l_sd` requested), so
    /// rows may be shorter than asked for.
    exhaustive: bool,
    patterns: Vec<u32>,
}

impl SyndromeTable {
    /// Table for a polar block with the given frozen positions.
    pub fn build(block_len: usize, frozen_mask: u32, l_sd: usize) -> Result<Self> {
        if !block_len.is_power_of_two() || block_len > MAX_TABLE_BLOCK {
            return Err(Error::invalid(format!("syndrome tables need B a power of two <= {MAX_TABLE_BLOCK}")));
        }
        if frozen_mask & !low_mask(block_len) != 0 {
            return Err(Error::invalid("frozen mask wider than the block"));
        }
        let checks = polar_parity_checks(block_len, frozen_mask);
        let mut t = Self::from_checks(block_len, &checks, l_sd)?;
        t.frozen_mask = Some(frozen_mask);
        Ok(t)
    }

    /// Table for an arbitrary block code given by independent parity checks.
    pub fn from_checks(block_len: usize, checks: &[u32], l_sd: usize) -> Result<Self> {
        if !block_len.is_power_of_two() || block_len > MAX_TABLE_BLOCK {
            return Err(Error::invalid(format!("syndrome tables need B a power of two <= {MAX_TABLE_BLOCK}")));
        }
        if l_sd == 0 {
            return Err(Error::invalid("l_sd must be at least 1"));
        }
        if checks.len() > block_len || crate::gf2::rank(checks) != checks.len() {
            return Err(Error::invalid("parity checks must be linearly independent"));
        }
        let k_local = block_len - checks.len();
        let rows = 1usize << checks.len();
        let per_row = l_sd.min(1usize << k_local);
        let mut patterns = vec![0u32; rows * per_row];
        let mut fill = vec![0usize; rows];
        let mut open = rows;
        'outer: for w in 0..=block_len {
            for pos in (0..block_len).combinations(w) {
                let e = pos.iter().fold(0u32, |m, &p| m | 1 << p);
                let d = syndrome_word(checks, e) as usize;
                if fill[d] < per_row {
                    patterns[d * per_row + fill[d]] = e;
                    fill[d] += 1;
                    if fill[d] == per_row {
                        open -= 1;
                        if open == 0 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(SyndromeTable {
            block_len,
            k_local,
            frozen_mask: None,
            checks: checks.to_vec(),
            l_sd: per_row,
            exhaustive: per_row == 1usize << k_local,
            patterns,
        })
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn k_local(&self) -> usize {
        self.k_local
    }

    pub fn frozen_mask(&self) -> Option<u32> {
        self.frozen_mask
    }

    pub fn checks(&self) -> &[u32] {
        &self.checks
    }

    /// Patterns stored per row (after any truncation).
    pub fn l_sd(&self) -> usize {
        self.l_sd
    }

    pub fn exhausts_cosets(&self) -> bool {
        self.exhaustive
    }

    pub fn row_count(&self) -> usize {
        1 << self.checks.len()
    }

    pub fn syndrome(&self, beta: u32) -> u32 {
        syndrome_word(&self.checks, beta)
    }

    /// Pattern masks stored for `syndrome`, ascending weight.
    pub fn row(&self, syndrome: u32) -> &[u32] {
        let d = syndrome as usize;
        &self.patterns[d * self.l_sd..(d + 1) * self.l_sd]
    }

    pub fn row_patterns(&self, syndrome: u32) -> Vec<ErrorPattern> {
        self.row(syndrome).iter().map(|&m| ErrorPattern::new(m)).collect()
    }

    pub fn entry_count(&self) -> usize {
        self.patterns.len()
    }

    /// Serialized form; only polar tables (with a frozen mask) have one.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mask = self
            .frozen_mask
            .ok_or_else(|| Error::Format("outer-code tables are built in memory only".into()))?;
        let mut out = Vec::with_capacity(16 + 2 * self.patterns.len() + 4);
        out.extend_from_slice(TABLE_MAGIC);
        for v in [TABLE_VERSION, self.block_len as u16, self.k_local as u16, self.l_sd as u16] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.extend_from_slice(&mask.to_le_bytes());
        for &p in &self.patterns {
            out.extend_from_slice(&(p as u16).to_le_bytes());
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        const HEADER: usize = 16;
        if bytes.len() < HEADER + 4 {
            return Err(Error::Format("file too short".into()));
        }
        let (body, tail) = bytes.split_at(bytes.len() - 4);
        let stored = u32::from_le_bytes(tail.try_into().expect("4 bytes"));
        let computed = crc32fast::hash(body);
        if &body[..4] != TABLE_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let u16_at = |o: usize| u16::from_le_bytes([body[o], body[o + 1]]);
        let version = u16_at(4);
        if version != TABLE_VERSION {
            return Err(Error::VersionMismatch { found: version, expected: TABLE_VERSION });
        }
        if stored != computed {
            return Err(Error::Checksum { stored, computed });
        }
        let (block_len, k_local, l_sd) = (u16_at(6) as usize, u16_at(8) as usize, u16_at(10) as usize);
        let frozen_mask = u32::from_le_bytes(body[12..16].try_into().expect("4 bytes"));
        if !block_len.is_power_of_two() || block_len > MAX_TABLE_BLOCK || k_local > block_len || l_sd == 0 {
            return Err(Error::Format("bad header".into()));
        }
        if frozen_mask.count_ones() as usize != block_len - k_local || frozen_mask & !low_mask(block_len) != 0 {
            return Err(Error::Format("frozen mask disagrees with K_B".into()));
        }
        let entries = (1usize << (block_len - k_local)) * l_sd;
        if body.len() != HEADER + 2 * entries {
            return Err(Error::Format(format!("expected {entries} pattern words")));
        }
        let patterns = body[HEADER..].chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]]) as u32).collect();
        Ok(SyndromeTable {
            block_len,
            k_local,
            frozen_mask: Some(frozen_mask),
            checks: polar_parity_checks(block_len, frozen_mask),
            l_sd,
            exhaustive: l_sd == 1usize << k_local,
            patterns,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_bytes()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

/// (block length, parity checks, l_sd)
type TableKey = (usize, Vec<u32>, usize);

/// Shared, lazily built tables. Polar tables are also persisted under the
/// cache directory when one is configured.
#[derive(Debug, Default)]
pub struct TableCache {
    dir: Option<PathBuf>,
    tables: Mutex<HashMap<TableKey, Arc<SyndromeTable>>>,
}

impl TableCache {
    pub fn in_memory() -> Self {
        TableCache::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: Some(dir.into()), tables: Mutex::default() }
    }

    /// Uses `$FSLPOLAR_TABLE_CACHE` when set.
    pub fn from_env() -> Self {
        match std::env::var_os(TABLE_CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::with_dir(d),
            _ => Self::in_memory(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// File name for a polar table, keyed by a hash of its parameters.
    pub fn file_name(block_len: usize, frozen_mask: u32, l_sd: usize) -> String {
        let mut key = Vec::new();
        key.extend_from_slice(&(block_len as u32).to_le_bytes());
        key.extend_from_slice(&frozen_mask.to_le_bytes());
        key.extend_from_slice(&(l_sd as u32).to_le_bytes());
        key.extend_from_slice(&TABLE_VERSION.to_le_bytes());
        format!("fslt-b{block_len}-{frozen_mask:08x}-l{l_sd}-{:08x}.bin", crc32fast::hash(&key))
    }

    pub fn polar(&self, block_len: usize, frozen_mask: u32, l_sd: usize) -> Result<Arc<SyndromeTable>> {
        let key = (block_len, vec![frozen_mask], l_sd);
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let table = match &self.dir {
            Some(dir) => {
                let path = dir.join(Self::file_name(block_len, frozen_mask, l_sd));
                match SyndromeTable::load(&path) {
                    Ok(t) => t,
                    Err(_) => {
                        let t = SyndromeTable::build(block_len, frozen_mask, l_sd)?;
                        std::fs::create_dir_all(dir)?;
                        t.save(&path)?;
                        t
                    }
                }
            }
            None => SyndromeTable::build(block_len, frozen_mask, l_sd)?,
        };
        let table = Arc::new(table);
        self.tables.lock().expect("table cache poisoned").insert(key, table.clone());
        Ok(table)
    }

    pub fn for_checks(&self, block_len: usize, checks: &[u32], l_sd: usize) -> Result<Arc<SyndromeTable>> {
        let mut sig = vec![u32::MAX];
        sig.extend_from_slice(checks);
        let key = (block_len, sig, l_sd);
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let table = Arc::new(SyndromeTable::from_checks(block_len, checks, l_sd)?);
        self.tables.lock().expect("table cache poisoned").insert(key, table.clone());
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.tables.lock().expect("table cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
