//! One-shot path extension of rate-1 and single-parity-check blocks.
//!
//! Pattern entries are ranks in the ascending-reliability order: `p` flips
//! the position holding the `p`-th smallest `|α|`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::extend::{flip_cost, hard_word, BlockCandidate};

/// Rate-1 patterns for `L = 8`.
pub const R1_PATTERNS: [&[usize]; 13] = [
    &[],
    &[0],
    &[1],
    &[2],
    &[3],
    &[4],
    &[5],
    &[6],
    &[0, 1],
    &[0, 2],
    &[1, 2],
    &[0, 3],
    &[0, 1, 2],
];

/// SPC patterns for `L = 8` when the raw estimate has even parity.
pub const SPC_EVEN_PATTERNS: [&[usize]; 13] = [
    &[],
    &[0, 1],
    &[0, 2],
    &[0, 3],
    &[0, 4],
    &[0, 5],
    &[0, 6],
    &[0, 7],
    &[1, 2],
    &[1, 3],
    &[1, 4],
    &[2, 3],
    &[0, 1, 2, 3],
];

/// SPC patterns for `L = 8` when the raw estimate has odd parity.
pub const SPC_ODD_PATTERNS: [&[usize]; 13] = [
    &[0],
    &[1],
    &[2],
    &[3],
    &[4],
    &[5],
    &[6],
    &[7],
    &[0, 1, 2],
    &[0, 1, 3],
    &[0, 2, 3],
    &[1, 2, 3],
    &[0, 1, 4],
];

/// List size the pattern sets are proven for.
pub const PATTERN_LIST_SIZE: usize = 8;
/// Smallest block the pattern sets apply to.
pub const PATTERN_MIN_BLOCK: usize = 8;

/// Block positions ordered by ascending `|α|`; ties keep index order.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedLlrView {
    pub perm: Vec<usize>,
    pub magnitudes: Vec<f64>,
}

impl SortedLlrView {
    pub fn new(llrs: &[f64]) -> Self {
        let mut perm: Vec<usize> = (0..llrs.len()).collect();
        perm.sort_by(|&a, &b| llrs[a].abs().total_cmp(&llrs[b].abs()));
        let magnitudes = perm.iter().map(|&i| llrs[i].abs()).collect();
        SortedLlrView { perm, magnitudes }
    }

    /// Block-position mask of a set of ranks.
    pub fn mask(&self, ranks: &[usize]) -> u32 {
        ranks.iter().fold(0, |m, &r| m | 1 << self.perm[r])
    }

    /// `Σ |α|` over a set of ranks, the incremental metric of the pattern.
    pub fn delta(&self, ranks: &[usize]) -> f64 {
        ranks.iter().map(|&r| self.magnitudes[r]).sum()
    }
}

pub fn spc_patterns(checksum: u8) -> &'static [&'static [usize]; 13] {
    if checksum & 1 == 0 {
        &SPC_EVEN_PATTERNS
    } else {
        &SPC_ODD_PATTERNS
    }
}

/// Applies a 13-pattern set through the sorted view and keeps the `keep`
/// smallest increments (stable in pattern order).
fn apply_patterns(raw: u32, sorted: &SortedLlrView, set: &[&[usize]; 13], keep: usize, out: &mut Vec<BlockCandidate>) {
    let mut c: Vec<BlockCandidate> = set
        .iter()
        .map(|p| BlockCandidate { bits: raw ^ sorted.mask(p), delta: sorted.delta(p) })
        .collect();
    c.sort_by(|a, b| a.delta.total_cmp(&b.delta));
    out.extend(c.into_iter().take(keep));
}

/// Every flip mask of a small block whose weight parity is `parity`
/// (all masks when `None`), ascending mask order.
fn all_flips(raw: u32, llrs: &[f64], parity: Option<u32>, out: &mut Vec<BlockCandidate>) {
    for m in 0u32..1 << llrs.len() {
        if parity.is_none_or(|p| m.count_ones() & 1 == p) {
            out.push(BlockCandidate { bits: raw ^ m, delta: flip_cost(llrs, m) });
        }
    }
}

#[derive(PartialEq)]
struct Frontier {
    sum: f64,
    ranks: u32,
    last: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sum.total_cmp(&other.sum).then(self.ranks.cmp(&other.ranks))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The `count` flip sets of smallest total magnitude (optionally with a
/// fixed weight parity), in non-decreasing order. Exact for any list size:
/// subsets are enumerated best-first, each reached once from its parent by
/// appending the next rank or advancing the last one.
fn best_flips(raw: u32, sorted: &SortedLlrView, count: usize, parity: Option<u32>, out: &mut Vec<BlockCandidate>) {
    let s = sorted.magnitudes.len();
    let sum_of = |ranks: u32| (0..s).filter(|r| ranks >> r & 1 == 1).map(|r| sorted.magnitudes[r]).sum::<f64>();
    let to_mask = |ranks: u32| (0..s).filter(|r| ranks >> r & 1 == 1).fold(0u32, |m, r| m | 1 << sorted.perm[r]);
    let push = |ranks: u32, sum: f64, out: &mut Vec<BlockCandidate>| {
        let ok = parity.is_none_or(|p| ranks.count_ones() & 1 == p);
        if ok {
            out.push(BlockCandidate { bits: raw ^ to_mask(ranks), delta: sum });
        }
        ok as usize
    };
    let mut emitted = push(0, 0.0, out);
    let mut heap = BinaryHeap::new();
    if s > 0 {
        heap.push(Reverse(Frontier { sum: sorted.magnitudes[0], ranks: 1, last: 0 }));
    }
    while emitted < count {
        let Some(Reverse(f)) = heap.pop() else { break };
        emitted += push(f.ranks, f.sum, out);
        let next = f.last + 1;
        if next < s {
            let grow = f.ranks | 1 << next;
            heap.push(Reverse(Frontier { sum: sum_of(grow), ranks: grow, last: next }));
            let shift = f.ranks ^ (1 << f.last) ^ (1 << next);
            heap.push(Reverse(Frontier { sum: sum_of(shift), ranks: shift, last: next }));
        }
    }
}

pub(crate) fn extend_r1_into(llrs: &[f64], list_size: usize, out: &mut Vec<BlockCandidate>) {
    let raw = hard_word(llrs);
    if llrs.len() < PATTERN_MIN_BLOCK {
        all_flips(raw, llrs, None, out);
        return;
    }
    let sorted = SortedLlrView::new(llrs);
    if list_size == PATTERN_LIST_SIZE {
        apply_patterns(raw, &sorted, &R1_PATTERNS, PATTERN_LIST_SIZE, out);
    } else {
        best_flips(raw, &sorted, list_size, None, out);
    }
}

pub(crate) fn extend_spc_into(llrs: &[f64], list_size: usize, out: &mut Vec<BlockCandidate>) {
    let raw = hard_word(llrs);
    let checksum = raw.count_ones() & 1;
    if llrs.len() < PATTERN_MIN_BLOCK {
        all_flips(raw, llrs, Some(checksum), out);
        return;
    }
    let sorted = SortedLlrView::new(llrs);
    if list_size == PATTERN_LIST_SIZE {
        apply_patterns(raw, &sorted, spc_patterns(checksum as u8), PATTERN_LIST_SIZE, out);
    } else {
        best_flips(raw, &sorted, list_size, Some(checksum), out);
    }
}

/// Candidates of a rate-1 block, ascending ΔPM for blocks of 8 bits or
/// more. With `L = 8` these come from the 13 fixed patterns; other list
/// sizes use an exact best-first search, and blocks below 8 bits list all
/// `2^B` flips.
pub fn extend_r1(llrs: &[f64], list_size: usize) -> Vec<BlockCandidate> {
    let mut out = Vec::new();
    extend_r1_into(llrs, list_size, &mut out);
    out
}

/// Candidates of a single-parity-check block; every candidate has even
/// weight.
pub fn extend_spc(llrs: &[f64], list_size: usize) -> Vec<BlockCandidate> {
    let mut out = Vec::new();
    extend_spc_into(llrs, list_size, &mut out);
    out
}
