//! Length-16 outer block codes and their weight spectra.

use serde::{Deserialize, Serialize};

use crate::gf2::{combine, null_space, rank};
use crate::polar::{kernel_row, pw_order};
use crate::{Error, Result};

/// Outer block length the hybrid families are defined for.
pub const HYBRID_BLOCK_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OuterFamily {
    Polar,
    Simplex,
    Ebch,
    DualEbch,
    DualSimplex,
}

impl OuterFamily {
    pub fn name(self) -> &'static str {
        match self {
            OuterFamily::Polar => "polar",
            OuterFamily::Simplex => "simplex",
            OuterFamily::Ebch => "ebch",
            OuterFamily::DualEbch => "dual_ebch",
            OuterFamily::DualSimplex => "dual_simplex",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            OuterFamily::Polar,
            OuterFamily::Simplex,
            OuterFamily::Ebch,
            OuterFamily::DualEbch,
            OuterFamily::DualSimplex,
        ]
        .into_iter()
        .find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterCode {
    pub k_local: usize,
    pub block_len: usize,
    /// Generator rows; bit `j` of a row is codeword position `j`.
    pub generator: Vec<u32>,
    pub family: OuterFamily,
}

fn parse_rows(rows: &[&str]) -> Vec<u32> {
    rows.iter()
        .map(|r| {
            r.bytes()
                .filter(|b| !b.is_ascii_whitespace())
                .enumerate()
                .fold(0u32, |m, (j, b)| m | ((b == b'1') as u32) << j)
        })
        .collect()
}

fn repeat_cols(base: &[&str], times: usize, tail: &[&str]) -> Vec<String> {
    base.iter()
        .zip(tail)
        .map(|(b, t)| format!("{}{}", b.repeat(times), t))
        .collect()
}

fn simplex_generator(k: usize) -> Option<Vec<u32>> {
    let rows: Vec<String> = match k {
        2 => repeat_cols(&["110", "101"], 5, &["1", "1"]),
        3 => repeat_cols(&["1111000", "1100110", "1010101"], 2, &["11", "11", "10"]),
        4 => repeat_cols(
            &[
                "111111110000000",
                "111100001111000",
                "110011001100110",
                "101010101010101",
            ],
            1,
            &["1", "1", "1", "1"],
        ),
        _ => return None,
    };
    Some(parse_rows(&rows.iter().map(String::as_str).collect::<Vec<_>>()))
}

fn ebch_generator(k: usize) -> Option<Vec<u32>> {
    const G6: [&str; 6] = [
        "0010010011101000",
        "1111111100000000",
        "1111000011110000",
        "1100110011001100",
        "1010101010101010",
        "1111111111111111",
    ];
    const G7: [&str; 7] = [
        "0111001000101000",
        "0010010011101000",
        "1111111100000000",
        "1111000011110000",
        "1100110011001100",
        "1010101010101010",
        "1111111111111111",
    ];
    match k {
        6 => Some(parse_rows(&G6)),
        7 => Some(parse_rows(&G7)),
        _ => None,
    }
}

impl OuterCode {
    /// Polar outer code using the given local information positions.
    pub fn polar_from_positions(positions: &[usize], block_len: usize) -> Self {
        OuterCode {
            k_local: positions.len(),
            block_len,
            generator: positions.iter().map(|&p| kernel_row(p, block_len)).collect(),
            family: OuterFamily::Polar,
        }
    }

    /// Polar `(block_len, k)` code on the `k` most reliable local positions.
    pub fn polar(k_local: usize, block_len: usize) -> Self {
        let mut pos = pw_order(block_len)[..k_local].to_vec();
        pos.sort_unstable();
        Self::polar_from_positions(&pos, block_len)
    }

    /// The member of `family` with `k_local` information bits. Non-polar
    /// families exist only for length 16 and the dimensions below.
    pub fn for_family(family: OuterFamily, k_local: usize, block_len: usize) -> Result<Self> {
        if k_local > block_len {
            return Err(Error::invalid(format!("k = {k_local} exceeds block length {block_len}")));
        }
        if family == OuterFamily::Polar {
            return Ok(Self::polar(k_local, block_len));
        }
        if block_len != HYBRID_BLOCK_LEN {
            return Err(Error::invalid(format!(
                "{} outer codes are defined for length {HYBRID_BLOCK_LEN} only",
                family.name()
            )));
        }
        let generator = match (family, k_local) {
            (OuterFamily::Simplex, k) => simplex_generator(k),
            (OuterFamily::Ebch, k) => ebch_generator(k),
            (OuterFamily::DualEbch, 9) => ebch_generator(7).map(|g| null_space(&g, block_len)),
            (OuterFamily::DualEbch, 10) => ebch_generator(6).map(|g| null_space(&g, block_len)),
            (OuterFamily::DualSimplex, k @ 12..=14) => {
                simplex_generator(block_len - k).map(|g| null_space(&g, block_len))
            }
            _ => None,
        }
        .ok_or_else(|| {
            Error::invalid(format!("no {} outer code with k = {k_local}", family.name()))
        })?;
        debug_assert_eq!(rank(&generator), k_local);
        Ok(OuterCode { k_local, block_len, generator, family })
    }

    pub fn encode_word(&self, message: u32) -> u32 {
        combine(&self.generator, message)
    }

    /// Rows of a parity-check matrix (a basis of the dual code).
    pub fn parity_checks(&self) -> Vec<u32> {
        null_space(&self.generator, self.block_len)
    }

    pub fn is_full_rank(&self) -> bool {
        rank(&self.generator) == self.k_local
    }

    pub fn min_distance(&self) -> Result<usize> {
        Ok(weight_spectrum(self)?.min_distance())
    }
}

/// Family used for a length-16 block with `k_local` information bits:
/// simplex for 2–4, eBCH for 6–7, dual eBCH for 9–10, dual simplex for
/// 12–14 and polar otherwise.
pub fn default_family(k_local: usize) -> OuterFamily {
    match k_local {
        2..=4 => OuterFamily::Simplex,
        6 | 7 => OuterFamily::Ebch,
        9 | 10 => OuterFamily::DualEbch,
        12..=14 => OuterFamily::DualSimplex,
        _ => OuterFamily::Polar,
    }
}

pub fn hybrid_outer_generator(k_local: usize) -> OuterCode {
    OuterCode::for_family(default_family(k_local), k_local, HYBRID_BLOCK_LEN)
        .expect("default families exist for every k")
}

/// Number of codewords `A_w` of every weight `w ∈ [0, block_len]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpectrum {
    pub counts: Vec<u64>,
}

impl WeightSpectrum {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest non-zero weight, or 0 for the trivial code.
    pub fn min_distance(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map_or(0, |(w, _)| w)
    }
}

pub const MAX_SPECTRUM_K: usize = 20;

/// Exhaustive enumeration of all `2^k` codewords (Gray-code order).
pub fn weight_spectrum(code: &OuterCode) -> Result<WeightSpectrum> {
    let k = code.generator.len();
    if k > MAX_SPECTRUM_K {
        return Err(Error::invalid(format!(
            "k = {k} too large for exhaustive enumeration (max {MAX_SPECTRUM_K})"
        )));
    }
    let mut counts = vec![0u64; code.block_len + 1];
    let mut word = 0u32;
    counts[0] += 1;
    for i in 1u64..(1u64 << k) {
        word ^= code.generator[i.trailing_zeros() as usize];
        counts[word.count_ones() as usize] += 1;
    }
    Ok(WeightSpectrum { counts })
}

/// One printed distance-spectrum row: `A_1 ..= A_16` (with `A_0 = 1`).
#[derive(Clone, Copy, Debug)]
pub struct ReferenceSpectrum {
    pub family: OuterFamily,
    pub k_local: usize,
    pub counts: [u64; 16],
}

const fn row(family: OuterFamily, k_local: usize, counts: [u64; 16]) -> ReferenceSpectrum {
    ReferenceSpectrum { family, k_local, counts }
}

use OuterFamily::{DualEbch, DualSimplex, Ebch, Polar, Simplex};

/// Published length-16 spectra, polar rows and their hybrid replacements.
pub const REFERENCE_SPECTRA: &[ReferenceSpectrum] = &[
    row(Polar, 2, [0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    row(Simplex, 2, [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 0, 0, 0, 0]),
    row(Polar, 3, [0, 0, 0, 0, 0, 0, 0, 6, 0, 0, 0, 0, 0, 0, 0, 1]),
    row(Simplex, 3, [0, 0, 0, 0, 0, 0, 0, 1, 4, 2, 0, 0, 0, 0, 0, 0]),
    row(Polar, 4, [0, 0, 0, 0, 0, 0, 0, 14, 0, 0, 0, 0, 0, 0, 0, 1]),
    row(Simplex, 4, [0, 0, 0, 0, 0, 0, 0, 7, 8, 0, 0, 0, 0, 0, 0, 0]),
    row(Polar, 5, [0, 0, 0, 0, 0, 0, 0, 30, 0, 0, 0, 0, 0, 0, 0, 1]),
    row(Polar, 6, [0, 0, 0, 4, 0, 0, 0, 54, 0, 0, 0, 4, 0, 0, 0, 1]),
    row(Ebch, 6, [0, 0, 0, 0, 0, 16, 0, 30, 0, 16, 0, 0, 0, 0, 0, 1]),
    row(Polar, 7, [0, 0, 0, 12, 0, 0, 0, 102, 0, 0, 0, 12, 0, 0, 0, 1]),
    row(Ebch, 7, [0, 0, 0, 0, 0, 48, 0, 30, 0, 48, 0, 0, 0, 0, 0, 1]),
    row(Polar, 8, [0, 0, 0, 28, 0, 0, 0, 198, 0, 0, 0, 28, 0, 0, 0, 1]),
    row(Polar, 9, [0, 0, 0, 44, 0, 64, 0, 294, 0, 64, 0, 44, 0, 0, 0, 1]),
    row(DualEbch, 9, [0, 0, 0, 20, 0, 160, 0, 150, 0, 160, 0, 20, 0, 0, 0, 1]),
    row(Polar, 10, [0, 0, 0, 76, 0, 192, 0, 486, 0, 192, 0, 76, 0, 0, 0, 1]),
    row(DualEbch, 10, [0, 0, 0, 60, 0, 256, 0, 390, 0, 256, 0, 60, 0, 0, 0, 1]),
    row(Polar, 11, [0, 0, 0, 140, 0, 448, 0, 870, 0, 448, 0, 140, 0, 0, 0, 1]),
    row(Polar, 12, [0, 8, 0, 252, 0, 952, 0, 1670, 0, 952, 0, 252, 0, 8, 0, 1]),
    row(DualSimplex, 12, [0, 1, 42, 133, 252, 469, 750, 835, 680, 483, 294, 119, 28, 7, 2, 0]),
    row(Polar, 13, [0, 24, 0, 476, 0, 1960, 0, 3270, 0, 1960, 0, 476, 0, 24, 0, 1]),
    row(DualSimplex, 13, [0, 11, 82, 233, 516, 1003, 1470, 1595, 1400, 1017, 558, 219, 68, 17, 2, 0]),
    row(Polar, 14, [0, 56, 0, 924, 0, 3976, 0, 6470, 0, 3976, 0, 924, 0, 56, 0, 1]),
    row(DualSimplex, 14, [0, 35, 150, 425, 1100, 2051, 2810, 3195, 2920, 1985, 1066, 475, 140, 25, 6, 0]),
    row(Polar, 15, [0, 120, 0, 1820, 0, 8008, 0, 12870, 0, 8008, 0, 1820, 0, 120, 0, 1]),
];

/// Compares a computed spectrum to a printed row; returns the first
/// mismatching weight.
pub fn spectrum_mismatch(reference: &ReferenceSpectrum, computed: &WeightSpectrum) -> Option<usize> {
    if computed.counts.len() != 17 || computed.counts[0] != 1 {
        return Some(0);
    }
    (1..=16).find(|&w| computed.counts[w] != reference.counts[w - 1])
}
