//! Multi-bit hard decisions, blockwise metrics and the general-block
//! extensions (flip + syndrome lookup, exhaustive search).

use crate::gf2::combine;
use crate::polar::polar_transform;
use crate::syndrome::SyndromeTable;
use crate::{Error, Result};

/// One candidate local codeword of a path and its metric increment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockCandidate {
    pub bits: u32,
    pub delta: f64,
}

/// `β_j = 1 ⇔ α_j < 0`; a zero LLR decides 0.
pub fn hard_decision(llrs: &[f64]) -> Vec<u8> {
    llrs.iter().map(|&a| (a < 0.0) as u8).collect()
}

#[inline]
pub(crate) fn hard_word(llrs: &[f64]) -> u32 {
    llrs.iter().enumerate().fold(0, |m, (j, &a)| m | ((a < 0.0) as u32) << j)
}

/// `Σ |α_j|` over the set bits of `flips`.
#[inline]
pub(crate) fn flip_cost(llrs: &[f64], mut flips: u32) -> f64 {
    let mut s = 0.0;
    while flips != 0 {
        s += llrs[flips.trailing_zeros() as usize].abs();
        flips &= flips - 1;
    }
    s
}

/// Local information vector `û = β̂ · F^{⊗s}` of a block estimate.
pub fn recover_info(beta_hat: &[u8]) -> Result<Vec<u8>> {
    polar_transform(beta_hat)
}

/// `pm + Σ_j |β̂_j − β_j| · |α_j|`.
pub fn block_pm_update(pm: f64, llrs: &[f64], beta_raw: &[u8], beta_hat: &[u8]) -> Result<f64> {
    if llrs.len() != beta_raw.len() || llrs.len() != beta_hat.len() {
        return Err(Error::invalid("block_pm_update: length mismatch"));
    }
    Ok(pm + llrs
        .iter()
        .zip(beta_raw.iter().zip(beta_hat))
        .filter(|(_, (r, h))| r != h)
        .map(|(a, _)| a.abs())
        .sum::<f64>())
}

/// The repetition block's two codewords, all-zero first.
pub(crate) fn extend_rep_into(llrs: &[f64], out: &mut Vec<BlockCandidate>) {
    let ones = crate::gf2::low_mask(llrs.len());
    let raw = hard_word(llrs);
    out.push(BlockCandidate { bits: 0, delta: flip_cost(llrs, raw) });
    out.push(BlockCandidate { bits: ones, delta: flip_cost(llrs, raw ^ ones) });
}

/// Positions of the `t` smallest `|α|` (ties by index), as a list.
fn flipping_set(llrs: &[f64], t: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..llrs.len()).collect();
    idx.sort_by(|&a, &b| llrs[a].abs().total_cmp(&llrs[b].abs()));
    idx.truncate(t);
    idx
}

pub(crate) fn extend_general_into(
    llrs: &[f64],
    table: &SyndromeTable,
    flip_t: usize,
    saturation: f64,
    out: &mut Vec<BlockCandidate>,
) {
    let start = out.len();
    let raw = hard_word(llrs);
    let set = flipping_set(llrs, flip_t);
    let set_mask = set.iter().fold(0u32, |m, &j| m | 1 << j);
    for m in 0u32..1 << set.len() {
        let budget = set.iter().enumerate().fold(0u32, |acc, (t, &j)| acc | (m >> t & 1) << j);
        let input = raw ^ budget;
        let base = flip_cost(llrs, budget);
        for &e in table.row(table.syndrome(input)) {
            let bits = input ^ e;
            let delta = base + flip_cost(llrs, e & !set_mask) + saturation * (e & set_mask).count_ones() as f64;
            match out[start..].iter_mut().find(|c| c.bits == bits) {
                Some(c) => {
                    if delta < c.delta {
                        c.delta = delta;
                    }
                }
                None => out.push(BlockCandidate { bits, delta }),
            }
        }
    }
}

/// Flip-syndrome extension of a general block: for each of the `2^T` flips
/// of the `T` least reliable positions, the stored patterns of the flipped
/// word's syndrome give candidate codewords. Undoing or adding a flip on a
/// position of the flipping set costs `saturation`. Identical codewords
/// are merged, keeping the smaller increment.
pub fn extend_general(llrs: &[f64], table: &SyndromeTable, flip_t: usize, saturation: f64) -> Result<Vec<BlockCandidate>> {
    if llrs.len() != table.block_len() {
        return Err(Error::invalid(format!(
            "block of {} LLRs does not match a table for B = {}",
            llrs.len(),
            table.block_len()
        )));
    }
    let mut out = Vec::new();
    extend_general_into(llrs, table, flip_t.min(llrs.len()), saturation, &mut out);
    Ok(out)
}

pub(crate) fn extend_exhaustive_into(llrs: &[f64], generator: &[u32], out: &mut Vec<BlockCandidate>) {
    let raw = hard_word(llrs);
    for msg in 0u32..1 << generator.len() {
        let bits = combine(generator, msg);
        out.push(BlockCandidate { bits, delta: flip_cost(llrs, raw ^ bits) });
    }
}

/// Every local codeword `msg · G` for `msg = 0 .. 2^{K_B}` in order.
pub fn extend_exhaustive(llrs: &[f64], generator: &[u32], guard: usize) -> Result<Vec<BlockCandidate>> {
    if generator.len() > guard {
        return Err(Error::ExhaustiveTooLarge { k_local: generator.len(), guard });
    }
    if llrs.len() > 32 || generator.iter().any(|&g| llrs.len() < 32 && g >> llrs.len() != 0) {
        return Err(Error::invalid("generator wider than the block"));
    }
    let mut out = Vec::new();
    extend_exhaustive_into(llrs, generator, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::kernel_row;

    #[test]
    fn hard_decision_examples() {
        assert_eq!(hard_decision(&[2.3, -0.1, 5.0]), vec![0, 1, 0]);
        assert_eq!(hard_decision(&[0.0, 1.0]), vec![0, 0]);
        assert_eq!(hard_word(&[-1.0, 0.0, -0.0, -2.0]), 0b1001);
    }

    #[test]
    fn block_metric() {
        let llrs = [0.4, -1.7, 2.0, 0.9];
        let raw = hard_decision(&llrs);
        assert_eq!(block_pm_update(1.0, &llrs, &raw, &raw).unwrap(), 1.0);
        let mut flipped = raw.clone();
        flipped[1] ^= 1;
        assert!((block_pm_update(0.0, &llrs, &raw, &flipped).unwrap() - 1.7).abs() < 1e-12);
        assert!(block_pm_update(0.0, &llrs, &raw, &raw[..2]).is_err());
    }

    #[test]
    fn recover_info_inverts_local_encoding() {
        let u = [1u8, 0, 1, 1, 0, 0, 1, 0];
        let beta = polar_transform(&u).unwrap();
        assert_eq!(recover_info(&beta).unwrap(), u);
        assert_eq!(recover_info(&[0; 8]).unwrap(), vec![0; 8]);
    }

    #[test]
    fn exhaustive_r0_and_rep() {
        let llrs = [0.5, -1.0, 2.0, -0.25];
        let r0 = extend_exhaustive(&llrs, &[], 8).unwrap();
        assert_eq!(r0, vec![BlockCandidate { bits: 0, delta: 1.25 }]);
        let rep = extend_exhaustive(&llrs, &[kernel_row(3, 4)], 8).unwrap();
        assert_eq!(rep.len(), 2);
        assert_eq!(rep[1], BlockCandidate { bits: 0b1111, delta: 2.5 });
        assert!(matches!(
            extend_exhaustive(&llrs, &[1, 2, 4], 2),
            Err(Error::ExhaustiveTooLarge { k_local: 3, guard: 2 })
        ));
    }

    #[test]
    fn general_extension_on_golden_block() {
        let table = SyndromeTable::build(8, 0b11, 4).unwrap();
        // raw estimate with syndrome 01 (a single error at position 0)
        let llrs = [-0.5, 1.0, 2.0, 1.5, 3.0, 0.7, 2.2, 1.1];
        assert_eq!(table.syndrome(hard_word(&llrs)), 1);
        assert_eq!(table.row(1), &[0x01, 0x04, 0x10, 0x40]);
        let c = extend_general(&llrs, &table, 0, 1e9).unwrap();
        let bits: Vec<u32> = c.iter().map(|x| x.bits).collect();
        assert_eq!(bits, vec![0x00, 0x05, 0x11, 0x41]);
        assert!(c.iter().all(|x| table.syndrome(x.bits) == 0));
        // T = 0 on a codeword: the raw estimate leads with zero cost
        let clean = [1.0; 8];
        assert_eq!(extend_general(&clean, &table, 0, 1e9).unwrap()[0], BlockCandidate { bits: 0, delta: 0.0 });
    }

    #[test]
    fn general_extension_merges_duplicates() {
        let table = SyndromeTable::build(16, 0x011f, 8).unwrap();
        let llrs: Vec<f64> = (0..16).map(|i| ((i * 37 % 11) as f64 - 5.0) * 0.3 + 0.05).collect();
        let c = extend_general(&llrs, &table, 3, 1e9).unwrap();
        for (i, a) in c.iter().enumerate() {
            assert_eq!(table.syndrome(a.bits), 0);
            assert!(c[i + 1..].iter().all(|b| b.bits != a.bits));
        }
        assert!(c.len() <= 64);
    }
}
