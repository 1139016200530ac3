//! Information-bit re-adjustment: moves information bits between
//! constituent blocks so no block keeps a medium rate.

use std::collections::BTreeMap;

use crate::fsl::special_kind;
use crate::polar::{pw_weight, CodeSpec, Construction};
use crate::{Error, Result};

fn check_block_len(spec: &CodeSpec, block_len: usize) -> Result<()> {
    if !block_len.is_power_of_two() || block_len > spec.n_mother() || block_len > 32 {
        return Err(Error::invalid(format!("block length {block_len} unsupported")));
    }
    Ok(())
}

/// Histogram `K_B -> number of blocks` over the aligned length-`block_len`
/// blocks. Leading all-frozen blocks (those before the first block that
/// carries an information bit) are skipped, as the decoder never visits
/// them; every later block is counted.
pub fn block_rate_histogram(spec: &CodeSpec, block_len: usize) -> Result<BTreeMap<usize, usize>> {
    check_block_len(spec, block_len)?;
    let counts = spec.block_info_counts(block_len);
    let first = counts.iter().position(|&k| k > 0).unwrap_or(counts.len());
    let mut hist = BTreeMap::new();
    for &k in &counts[first..] {
        *hist.entry(k).or_insert(0) += 1;
    }
    Ok(hist)
}

fn block_info_word(spec: &CodeSpec, block: usize, block_len: usize) -> u32 {
    let lo = block * block_len;
    spec.info_set()
        .iter()
        .filter(|&&i| i >= lo && i < lo + block_len)
        .fold(0u32, |m, &i| m | 1 << (i - lo))
}

/// Largest syndrome-table row count `2^{B-K_B}` over blocks that would be
/// decoded through a syndrome table: blocks that are not R0/Rep/SPC/R1
/// and whose information count is at least `min_k_syndrome`
/// (`T + log2 L_sd`, below which exhaustive extension is cheaper).
/// Returns 0 when no such block exists.
pub fn max_syndrome_table_rows(spec: &CodeSpec, block_len: usize, min_k_syndrome: usize) -> Result<usize> {
    check_block_len(spec, block_len)?;
    let counts = spec.block_info_counts(block_len);
    Ok(counts
        .iter()
        .enumerate()
        .filter(|&(b, &k)| {
            k >= min_k_syndrome && special_kind(block_info_word(spec, b, block_len), block_len).is_none()
        })
        .map(|(_, &k)| 1usize << (block_len - k))
        .max()
        .unwrap_or(0))
}

/// Re-distributes information bits so no block has `k_low < K_B < k_high`
/// while the total count stays `K + crc`. Within each block the most
/// reliable positions (by polarization weight) carry the information.
pub fn adjust_info_bits(spec: &CodeSpec, block_len: usize, k_low: usize, k_high: usize) -> Result<CodeSpec> {
    check_block_len(spec, block_len)?;
    if k_low >= k_high || k_high > block_len {
        return Err(Error::invalid(format!(
            "need 0 <= k_low < k_high <= B, got k_low = {k_low}, k_high = {k_high}, B = {block_len}"
        )));
    }
    let medium = |k: usize| k_low < k && k < k_high;
    let original = spec.block_info_counts(block_len);
    let mut adjusted = original.clone();

    // 1) push medium blocks to the nearer boundary
    for k in adjusted.iter_mut().filter(|k| medium(**k)) {
        *k = if *k - k_low < k_high - *k { k_low } else { k_high };
    }

    // 2) restore the total, one bit per block visit, ascending block index
    let target = spec.k_total();
    let mut sum: usize = adjusted.iter().sum();
    if sum > target {
        if k_low > 0 {
            for k in adjusted.iter_mut() {
                if sum == target {
                    break;
                }
                if *k == k_low {
                    *k -= 1;
                    sum -= 1;
                }
            }
        }
        while sum > target {
            let b = adjusted
                .iter()
                .position(|&k| k > 0 && !medium(k - 1))
                .ok_or_else(|| Error::Infeasible(format!("{} bits too many", sum - target)))?;
            adjusted[b] -= 1;
            sum -= 1;
        }
    } else if sum < target {
        if k_high < block_len {
            for k in adjusted.iter_mut() {
                if sum == target {
                    break;
                }
                if *k == k_high {
                    *k += 1;
                    sum += 1;
                }
            }
        }
        while sum < target {
            let b = adjusted
                .iter()
                .position(|&k| k < block_len && !medium(k + 1))
                .ok_or_else(|| Error::Infeasible(format!("{} bits missing", target - sum)))?;
            adjusted[b] += 1;
            sum += 1;
        }
    }

    // 3) most reliable positions inside every block
    let mut info = Vec::with_capacity(target);
    for (b, &k) in adjusted.iter().enumerate() {
        let lo = b * block_len;
        let mut pos: Vec<usize> = (lo..lo + block_len).collect();
        pos.sort_by(|&x, &y| pw_weight(y).total_cmp(&pw_weight(x)).then(y.cmp(&x)));
        info.extend_from_slice(&pos[..k]);
    }
    CodeSpec::new(
        spec.n_mother(),
        spec.k_payload(),
        spec.crc_len(),
        info,
        Construction::Adjusted { block_len, k_low, k_high },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_medium_blocks_means_no_change() {
        let spec = CodeSpec::pw(32, 16, 16).unwrap();
        let same = adjust_info_bits(&spec, 16, 5, 9).unwrap();
        assert_eq!(same.info_set(), spec.info_set());
        let spec = CodeSpec::pw(1024, 512, 16).unwrap();
        let same = adjust_info_bits(&spec, 16, 15, 16).unwrap();
        assert_eq!(same.info_set(), spec.info_set());
    }

    #[test]
    fn rate_is_preserved_and_medium_rates_vanish() {
        for (n, k) in [(256usize, 128usize), (512, 200), (1024, 512), (2048, 1024)] {
            let spec = CodeSpec::pw(n, k, 16).unwrap();
            for (lo, hi) in [(5, 9), (2, 14), (7, 8), (4, 12)] {
                let adj = adjust_info_bits(&spec, 16, lo, hi).unwrap();
                assert_eq!(adj.k_total(), spec.k_total());
                assert!(adj.block_info_counts(16).iter().all(|&kb| !(lo < kb && kb < hi)));
            }
        }
    }

    #[test]
    fn histogram_skips_leading_frozen_blocks() {
        let spec = CodeSpec::pw(64, 48, 16).unwrap();
        let h = block_rate_histogram(&spec, 16).unwrap();
        assert_eq!(h.values().sum::<usize>(), 4 - spec.block_info_counts(16).iter().take_while(|&&k| k == 0).count());
        let full = CodeSpec::pw(32, 16, 16).unwrap();
        let h = block_rate_histogram(&full, 8).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&8], 4);
    }

    #[test]
    fn all_or_nothing_blocks_need_a_multiple_of_b() {
        // 216 information bits cannot be spread over blocks of 0 or 16
        let spec = CodeSpec::pw(512, 200, 16).unwrap();
        assert!(matches!(adjust_info_bits(&spec, 16, 0, 16), Err(Error::Infeasible(_))));
        let spec = CodeSpec::pw(512, 176, 16).unwrap();
        assert!(adjust_info_bits(&spec, 16, 0, 16).is_ok());
    }

    #[test]
    fn invalid_bounds() {
        let spec = CodeSpec::pw(64, 16, 16).unwrap();
        assert!(adjust_info_bits(&spec, 16, 9, 5).is_err());
        assert!(adjust_info_bits(&spec, 16, 5, 17).is_err());
    }
}
