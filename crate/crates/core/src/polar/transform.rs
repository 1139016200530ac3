use crate::{Error, Result};

/// One butterfly stage of `F^{⊗n}`: `x[i] ^= x[i + 2^stage]` for every `i`
/// whose `stage` bit is clear.
#[inline]
pub fn butterfly_stage(bits: &mut [u8], stage: usize) {
    let half = 1usize << stage;
    for chunk in bits.chunks_mut(half << 1) {
        let (lo, hi) = chunk.split_at_mut(half);
        for (a, b) in lo.iter_mut().zip(hi.iter()) {
            *a ^= *b;
        }
    }
}

/// Applies stages `stages.start .. stages.end` in place. Stages commute, so
/// `0..s` is the block-local transform of every length-`2^s` block and
/// `s..n` the inner transform that combines blocks.
pub fn partial_transform(bits: &mut [u8], stages: std::ops::Range<usize>) {
    for s in stages {
        butterfly_stage(bits, s);
    }
}

pub fn polar_transform_in_place(bits: &mut [u8]) -> Result<()> {
    let n = bits.len();
    if !n.is_power_of_two() {
        return Err(Error::invalid(format!("transform length {n} is not a power of two")));
    }
    partial_transform(bits, 0..n.trailing_zeros() as usize);
    Ok(())
}

/// `u · F^{⊗n}` over GF(2). The transform is its own inverse.
pub fn polar_transform(u: &[u8]) -> Result<Vec<u8>> {
    let mut c = u.to_vec();
    polar_transform_in_place(&mut c)?;
    Ok(c)
}

/// `F^{⊗s}` on a block packed into the low `len` bits of a word.
pub fn transform_word(mut x: u32, len: usize) -> u32 {
    let mut half = 1;
    while half < len {
        // bits whose `half` index bit is clear receive their upper partner
        let lower = lower_half_mask(half, len);
        x ^= (x >> half) & lower;
        half <<= 1;
    }
    x
}

fn lower_half_mask(half: usize, len: usize) -> u32 {
    (0..len)
        .filter(|i| i & half == 0)
        .fold(0u32, |m, i| m | 1 << i)
}

/// Rows of `F^{⊗s}` for a length-`len` block: row `i` has bit `j` set iff
/// `j ⊆ i` bitwise.
pub fn kernel_row(i: usize, len: usize) -> u32 {
    (0..len).filter(|&j| j & i == j).fold(0u32, |m, j| m | 1 << j)
}

/// Column `j` of `F^{⊗s}`: bit `i` set iff `j ⊆ i`.
pub fn kernel_column(j: usize, len: usize) -> u32 {
    (0..len).filter(|&i| j & i == j).fold(0u32, |m, i| m | 1 << i)
}
