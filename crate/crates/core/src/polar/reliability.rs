use crate::{Error, Result};

/// Expansion base of the polarization weight, `2^{1/4}`.
pub const PW_BETA: f64 = 1.189_207_115_002_721;

/// Polarization weight `Σ_j b_j β^j` over the bits of `index`.
pub fn pw_weight(index: usize) -> f64 {
    let mut w = 0.0;
    let mut p = 1.0;
    let mut i = index;
    while i != 0 {
        if i & 1 == 1 {
            w += p;
        }
        p *= PW_BETA;
        i >>= 1;
    }
    w
}

/// All sub-channel indices of a length-`n` code, most reliable first.
/// Equal weights rank the higher index first.
pub fn pw_order(n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| pw_weight(b).total_cmp(&pw_weight(a)).then(b.cmp(&a)));
    idx
}

/// The `k_total` most reliable indices, sorted ascending.
pub fn construct_pw(n: usize, k_total: usize) -> Result<Vec<usize>> {
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::invalid(format!("code length {n} is not a power of two >= 2")));
    }
    if k_total == 0 || k_total > n {
        return Err(Error::invalid(format!("cannot pick {k_total} of {n} sub-channels")));
    }
    let mut set = pw_order(n)[..k_total].to_vec();
    set.sort_unstable();
    Ok(set)
}
