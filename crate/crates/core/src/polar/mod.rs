//! Mother-code arithmetic shared by every decoder.

mod channel;
mod crc;
mod reliability;
mod transform;

pub use channel::{
    awgn_llr, awgn_llr_seeded, frame_rng, modulate_bpsk, noise_variance, SnrConvention,
    NOISELESS_LLR,
};
pub use crc::{crc_attach, crc_check, Crc, CRC16_CCITT_FALSE};
pub use reliability::{construct_pw, pw_order, pw_weight, PW_BETA};
pub use transform::{
    butterfly_stage, kernel_column, kernel_row, partial_transform, polar_transform,
    polar_transform_in_place, transform_word,
};

use serde::{Deserialize, Serialize};

use crate::construct::{OuterCode, OuterFamily};
use crate::gf2::MessageSolver;
use crate::{Error, Result};

/// How the information set was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Pw,
    Adjusted {
        block_len: usize,
        k_low: usize,
        k_high: usize,
    },
    /// Outer block codes of length `block_len`, one family per block,
    /// followed by the inner polar stages.
    Hybrid {
        block_len: usize,
        families: Vec<OuterFamily>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    n_mother: usize,
    k_payload: usize,
    crc_len: usize,
    info_set: Vec<usize>,
    construction: Construction,
}

impl CodeSpec {
    pub fn new(
        n_mother: usize,
        k_payload: usize,
        crc_len: usize,
        mut info_set: Vec<usize>,
        construction: Construction,
    ) -> Result<Self> {
        if !n_mother.is_power_of_two() || n_mother < 2 {
            return Err(Error::invalid(format!("N = {n_mother} is not a power of two >= 2")));
        }
        Crc::for_len(crc_len)?;
        info_set.sort_unstable();
        if info_set.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate information indices"));
        }
        if info_set.last().is_some_and(|&i| i >= n_mother) {
            return Err(Error::invalid("information index out of range"));
        }
        if info_set.len() != k_payload + crc_len {
            return Err(Error::invalid(format!(
                "information set has {} indices, expected K + crc = {}",
                info_set.len(),
                k_payload + crc_len
            )));
        }
        let spec = CodeSpec { n_mother, k_payload, crc_len, info_set, construction };
        if let Construction::Hybrid { block_len, families } = &spec.construction {
            if !block_len.is_power_of_two() || *block_len > n_mother || *block_len > 32 {
                return Err(Error::invalid(format!("hybrid block length {block_len} unsupported")));
            }
            if families.len() != n_mother / block_len {
                return Err(Error::invalid("one outer family per block required"));
            }
            for (b, k) in spec.block_info_counts(*block_len).into_iter().enumerate() {
                OuterCode::for_family(families[b], k, *block_len)?;
            }
        }
        Ok(spec)
    }

    /// Plain polar code with a polarization-weight information set.
    pub fn pw(n_mother: usize, k_payload: usize, crc_len: usize) -> Result<Self> {
        let info = construct_pw(n_mother, k_payload + crc_len)?;
        CodeSpec::new(n_mother, k_payload, crc_len, info, Construction::Pw)
    }

    pub fn n_mother(&self) -> usize {
        self.n_mother
    }

    pub fn log_n(&self) -> usize {
        self.n_mother.trailing_zeros() as usize
    }

    pub fn k_payload(&self) -> usize {
        self.k_payload
    }

    pub fn crc_len(&self) -> usize {
        self.crc_len
    }

    pub fn k_total(&self) -> usize {
        self.info_set.len()
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Payload rate `K/N`.
    pub fn rate(&self) -> f64 {
        self.k_payload as f64 / self.n_mother as f64
    }

    pub fn info_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n_mother];
        for &i in &self.info_set {
            m[i] = true;
        }
        m
    }

    /// `K_B` of every aligned length-`block_len` block.
    pub fn block_info_counts(&self, block_len: usize) -> Vec<usize> {
        let mut counts = vec![0; self.n_mother / block_len];
        for &i in &self.info_set {
            counts[i / block_len] += 1;
        }
        counts
    }

    pub fn is_hybrid(&self) -> bool {
        matches!(self.construction, Construction::Hybrid { .. })
    }

    /// Outer code of every block for hybrid constructions.
    pub fn outer_codes(&self) -> Option<(usize, Vec<OuterCode>)> {
        let Construction::Hybrid { block_len, families } = &self.construction else {
            return None;
        };
        let codes = (0..self.n_mother / block_len)
            .map(|b| self.block_outer_code(b, *block_len, families[b]))
            .collect();
        Some((*block_len, codes))
    }

    fn block_outer_code(&self, block: usize, block_len: usize, family: OuterFamily) -> OuterCode {
        let lo = block * block_len;
        let positions: Vec<usize> = self
            .info_set
            .iter()
            .filter(|&&i| i >= lo && i < lo + block_len)
            .map(|&i| i - lo)
            .collect();
        match family {
            OuterFamily::Polar => OuterCode::polar_from_positions(&positions, block_len),
            other => OuterCode::for_family(other, positions.len(), block_len)
                .expect("validated at construction"),
        }
    }

    pub fn attach_crc(&self, payload: &[u8]) -> Result<Vec<u8>> {
        crc_attach(payload, self.k_payload, self.crc_len)
    }

    pub fn check_crc(&self, info: &[u8]) -> bool {
        crc_check(info, self.crc_len).unwrap_or(false)
    }

    /// Encodes `K + crc` information bits (already CRC-attached).
    pub fn encode_info(&self, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != self.k_total() {
            return Err(Error::invalid(format!(
                "information vector has {} bits, expected {}",
                info.len(),
                self.k_total()
            )));
        }
        match self.outer_codes() {
            None => {
                let mut u = vec![0u8; self.n_mother];
                for (&pos, &b) in self.info_set.iter().zip(info) {
                    u[pos] = b & 1;
                }
                polar_transform_in_place(&mut u)?;
                Ok(u)
            }
            Some((block_len, codes)) => {
                // info_set is sorted, so each block's bits are contiguous in `info`
                let mut v = vec![0u8; self.n_mother];
                let mut cursor = 0;
                for (b, code) in codes.iter().enumerate() {
                    let msg = (0..code.k_local)
                        .fold(0u32, |m, r| m | ((info[cursor + r] & 1) as u32) << r);
                    cursor += code.k_local;
                    let cw = code.encode_word(msg);
                    let lo = b * block_len;
                    for j in 0..block_len {
                        v[lo + j] = (cw >> j & 1) as u8;
                    }
                }
                partial_transform(&mut v, block_len.trailing_zeros() as usize..self.log_n());
                Ok(v)
            }
        }
    }

    pub fn encode_payload(&self, payload: &[u8]) -> Result<Vec<u8>> {
        self.encode_info(&self.attach_crc(payload)?)
    }

    /// Inverse of [`encode_info`](Self::encode_info) for valid codewords.
    pub fn extract_info(&self, codeword: &[u8]) -> Vec<u8> {
        match self.outer_codes() {
            None => {
                let mut u = codeword.to_vec();
                partial_transform(&mut u, 0..self.log_n());
                self.info_set.iter().map(|&i| u[i]).collect()
            }
            Some((block_len, codes)) => {
                let mut v = codeword.to_vec();
                partial_transform(&mut v, block_len.trailing_zeros() as usize..self.log_n());
                let mut info = Vec::with_capacity(self.k_total());
                for (b, code) in codes.iter().enumerate() {
                    let lo = b * block_len;
                    let word = v[lo..lo + block_len]
                        .iter()
                        .enumerate()
                        .fold(0u32, |m, (j, &x)| m | (x as u32) << j);
                    let solver = MessageSolver::new(&code.generator).expect("full rank");
                    let msg = solver.solve(word);
                    info.extend((0..code.k_local).map(|r| (msg >> r & 1) as u8));
                }
                info
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CodeSpec::new(8, 2, 0, vec![6, 7], Construction::Pw).is_ok());
        assert!(CodeSpec::new(8, 2, 0, vec![7, 7], Construction::Pw).is_err());
        assert!(CodeSpec::new(8, 2, 0, vec![6, 8], Construction::Pw).is_err());
        assert!(CodeSpec::new(8, 3, 0, vec![6, 7], Construction::Pw).is_err());
        assert!(CodeSpec::new(12, 2, 0, vec![6, 7], Construction::Pw).is_err());
        assert!(CodeSpec::new(64, 4, 5, vec![0; 9], Construction::Pw).is_err());
    }

    #[test]
    fn encode_extract_round_trip() {
        let spec = CodeSpec::pw(64, 20, 16).unwrap();
        let payload: Vec<u8> = (0..20).map(|i| (i % 3 == 0) as u8).collect();
        let cw = spec.encode_payload(&payload).unwrap();
        let info = spec.extract_info(&cw);
        assert_eq!(&info[..20], &payload[..]);
        assert!(spec.check_crc(&info));
    }
}
