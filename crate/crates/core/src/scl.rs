//! CRC-aided successive-cancellation list decoding, one bit at a time.

use crate::polar::CodeSpec;
use crate::tree::{FinalList, LeafExtender, LeafSpan, ListEngine};
use crate::{Error, Result};

pub use crate::tree::PruneRecord;

/// Min-sum check-node update `sgn(a)·sgn(b)·min(|a|, |b|)`.
#[inline]
pub fn f_update(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -m
    } else {
        m
    }
}

/// Variable-node update `(1 − 2·bit)·a + b`.
#[inline]
pub fn g_update(a: f64, b: f64, bit: u8) -> f64 {
    if bit & 1 == 1 {
        b - a
    } else {
        a + b
    }
}

/// Combines the estimates of two sibling nodes: `(left ⊕ right, right)`.
pub fn beta_update(left: &[u8], right: &[u8]) -> Result<Vec<u8>> {
    if left.len() != right.len() {
        return Err(Error::invalid("beta_update: halves differ in length"));
    }
    Ok(left.iter().zip(right).map(|(l, r)| l ^ r).chain(right.iter().copied()).collect())
}

/// Hardware-friendly metric update: unchanged when the decision agrees with
/// the hard estimate `beta`, otherwise increased by `|llr|`.
#[inline]
pub fn pm_update(pm: f64, llr: f64, u_hat: u8, beta: u8) -> f64 {
    if u_hat == beta {
        pm
    } else {
        pm + llr.abs()
    }
}

/// One entry of the final list.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoderPath {
    pub path_metric: f64,
    /// Root-stage hard estimate (the codeword).
    pub hard_estimates: Vec<u8>,
    /// Information bits (payload followed by CRC) read from the codeword.
    pub decided_bits: Vec<u8>,
    pub crc_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub payload: Vec<u8>,
    pub crc_ok: bool,
    pub final_pm: f64,
    /// Position of the selected path in the final list (ascending PM).
    pub selected_path_rank: usize,
    pub paths: Vec<DecoderPath>,
}

impl DecodeOutcome {
    pub(crate) fn select(spec: &CodeSpec, list: FinalList) -> DecodeOutcome {
        let paths: Vec<DecoderPath> = list
            .codewords
            .into_iter()
            .zip(list.metrics)
            .map(|(cw, pm)| {
                let info = spec.extract_info(&cw);
                DecoderPath { path_metric: pm, crc_ok: spec.check_crc(&info), hard_estimates: cw, decided_bits: info }
            })
            .collect();
        let rank = paths.iter().position(|p| p.crc_ok).unwrap_or(0);
        let best = &paths[rank];
        DecodeOutcome {
            payload: best.decided_bits[..spec.k_payload()].to_vec(),
            crc_ok: best.crc_ok,
            final_pm: best.path_metric,
            selected_path_rank: rank,
            paths,
        }
    }
}

struct BitLeaves;

impl LeafExtender for BitLeaves {
    fn extend(&mut self, _leaf: usize, alpha: &[f64], out: &mut Vec<(u32, f64)>) {
        let a = alpha[0];
        let hard = (a < 0.0) as u8;
        out.push((0, pm_update(0.0, a, 0, hard)));
        out.push((1, pm_update(0.0, a, 1, hard)));
    }
}

/// Reusable SCL decoder for one code.
pub struct SclDecoder {
    spec: CodeSpec,
    leaves: Vec<LeafSpan>,
    engine: ListEngine,
}

impl SclDecoder {
    pub fn new(spec: &CodeSpec, list_size: usize) -> Result<Self> {
        if list_size == 0 {
            return Err(Error::invalid("list size must be at least 1"));
        }
        if spec.is_hybrid() {
            return Err(Error::invalid("the bit-level SCL decoder handles polar outer codes only"));
        }
        let mask = spec.info_mask();
        let leaves = (0..spec.n_mother())
            .map(|i| LeafSpan { start: i, log_len: 0, frozen: !mask[i] })
            .collect();
        Ok(SclDecoder { spec: spec.clone(), leaves, engine: ListEngine::new(spec.log_n(), list_size) })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn list_size(&self) -> usize {
        self.engine.list_size()
    }

    pub fn decode(&mut self, llrs: &[f64]) -> Result<DecodeOutcome> {
        if llrs.len() != self.spec.n_mother() {
            return Err(Error::invalid(format!("expected {} LLRs, got {}", self.spec.n_mother(), llrs.len())));
        }
        let list = self.engine.run(llrs, &self.leaves, &mut BitLeaves);
        Ok(DecodeOutcome::select(&self.spec, list))
    }

    /// Decodes and records every split: all candidate metrics and the
    /// survivors kept.
    pub fn decode_traced(&mut self, llrs: &[f64]) -> Result<(DecodeOutcome, Vec<PruneRecord>)> {
        self.engine.trace = Some(Vec::new());
        let out = self.decode(llrs);
        let trace = self.engine.trace.take().unwrap_or_default();
        Ok((out?, trace))
    }
}

pub fn scl_decode(llrs: &[f64], spec: &CodeSpec, list_size: usize) -> Result<DecodeOutcome> {
    SclDecoder::new(spec, list_size)?.decode(llrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{modulate_bpsk, polar_transform, NOISELESS_LLR};

    #[test]
    fn update_rules() {
        assert_eq!(f_update(2.0, -3.0), -2.0);
        assert_eq!(f_update(0.0, -7.0).abs(), 0.0);
        assert_eq!(f_update(-1.5, -4.0), 1.5);
        assert_eq!(g_update(2.0, 3.0, 0), 5.0);
        assert_eq!(g_update(2.0, 3.0, 1), 1.0);
        assert_eq!(g_update(2.5, 0.0, 1), -2.5);
        assert_eq!(pm_update(1.5, -2.0, 1, 1), 1.5);
        assert_eq!(pm_update(1.5, -2.0, 0, 1), 3.5);
        assert_eq!(pm_update(0.0, 2.0, 1, 0), 2.0);
        assert_eq!(pm_update(0.0, -2.0, 0, 1), 2.0);
    }

    #[test]
    fn beta_update_rules() {
        assert_eq!(beta_update(&[1], &[0]).unwrap(), vec![1, 0]);
        assert_eq!(beta_update(&[1, 0, 1], &[1, 0, 1]).unwrap()[..3], [0, 0, 0]);
        assert!(beta_update(&[1], &[0, 1]).is_err());
    }

    #[test]
    fn stacked_beta_updates_are_the_transform() {
        let u: Vec<u8> = (0..32).map(|i| ((i * 7 + 3) % 5 == 0) as u8).collect();
        let mut layer: Vec<Vec<u8>> = u.iter().map(|&b| vec![b]).collect();
        while layer.len() > 1 {
            layer = layer.chunks(2).map(|p| beta_update(&p[0], &p[1]).unwrap()).collect();
        }
        assert_eq!(layer[0], polar_transform(&u).unwrap());
    }

    #[test]
    fn noiseless_recovery() {
        let spec = CodeSpec::pw(128, 48, 16).unwrap();
        let payload: Vec<u8> = (0..48).map(|i| (i % 5 < 2) as u8).collect();
        let cw = spec.encode_payload(&payload).unwrap();
        let llr: Vec<f64> = modulate_bpsk(&cw).iter().map(|x| x * NOISELESS_LLR).collect();
        for l in [1, 2, 8] {
            let out = scl_decode(&llr, &spec, l).unwrap();
            assert_eq!(out.payload, payload);
            assert!(out.crc_ok);
            assert_eq!(out.final_pm, 0.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let spec = CodeSpec::pw(16, 4, 0).unwrap();
        assert!(scl_decode(&[0.0; 8], &spec, 4).is_err());
        assert!(scl_decode(&[0.0; 16], &spec, 0).is_err());
    }
}
