use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{adjust_info_bits, hybrid_spec};
use crate::fsl::{FslDecoder, FslParams, SegmentMode};
use crate::polar::{awgn_llr, frame_rng, modulate_bpsk, CodeSpec, SnrConvention};
use crate::scl::{DecodeOutcome, SclDecoder};
use crate::syndrome::TableCache;
use crate::{Error, Result};

/// Frames simulated between two checks of the stopping rule. Fixed so that
/// the stopping point does not depend on the number of workers.
pub const FRAME_BATCH: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionChoice {
    Pw,
    Adjusted { block_len: usize, k_low: usize, k_high: usize },
    Hybrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfig {
    pub n: usize,
    pub k: usize,
    pub crc_len: usize,
    pub construction: ConstructionChoice,
}

impl CodeConfig {
    pub fn build(&self) -> Result<CodeSpec> {
        match self.construction {
            ConstructionChoice::Pw => CodeSpec::pw(self.n, self.k, self.crc_len),
            ConstructionChoice::Adjusted { block_len, k_low, k_high } => {
                adjust_info_bits(&CodeSpec::pw(self.n, self.k, self.crc_len)?, block_len, k_low, k_high)
            }
            ConstructionChoice::Hybrid => hybrid_spec(self.n, self.k, self.crc_len),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    Scl,
    Fsl,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Scl => "scl",
            DecoderKind::Fsl => "fsl",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub kind: DecoderKind,
    pub list_size: usize,
    /// Used by FSL only; `list_size` above takes precedence.
    pub fsl: FslParams,
}

impl DecoderConfig {
    pub fn scl(list_size: usize) -> Self {
        DecoderConfig { kind: DecoderKind::Scl, list_size, fsl: FslParams::default() }
    }

    pub fn fsl(params: FslParams) -> Self {
        DecoderConfig { kind: DecoderKind::Fsl, list_size: params.list_size, fsl: params }
    }

    pub fn label(&self) -> String {
        match self.kind {
            DecoderKind::Scl => format!("SCL L={}", self.list_size),
            DecoderKind::Fsl => format!(
                "FSL L={} B={} T={} Lsd={}",
                self.list_size, self.fsl.block_len, self.fsl.flip_t, self.fsl.l_sd
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub code: CodeConfig,
    pub decoder: DecoderConfig,
    /// Strictly increasing; `inf` is the noiseless sentinel.
    #[serde(with = "super::report::snr_value::list")]
    pub snr_db: Vec<f64>,
    pub convention: SnrConvention,
    pub min_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.snr_db.is_empty() {
            return Err(Error::invalid("at least one SNR point is required"));
        }
        if self.snr_db.iter().any(|s| s.is_nan()) || self.snr_db.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("SNR points must be strictly increasing"));
        }
        if self.min_errors == 0 || self.max_frames == 0 {
            return Err(Error::invalid("min_errors and max_frames must be at least 1"));
        }
        if self.decoder.list_size == 0 {
            return Err(Error::invalid("list size must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlerPoint {
    #[serde(with = "super::report::snr_value")]
    pub snr_db: f64,
    pub frames: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub wall_time_s: f64,
}

/// Either decoder behind one interface.
pub enum AnyDecoder {
    Scl(Box<SclDecoder>),
    Fsl(Box<FslDecoder>),
}

impl AnyDecoder {
    pub fn new(spec: &CodeSpec, cfg: &DecoderConfig, tables: &TableCache) -> Result<Self> {
        Ok(match cfg.kind {
            DecoderKind::Scl => AnyDecoder::Scl(Box::new(SclDecoder::new(spec, cfg.list_size)?)),
            DecoderKind::Fsl => {
                let params = FslParams { list_size: cfg.list_size, ..cfg.fsl };
                let mode = SegmentMode::for_block_len(params.block_len);
                AnyDecoder::Fsl(Box::new(FslDecoder::with_tables(spec, &params, mode, tables)?))
            }
        })
    }

    pub fn decode(&mut self, llrs: &[f64]) -> Result<DecodeOutcome> {
        match self {
            AnyDecoder::Scl(d) => d.decode(llrs),
            AnyDecoder::Fsl(d) => d.decode(llrs),
        }
    }
}

/// Per-point seed; frames within a point use the frame index as stream.
pub fn point_seed(seed: u64, point: usize) -> u64 {
    seed ^ (point as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Payload and channel LLRs of one frame: a pure function of its inputs.
pub fn simulate_frame(spec: &CodeSpec, es_n0_db: f64, seed: u64, frame: u64) -> Result<(Vec<u8>, Vec<f64>)> {
    let mut rng = frame_rng(seed, frame);
    let payload: Vec<u8> = (0..spec.k_payload()).map(|_| rng.random::<bool>() as u8).collect();
    let x = modulate_bpsk(&spec.encode_payload(&payload)?);
    Ok((payload, awgn_llr(&x, es_n0_db, &mut rng)))
}

/// Runs every SNR point until `min_errors` block errors or `max_frames`
/// frames. Results depend only on the configuration.
pub fn run_campaign(config: &CampaignConfig) -> Result<Vec<BlerPoint>> {
    run_campaign_with(config, &TableCache::from_env())
}

pub fn run_campaign_with(config: &CampaignConfig, tables: &TableCache) -> Result<Vec<BlerPoint>> {
    config.validate()?;
    let spec = config.code.build()?;
    // surface configuration errors before spawning workers
    AnyDecoder::new(&spec, &config.decoder, tables)?;
    let mut points = Vec::with_capacity(config.snr_db.len());
    for (i, &snr) in config.snr_db.iter().enumerate() {
        let es = config.convention.to_es_n0_db(snr, spec.rate());
        let seed = point_seed(config.seed, i);
        let t0 = Instant::now();
        let (mut frames, mut errors) = (0u64, 0u64);
        while errors < config.min_errors && frames < config.max_frames {
            let end = (frames + FRAME_BATCH).min(config.max_frames);
            let batch_errors = (frames..end)
                .into_par_iter()
                .map_init(
                    || AnyDecoder::new(&spec, &config.decoder, tables),
                    |dec, f| -> Result<u64> {
                        let dec = dec.as_mut().map_err(|e| Error::invalid(e.to_string()))?;
                        let (payload, llr) = simulate_frame(&spec, es, seed, f)?;
                        Ok((dec.decode(&llr)?.payload != payload) as u64)
                    },
                )
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            errors += batch_errors;
            frames = end;
        }
        points.push(BlerPoint {
            snr_db: snr,
            frames,
            block_errors: errors,
            bler: errors as f64 / frames as f64,
            wall_time_s: t0.elapsed().as_secs_f64(),
        });
    }
    Ok(points)
}

/// SNR at which the curve crosses `target`, interpolating `log10(BLER)`
/// linearly between the two bracketing points.
pub fn snr_at_bler(points: &[BlerPoint], target: f64) -> Option<f64> {
    let usable: Vec<&BlerPoint> = points.iter().filter(|p| p.bler > 0.0 && p.snr_db.is_finite()).collect();
    let lt = target.log10();
    for w in usable.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (la, lb) = (a.bler.log10(), b.bler.log10());
        if la >= lt && lt >= lb && la != lb {
            return Some(a.snr_db + (la - lt) / (la - lb) * (b.snr_db - a.snr_db));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(kind: DecoderKind) -> CampaignConfig {
        CampaignConfig {
            code: CodeConfig { n: 64, k: 32, crc_len: 8, construction: ConstructionChoice::Pw },
            decoder: DecoderConfig { kind, list_size: 8, fsl: FslParams::for_block_len(8) },
            snr_db: vec![1.0, 3.0],
            convention: SnrConvention::Es,
            min_errors: 20,
            max_frames: 2000,
            seed: 11,
        }
    }

    #[test]
    fn deterministic_and_noiseless() {
        let c = config(DecoderKind::Fsl);
        let a = run_campaign_with(&c, &TableCache::in_memory()).unwrap();
        let b = run_campaign_with(&c, &TableCache::in_memory()).unwrap();
        let strip = |v: &[BlerPoint]| v.iter().map(|p| (p.frames, p.block_errors)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        let clean = CampaignConfig { snr_db: vec![f64::INFINITY], max_frames: 300, ..config(DecoderKind::Scl) };
        let p = run_campaign_with(&clean, &TableCache::in_memory()).unwrap();
        assert_eq!(p[0].block_errors, 0);
        assert_eq!(p[0].frames, 300);
    }

    #[test]
    fn rejects_unsorted_snr() {
        let c = CampaignConfig { snr_db: vec![2.0, 1.0], ..config(DecoderKind::Scl) };
        assert!(run_campaign(&c).is_err());
        let c = CampaignConfig { min_errors: 0, ..config(DecoderKind::Scl) };
        assert!(run_campaign(&c).is_err());
    }

    #[test]
    fn interpolation() {
        let p = |snr, bler| BlerPoint { snr_db: snr, frames: 1, block_errors: 1, bler, wall_time_s: 0.0 };
        let pts = [p(1.0, 1e-1), p(2.0, 1e-3)];
        assert!((snr_at_bler(&pts, 1e-2).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(snr_at_bler(&pts, 1e-4), None);
    }
}
