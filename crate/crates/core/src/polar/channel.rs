use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// LLR magnitude used for noiseless (`snr = +∞`) frames.
pub const NOISELESS_LLR: f64 = 1.0e4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SnrConvention {
    /// Symbol energy over noise density.
    #[default]
    Es,
    /// Energy per payload bit; `Es/N0 = Eb/N0 + 10 log10(K/N)`.
    Eb,
}

impl SnrConvention {
    pub fn to_es_n0_db(self, snr_db: f64, rate: f64) -> f64 {
        match self {
            SnrConvention::Es => snr_db,
            SnrConvention::Eb => snr_db + 10.0 * rate.log10(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SnrConvention::Es => "Es/N0",
            SnrConvention::Eb => "Eb/N0",
        }
    }
}

/// `x = 1 - 2c`.
pub fn modulate_bpsk(c: &[u8]) -> Vec<f64> {
    c.iter().map(|&b| 1.0 - 2.0 * b as f64).collect()
}

/// `σ² = 1 / (2 · 10^{Es/N0 / 10})` for unit-energy BPSK.
pub fn noise_variance(es_n0_db: f64) -> f64 {
    1.0 / (2.0 * 10f64.powf(es_n0_db / 10.0))
}

/// Independent per-frame generator: the stream id separates frames drawn
/// from the same campaign seed.
pub fn frame_rng(seed: u64, frame_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(frame_index);
    rng
}

/// Adds white Gaussian noise and returns channel LLRs `2y/σ²`.
/// A positive infinite SNR yields `±NOISELESS_LLR`.
pub fn awgn_llr<R: Rng + ?Sized>(x: &[f64], es_n0_db: f64, rng: &mut R) -> Vec<f64> {
    if es_n0_db == f64::INFINITY {
        return x.iter().map(|v| v * NOISELESS_LLR).collect();
    }
    let var = noise_variance(es_n0_db);
    let sigma = var.sqrt();
    x.iter()
        .map(|&v| {
            let n: f64 = rng.sample(StandardNormal);
            2.0 * (v + sigma * n) / var
        })
        .collect()
}

/// Pure function of `(x, es_n0_db, seed, frame_index)`.
pub fn awgn_llr_seeded(x: &[f64], es_n0_db: f64, seed: u64, frame_index: u64) -> Vec<f64> {
    awgn_llr(x, es_n0_db, &mut frame_rng(seed, frame_index))
}
