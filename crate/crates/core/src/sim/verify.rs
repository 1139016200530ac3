use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{spectrum_mismatch, weight_spectrum, OuterCode, REFERENCE_SPECTRA};
use crate::fsl::{spc_patterns, R1_PATTERNS};
use crate::polar::{awgn_llr_seeded, frame_rng, modulate_bpsk, CodeSpec};
use crate::scl::SclDecoder;
use crate::syndrome::SyndromeTable;

/// Published patterns for `B = 8`, frozen `{0, 1}`, `L_sd = 4`, one row per
/// syndrome.
pub const GOLDEN_B8_TABLE: [[u32; 4]; 4] = [
    [0x00, 0x05, 0x11, 0x41],
    [0x01, 0x04, 0x10, 0x40],
    [0x03, 0x09, 0x21, 0x81],
    [0x02, 0x08, 0x20, 0x80],
];

/// Block length of the pattern-set oracles.
pub const ORACLE_BLOCK: usize = 16;

/// Small polar codes `(N, K)` checked against maximum-likelihood search.
pub const ML_CODES: [(usize, usize); 6] = [(4, 2), (8, 3), (8, 4), (16, 5), (16, 8), (16, 10)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_s: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Random magnitude vectors per pattern-set oracle.
    pub prop_samples: usize,
    /// Noisy frames in the list-vs-ML check, spread over `ML_CODES`.
    pub ml_frames: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { prop_samples: 1000, ml_frames: 10_000, seed: 2024 }
    }
}

fn timed(name: &str, check: impl FnOnce() -> Result<String, String>) -> CheckResult {
    let t0 = Instant::now();
    let r = check();
    let elapsed_s = t0.elapsed().as_secs_f64();
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult { name: name.into(), passed, detail, elapsed_s }
}

/// `ORACLE_BLOCK` strictly increasing positive magnitudes. Odd samples are
/// spread log-uniformly over four decades.
pub fn sorted_magnitudes(seed: u64, sample: u64) -> Vec<f64> {
    let mut rng = frame_rng(seed, sample);
    loop {
        let mut m: Vec<f64> = (0..ORACLE_BLOCK)
            .map(|_| {
                let u: f64 = rng.random();
                if sample.is_multiple_of(2) { u } else { 10f64.powf(4.0 * u - 2.0) }
            })
            .collect();
        m.sort_by(f64::total_cmp);
        if m[0] > 0.0 && m.windows(2).all(|w| w[0] < w[1]) {
            return m;
        }
    }
}

/// The `count` smallest flip costs over every mask whose weight parity is
/// `parity` (all masks when `None`), found by brute force.
pub fn brute_force_smallest(mags: &[f64], parity: Option<u32>, count: usize) -> Vec<f64> {
    let n = 1usize << mags.len();
    let mut sums = vec![0.0f64; n];
    for m in 1..n {
        sums[m] = sums[m & (m - 1)] + mags[m.trailing_zeros() as usize];
    }
    let mut legal: Vec<f64> =
        (0..n).filter(|&m| parity.is_none_or(|p| (m as u32).count_ones() & 1 == p)).map(|m| sums[m]).collect();
    let count = count.min(legal.len());
    if count < legal.len() {
        legal.select_nth_unstable_by(count, f64::total_cmp);
    }
    legal.truncate(count);
    legal.sort_by(f64::total_cmp);
    legal
}

fn pattern_smallest(mags: &[f64], set: &[&[usize]], count: usize) -> Vec<f64> {
    let mut d: Vec<f64> = set.iter().map(|p| p.iter().map(|&r| mags[r]).sum()).collect();
    d.sort_by(f64::total_cmp);
    d.truncate(count);
    d
}

fn same_values(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0))
}

/// The 8 smallest increments of a sorted magnitude vector, compared
/// between all flips of the block and the 13 rate-1 patterns. `parity`
/// selects the SPC variant (checksum 0 or 1) instead.
pub fn pattern_set_violation(mags: &[f64], parity: Option<u32>) -> Option<(Vec<f64>, Vec<f64>)> {
    let set: &[&[usize]] = match parity {
        None => &R1_PATTERNS,
        Some(c) => spc_patterns(c as u8),
    };
    let want = brute_force_smallest(mags, parity, 8);
    let got = pattern_smallest(mags, set, 8);
    (!same_values(&want, &got)).then_some((want, got))
}

fn oracle(opts: &VerifyOptions, parities: &[Option<u32>]) -> Result<String, String> {
    let bad: Vec<String> = (0..opts.prop_samples as u64)
        .into_par_iter()
        .flat_map_iter(|s| {
            let mags = sorted_magnitudes(opts.seed, s);
            parities
                .iter()
                .filter_map(|&p| pattern_set_violation(&mags, p).map(|(w, g)| format!("sample {s} parity {p:?}: brute {w:?} vs patterns {g:?}")))
                .collect::<Vec<_>>()
        })
        .collect();
    match bad.first() {
        None => Ok(format!("{} samples, 0 violations", opts.prop_samples)),
        Some(first) => Err(format!("{} violations; first: {first}", bad.len())),
    }
}

pub fn check_rate1_patterns(opts: &VerifyOptions) -> CheckResult {
    timed("rate-1 pattern set", || oracle(opts, &[None]))
}

pub fn check_spc_patterns(opts: &VerifyOptions) -> CheckResult {
    timed("SPC pattern sets", || oracle(opts, &[Some(0), Some(1)]))
}

/// Row-by-row comparison with `GOLDEN_B8_TABLE`; every pattern must also map to
/// its own row under `checks`.
pub fn golden_table_mismatches(rows: &[Vec<u32>], checks: &[u32]) -> Vec<String> {
    let mut out = Vec::new();
    if rows.len() != GOLDEN_B8_TABLE.len() {
        out.push(format!("expected {} rows, found {}", GOLDEN_B8_TABLE.len(), rows.len()));
    }
    for (d, (row, want)) in rows.iter().zip(&GOLDEN_B8_TABLE).enumerate() {
        if row.as_slice() != want {
            out.push(format!("row {d:02b}: {row:02x?} != {want:02x?}"));
        }
        for &e in row {
            let s = crate::syndrome::syndrome_word(checks, e);
            if s != d as u32 {
                out.push(format!("row {d:02b}: pattern {e:02x} has syndrome {s:02b}"));
            }
        }
    }
    out
}

pub fn check_golden_table() -> CheckResult {
    timed("syndrome table golden", || {
        let t = SyndromeTable::build(8, 0b11, 4).map_err(|e| e.to_string())?;
        let rows: Vec<Vec<u32>> = (0..t.row_count() as u32).map(|d| t.row(d).to_vec()).collect();
        let bad = golden_table_mismatches(&rows, t.checks());
        if bad.is_empty() {
            Ok("16 patterns match".into())
        } else {
            Err(bad.join("; "))
        }
    })
}

pub fn check_spectra() -> CheckResult {
    timed("outer-code spectra", || {
        let mut bad = Vec::new();
        for r in REFERENCE_SPECTRA {
            let code = OuterCode::for_family(r.family, r.k_local, 16).map_err(|e| e.to_string())?;
            let spec = weight_spectrum(&code).map_err(|e| e.to_string())?;
            if let Some(w) = spectrum_mismatch(r, &spec) {
                bad.push(format!("{} K={} differs at weight {w}", r.family.name(), r.k_local));
            }
        }
        if bad.is_empty() {
            Ok(format!("{} rows match", REFERENCE_SPECTRA.len()))
        } else {
            Err(bad.join("; "))
        }
    })
}

/// Smallest `Σ |α_j| [c_j ≠ hard_j]` over every codeword of `spec`.
pub fn ml_metric(spec: &CodeSpec, llrs: &[f64]) -> f64 {
    let k = spec.k_total();
    (0u32..1 << k)
        .map(|msg| {
            let info: Vec<u8> = (0..k).map(|i| (msg >> i & 1) as u8).collect();
            let cw = spec.encode_info(&info).expect("info length matches");
            cw.iter().zip(llrs).filter(|(&c, &a)| c != (a < 0.0) as u8).map(|(_, a)| a.abs()).sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Best list metric against exhaustive ML on noisy frames, `L = 2^K`.
pub fn list_vs_ml_mismatches(frames: usize, seed: u64) -> Vec<String> {
    let specs: Vec<CodeSpec> = ML_CODES.iter().map(|&(n, k)| CodeSpec::pw(n, k, 0).expect("valid small code")).collect();
    (0..frames as u64)
        .into_par_iter()
        .map_init(
            || specs.iter().map(|s| SclDecoder::new(s, 1 << s.k_total()).expect("decoder")).collect::<Vec<_>>(),
            |decs, f| {
                let c = f as usize % specs.len();
                let spec = &specs[c];
                let mut rng = frame_rng(seed, f);
                let info: Vec<u8> = (0..spec.k_total()).map(|_| rng.random::<bool>() as u8).collect();
                let es = rng.random_range(-2.0..4.0);
                let llr = awgn_llr_seeded(&modulate_bpsk(&spec.encode_info(&info).ok()?), es, seed ^ 0x5eed, f);
                let best = decs[c].decode(&llr).ok()?.paths[0].path_metric;
                let ml = ml_metric(spec, &llr);
                ((best - ml).abs() > 1e-9 * ml.max(1.0))
                    .then(|| format!("frame {f} (N={}, K={}): list {best} vs ML {ml}", spec.n_mother(), spec.k_total()))
            },
        )
        .flatten()
        .collect()
}

pub fn check_list_vs_ml(opts: &VerifyOptions) -> CheckResult {
    timed("list decoder vs ML", || {
        let bad = list_vs_ml_mismatches(opts.ml_frames, opts.seed);
        match bad.first() {
            None => Ok(format!("{} frames, 0 mismatches", opts.ml_frames)),
            Some(first) => Err(format!("{} mismatches; first: {first}", bad.len())),
        }
    })
}

pub fn run_verify(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        check_rate1_patterns(opts),
        check_spc_patterns(opts),
        check_golden_table(),
        check_spectra(),
        check_list_vs_ml(opts),
    ]
}
