use fsl_polar::construct::{hybrid_outer_generator, hybrid_spec};
use fsl_polar::fsl::{
    block_pm_update, extend_exhaustive, extend_general, extend_r1, extend_spc, hard_decision, spc_patterns,
    FslDecoder, FslParams, SegmentMode, R1_PATTERNS,
};
use fsl_polar::polar::{awgn_llr_seeded, kernel_row, modulate_bpsk, CodeSpec};
use fsl_polar::scl::SclDecoder;
use fsl_polar::syndrome::{SyndromeTable, TableCache};
use proptest::prelude::*;

fn sorted_strict(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(1e-3f64..100.0, len).prop_filter_map("ties", |mut v| {
        v.sort_by(f64::total_cmp);
        v.windows(2).all(|w| w[0] < w[1]).then_some(v)
    })
}

/// The 8 smallest `Σ |α|` over every mask of the given weight parity.
fn eight_smallest(mags: &[f64], parity: Option<u32>) -> Vec<f64> {
    let mut all: Vec<f64> = (0u32..1 << mags.len())
        .filter(|m| parity.is_none_or(|p| m.count_ones() % 2 == p))
        .map(|m| (0..mags.len()).filter(|&j| m >> j & 1 == 1).map(|j| mags[j]).sum())
        .collect();
    all.sort_by(f64::total_cmp);
    all.truncate(8);
    all
}

fn eight_from(mags: &[f64], set: &[&[usize]]) -> Vec<f64> {
    let mut d: Vec<f64> = set.iter().map(|p| p.iter().map(|&r| mags[r]).sum()).collect();
    d.sort_by(f64::total_cmp);
    d.truncate(8);
    d
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

fn random_llrs(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-6.0f64..6.0, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rate1_patterns_hold_the_eight_best(mags in sorted_strict(16)) {
        prop_assert!(close(&eight_smallest(&mags, None), &eight_from(&mags, &R1_PATTERNS)));
    }

    #[test]
    fn spc_patterns_hold_the_eight_best(mags in sorted_strict(16), checksum in 0u32..2) {
        prop_assert!(close(&eight_smallest(&mags, Some(checksum)), &eight_from(&mags, spc_patterns(checksum as u8))));
    }

    #[test]
    fn proof_orderings_hold(m in sorted_strict(16)) {
        let chain = [m[0] + m[1], m[0] + m[2], m[1] + m[2], m[1] + m[3], m[2] + m[3]];
        prop_assert!(chain.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(m[0] + m[1] <= m[0] + m[3] && m[0] + m[3] <= m[1] + m[3]);
        prop_assert!(m[0] + m[1] + m[2] <= m[0] + m[1] + m[3] && m[0] + m[1] + m[3] <= m[0] + m[2] + m[3]);
        prop_assert!(m[0] + m[1] + m[2] <= m[0] + m[1] + m[4]);
        prop_assert!(m[3] <= m[0] + m[3] && m[7] <= m[0] + m[7]);
        // every pattern below is dominated by its rank-lowered neighbours
        for p in R1_PATTERNS {
            for (i, &r) in p.iter().enumerate() {
                if r > 0 && !p.contains(&(r - 1)) {
                    let mut q = p.to_vec();
                    q[i] = r - 1;
                    let s = |x: &[usize]| x.iter().map(|&j| m[j]).sum::<f64>();
                    prop_assert!(s(&q) <= s(p));
                }
            }
        }
    }

    #[test]
    fn pattern_increments_match_recomputation(llrs in random_llrs(16), l in prop::sample::select(vec![1usize, 4, 8, 16])) {
        let raw = hard_decision(&llrs);
        for c in extend_r1(&llrs, l).into_iter().chain(extend_spc(&llrs, l)) {
            let bits: Vec<u8> = (0..16).map(|j| (c.bits >> j & 1) as u8).collect();
            prop_assert!((block_pm_update(0.0, &llrs, &raw, &bits).unwrap() - c.delta).abs() < 1e-9);
        }
        prop_assert!(extend_spc(&llrs, l).iter().all(|c| c.bits.count_ones() % 2 == 0));
    }

    #[test]
    fn other_list_sizes_keep_the_best_flips(llrs in random_llrs(16), l in prop::sample::select(vec![1usize, 2, 4, 16, 32])) {
        let flips = |parity: Option<u32>| -> Vec<f64> {
            let mut all: Vec<f64> = (0u32..1 << 16)
                .filter(|m| parity.is_none_or(|p| m.count_ones() % 2 == p))
                .map(|m| (0..16).filter(|&j| m >> j & 1 == 1).map(|j| llrs[j].abs()).sum())
                .collect();
            all.sort_by(f64::total_cmp);
            all.truncate(l);
            all
        };
        let checksum = hard_decision(&llrs).iter().map(|&b| b as u32).sum::<u32>() % 2;
        let r1: Vec<f64> = extend_r1(&llrs, l).iter().map(|c| c.delta).collect();
        let spc: Vec<f64> = extend_spc(&llrs, l).iter().map(|c| c.delta).collect();
        prop_assert!(close(&r1, &flips(None)));
        prop_assert!(close(&spc, &flips(Some(checksum))));
    }

    #[test]
    fn general_candidates_are_codewords(llrs in random_llrs(16), frozen in any::<u16>(), t in 0usize..4) {
        let frozen = frozen as u32 | 1;
        let k = 16 - frozen.count_ones() as usize;
        prop_assume!(k >= 1);
        let table = SyndromeTable::build(16, frozen, 8).unwrap();
        let raw = hard_decision(&llrs);
        for c in extend_general(&llrs, &table, t, 1e9).unwrap() {
            prop_assert_eq!(table.syndrome(c.bits), 0);
            let bits: Vec<u8> = (0..16).map(|j| (c.bits >> j & 1) as u8).collect();
            let plain = block_pm_update(0.0, &llrs, &raw, &bits).unwrap();
            prop_assert!((c.delta - plain).abs() < 1e-9 || c.delta >= 1e9);
        }
        let gen: Vec<u32> = (0..16).filter(|j| frozen >> j & 1 == 0).map(|j| kernel_row(j, 16)).collect();
        if k <= 10 {
            let all = extend_exhaustive(&llrs, &gen, 10).unwrap();
            prop_assert_eq!(all.len(), 1 << k);
            for c in &all {
                prop_assert_eq!(table.syndrome(c.bits), 0);
                let bits: Vec<u8> = (0..16).map(|j| (c.bits >> j & 1) as u8).collect();
                prop_assert!((block_pm_update(0.0, &llrs, &raw, &bits).unwrap() - c.delta).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn hybrid_block_candidates_are_outer_codewords(llrs in random_llrs(16), k in prop::sample::select(vec![2usize, 3, 4, 6, 7, 9, 10, 12, 13, 14])) {
        let code = hybrid_outer_generator(k);
        let table = SyndromeTable::from_checks(16, &code.parity_checks(), 8).unwrap();
        for c in extend_general(&llrs, &table, 3, 1e9).unwrap() {
            prop_assert!(code.parity_checks().iter().all(|h| (h & c.bits).count_ones() % 2 == 0));
        }
    }
}

fn noisy(spec: &CodeSpec, frame: u64, es: f64) -> (Vec<u8>, Vec<f64>) {
    let payload: Vec<u8> = (0..spec.k_payload()).map(|i| ((i as u64 * 13 + frame * 7) % 5 < 2) as u8).collect();
    let x = modulate_bpsk(&spec.encode_payload(&payload).unwrap());
    (payload, awgn_llr_seeded(&x, es, 77, frame))
}

#[test]
fn two_bit_ml_blocks_match_bitwise_list_decoding() {
    let tables = TableCache::in_memory();
    for (n, k) in [(8usize, 4usize), (16, 6), (16, 9), (16, 11)] {
        let spec = CodeSpec::pw(n, k, 0).unwrap();
        let l = 1usize << k;
        let params = FslParams { list_size: l, ..FslParams::default() };
        let mut ml2 = FslDecoder::with_tables(&spec, &params, SegmentMode::ForcedMl(2), &tables).unwrap();
        assert!(ml2.nodes().iter().all(|d| d.len == 2));
        let mut scl = SclDecoder::new(&spec, l).unwrap();
        for f in 0..300 {
            let (_, llr) = noisy(&spec, f, 0.0);
            let a = ml2.decode(&llr).unwrap();
            let b = scl.decode(&llr).unwrap();
            assert_eq!(a.paths[0].hard_estimates, b.paths[0].hard_estimates, "N={n} frame {f}");
            assert!((a.final_pm - b.final_pm).abs() < 1e-9);
        }
    }
}

#[test]
fn fsl_agrees_with_scl_at_high_snr() {
    let spec = CodeSpec::pw(64, 32, 8).unwrap();
    let tables = TableCache::in_memory();
    for b in [8, 16] {
        let params = FslParams::for_block_len(b);
        let mut fsl = FslDecoder::with_tables(&spec, &params, SegmentMode::for_block_len(b), &tables).unwrap();
        let mut scl = SclDecoder::new(&spec, 8).unwrap();
        let frames = 2000;
        let same = (0..frames)
            .filter(|&f| {
                let (_, llr) = noisy(&spec, f, 4.0);
                fsl.decode(&llr).unwrap().payload == scl.decode(&llr).unwrap().payload
            })
            .count();
        assert!(same * 100 >= frames as usize * 99, "B={b}: {same}/{frames}");
    }
}

#[test]
fn hybrid_codes_decode_cleanly() {
    let spec = hybrid_spec(256, 112, 16).unwrap();
    let mut fsl = FslDecoder::new(&spec, &FslParams::default()).unwrap();
    for f in 0..50 {
        let (payload, llr) = noisy(&spec, f, 8.0);
        assert_eq!(fsl.decode(&llr).unwrap().payload, payload);
    }
}
