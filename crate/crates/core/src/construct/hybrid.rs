use std::fmt::Write as _;

use super::outer::{default_family, OuterCode, OuterFamily, HYBRID_BLOCK_LEN};
use crate::polar::{construct_pw, partial_transform, CodeSpec, Construction};
use crate::{Error, Result};

/// Hybrid-polar code: PW construction fixes every block's rate, then each
/// length-16 block gets the default outer family for its rate.
pub fn hybrid_spec(n_mother: usize, k_payload: usize, crc_len: usize) -> Result<CodeSpec> {
    let info = construct_pw(n_mother, k_payload + crc_len)?;
    let block_len = HYBRID_BLOCK_LEN;
    if n_mother < block_len {
        return Err(Error::invalid(format!("hybrid codes need N >= {block_len}")));
    }
    let mut counts = vec![0usize; n_mother / block_len];
    for &i in &info {
        counts[i / block_len] += 1;
    }
    let families = counts.into_iter().map(default_family).collect();
    CodeSpec::new(n_mother, k_payload, crc_len, info, Construction::Hybrid { block_len, families })
}

/// Block-wise encoding: every length-`block_len` block multiplies its
/// information bits by its outer generator, the outer codewords are
/// concatenated, and the inner polar stages `log2 B .. log2 N` are applied.
/// Non-hybrid specs use polar outer codes, which reproduces plain polar
/// encoding.
pub fn hybrid_polar_encode(info: &[u8], spec: &CodeSpec, block_len: usize) -> Result<Vec<u8>> {
    if info.len() != spec.k_total() {
        return Err(Error::invalid("information vector length mismatch"));
    }
    if !block_len.is_power_of_two() || block_len > spec.n_mother() || block_len > 32 {
        return Err(Error::invalid(format!("block length {block_len} unsupported")));
    }
    let codes: Vec<OuterCode> = match spec.outer_codes() {
        Some((b, codes)) if b == block_len => codes,
        Some((b, _)) => {
            return Err(Error::invalid(format!("spec uses outer blocks of {b}, not {block_len}")))
        }
        None => (0..spec.n_mother() / block_len)
            .map(|b| {
                let lo = b * block_len;
                let pos: Vec<usize> = spec
                    .info_set()
                    .iter()
                    .filter(|&&i| i >= lo && i < lo + block_len)
                    .map(|&i| i - lo)
                    .collect();
                OuterCode::polar_from_positions(&pos, block_len)
            })
            .collect(),
    };
    let mut v = Vec::with_capacity(spec.n_mother());
    let mut cursor = 0;
    for code in &codes {
        let msg = (0..code.k_local).fold(0u32, |m, r| m | ((info[cursor + r] & 1) as u32) << r);
        cursor += code.k_local;
        let cw = code.encode_word(msg);
        v.extend((0..block_len).map(|j| (cw >> j & 1) as u8));
    }
    partial_transform(&mut v, block_len.trailing_zeros() as usize..spec.log_n());
    Ok(v)
}

/// Human-readable, diffable description of a construction.
pub fn describe(spec: &CodeSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n {}", spec.n_mother());
    let _ = writeln!(s, "k {}", spec.k_payload());
    let _ = writeln!(s, "crc {}", spec.crc_len());
    match spec.construction() {
        Construction::Pw => {
            let _ = writeln!(s, "construction pw");
        }
        Construction::Adjusted { block_len, k_low, k_high } => {
            let _ = writeln!(s, "construction adjusted {block_len} {k_low} {k_high}");
        }
        Construction::Hybrid { block_len, families } => {
            let names: Vec<&str> = families.iter().map(|f| f.name()).collect();
            let _ = writeln!(s, "construction hybrid {block_len}");
            let _ = writeln!(s, "families {}", names.join(" "));
        }
    }
    let idx: Vec<String> = spec.info_set().iter().map(usize::to_string).collect();
    let _ = writeln!(s, "info {}", idx.join(" "));
    s
}

pub fn parse_descriptor(text: &str) -> Result<CodeSpec> {
    let bad = |m: &str| Error::invalid(format!("descriptor: {m}"));
    let num = |t: Option<&str>| -> Result<usize> {
        t.ok_or_else(|| bad("missing number"))?
            .parse()
            .map_err(|_| bad("not a number"))
    };
    let (mut n, mut k, mut crc, mut info) = (None, None, None, None);
    let mut construction = None;
    let mut families: Option<Vec<OuterFamily>> = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("n") => n = Some(num(it.next())?),
            Some("k") => k = Some(num(it.next())?),
            Some("crc") => crc = Some(num(it.next())?),
            Some("info") => info = Some(it.map(|t| num(Some(t))).collect::<Result<Vec<_>>>()?),
            Some("families") => {
                families = Some(
                    it.map(|t| OuterFamily::from_name(t).ok_or_else(|| bad("unknown family")))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            Some("construction") => {
                construction = Some(match it.next() {
                    Some("pw") => (0, 0, 0, 0),
                    Some("adjusted") => (1, num(it.next())?, num(it.next())?, num(it.next())?),
                    Some("hybrid") => (2, num(it.next())?, 0, 0),
                    _ => return Err(bad("unknown construction")),
                })
            }
            _ => return Err(bad(&format!("unexpected line `{line}`"))),
        }
    }
    let construction = match construction.ok_or_else(|| bad("missing construction"))? {
        (0, ..) => Construction::Pw,
        (1, block_len, k_low, k_high) => Construction::Adjusted { block_len, k_low, k_high },
        (_, block_len, ..) => Construction::Hybrid {
            block_len,
            families: families.ok_or_else(|| bad("missing families"))?,
        },
    };
    CodeSpec::new(
        n.ok_or_else(|| bad("missing n"))?,
        k.ok_or_else(|| bad("missing k"))?,
        crc.ok_or_else(|| bad("missing crc"))?,
        info.ok_or_else(|| bad("missing info"))?,
        construction,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::combine;
    use crate::polar::polar_transform;

    fn bits(seed: u64, n: usize) -> Vec<u8> {
        let mut s = seed | 1;
        (0..n)
            .map(|_| {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s & 1) as u8
            })
            .collect()
    }

    #[test]
    fn polar_outer_codes_reproduce_polar_encoding() {
        let spec = CodeSpec::pw(256, 100, 16).unwrap();
        for seed in 0..10 {
            let info = bits(seed + 1, spec.k_total());
            let mut u = vec![0u8; 256];
            for (&p, &b) in spec.info_set().iter().zip(&info) {
                u[p] = b;
            }
            assert_eq!(hybrid_polar_encode(&info, &spec, 16).unwrap(), polar_transform(&u).unwrap());
            assert_eq!(hybrid_polar_encode(&info, &spec, 8).unwrap(), polar_transform(&u).unwrap());
        }
    }

    #[test]
    fn zero_payload_gives_zero_codeword() {
        let spec = hybrid_spec(256, 128, 16).unwrap();
        let cw = hybrid_polar_encode(&vec![0; spec.k_total()], &spec, 16).unwrap();
        assert!(cw.iter().all(|&b| b == 0));
    }

    #[test]
    fn single_block_is_the_outer_codeword() {
        let info_set = construct_pw(16, 6).unwrap();
        let spec = CodeSpec::new(
            16,
            6,
            0,
            info_set,
            Construction::Hybrid { block_len: 16, families: vec![OuterFamily::Ebch] },
        )
        .unwrap();
        let g = OuterCode::for_family(OuterFamily::Ebch, 6, 16).unwrap();
        for msg in 0..64u32 {
            let info: Vec<u8> = (0..6).map(|r| (msg >> r & 1) as u8).collect();
            let cw = hybrid_polar_encode(&info, &spec, 16).unwrap();
            let word = combine(&g.generator, msg);
            let expect: Vec<u8> = (0..16).map(|j| (word >> j & 1) as u8).collect();
            assert_eq!(cw, expect);
        }
    }

    #[test]
    fn hybrid_encoder_is_injective_and_matches_spec_encoder() {
        let spec = hybrid_spec(64, 24, 0).unwrap();
        // composite generator: images of unit information vectors
        let k = spec.k_total();
        let mut rows = Vec::new();
        for i in 0..k {
            let mut info = vec![0u8; k];
            info[i] = 1;
            let cw = hybrid_polar_encode(&info, &spec, 16).unwrap();
            assert_eq!(cw, spec.encode_info(&info).unwrap());
            rows.push(cw);
        }
        // rank over GF(2) of a 64-column matrix, two u32 halves at a time
        let mut basis: Vec<u64> = Vec::new();
        for r in rows {
            let mut x = r.iter().enumerate().fold(0u64, |m, (j, &b)| m | (b as u64) << j);
            for &b in &basis {
                x = x.min(x ^ b);
            }
            if x != 0 {
                basis.push(x);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        assert_eq!(basis.len(), k);
        let info = bits(77, k);
        let cw = spec.encode_info(&info).unwrap();
        assert_eq!(spec.extract_info(&cw), info);
    }

    #[test]
    fn descriptor_round_trip() {
        for spec in [
            CodeSpec::pw(128, 40, 16).unwrap(),
            hybrid_spec(256, 128, 16).unwrap(),
            super::super::adjust_info_bits(&CodeSpec::pw(256, 128, 16).unwrap(), 16, 5, 9).unwrap(),
        ] {
            assert_eq!(parse_descriptor(&describe(&spec)).unwrap(), spec);
        }
        assert!(parse_descriptor("n 8\nk 2\n").is_err());
    }
}
