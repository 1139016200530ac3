use fsl_polar::polar::{construct_pw, crc_attach, crc_check, polar_transform, pw_order, CodeSpec};
use proptest::prelude::*;

/// `F^{⊗n}` built as an explicit Kronecker power.
fn kronecker_power(n: usize) -> Vec<Vec<u8>> {
    let mut g = vec![vec![1u8]];
    for _ in 0..n.trailing_zeros() {
        let m = g.len();
        let mut next = vec![vec![0u8; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                next[i][j] = g[i][j];
                next[i + m][j] = g[i][j];
                next[i + m][j + m] = g[i][j];
            }
        }
        g = next;
    }
    g
}

fn mat_mul(u: &[u8], g: &[Vec<u8>]) -> Vec<u8> {
    (0..u.len()).map(|j| (0..u.len()).fold(0, |acc, i| acc ^ (u[i] & g[i][j]))).collect()
}

fn bits(max_log: u32) -> impl Strategy<Value = Vec<u8>> {
    (1..=max_log).prop_flat_map(|m| proptest::collection::vec(0u8..2, 1usize << m))
}

proptest! {
    #[test]
    fn transform_matches_kronecker_matrix(u in bits(8)) {
        prop_assert_eq!(polar_transform(&u).unwrap(), mat_mul(&u, &kronecker_power(u.len())));
    }

    #[test]
    fn transform_is_an_involution(u in bits(8)) {
        prop_assert_eq!(polar_transform(&polar_transform(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn transform_is_linear((a, b) in (1u32..=8).prop_flat_map(|m| {
        let v = proptest::collection::vec(0u8..2, 1usize << m);
        (v.clone(), v)
    })) {
        let sum: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
        let ta = polar_transform(&a).unwrap();
        let tb = polar_transform(&b).unwrap();
        let expect: Vec<u8> = ta.iter().zip(&tb).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(polar_transform(&sum).unwrap(), expect);
    }

    #[test]
    fn crc_round_trip_and_single_flips(payload in proptest::collection::vec(0u8..2, 1..300), len in prop::sample::select(vec![8usize, 16, 24])) {
        let framed = crc_attach(&payload, payload.len(), len).unwrap();
        prop_assert_eq!(framed.len(), payload.len() + len);
        prop_assert!(crc_check(&framed, len).unwrap());
        for i in 0..framed.len() {
            let mut bad = framed.clone();
            bad[i] ^= 1;
            prop_assert!(!crc_check(&bad, len).unwrap(), "flip at {} undetected", i);
        }
    }
}

#[test]
fn pw_info_sets_are_nested() {
    for log_n in 1..=10 {
        let n = 1usize << log_n;
        let mut prev: Vec<usize> = Vec::new();
        for k in 1..=n {
            let set = construct_pw(n, k).unwrap();
            assert_eq!(set.len(), k);
            let mut member = vec![false; n];
            set.iter().for_each(|&i| member[i] = true);
            assert!(prev.iter().all(|&i| member[i]), "N={n} k={k}");
            prev = set;
        }
        let order = pw_order(n);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..n).collect::<Vec<_>>());
    }
}

#[test]
fn crc16_ccitt_false_check_value() {
    // "123456789" as MSB-first bits
    let bits: Vec<u8> = b"123456789".iter().flat_map(|&c| (0..8).rev().map(move |i| c >> i & 1)).collect();
    let framed = crc_attach(&bits, bits.len(), 16).unwrap();
    let crc = framed[bits.len()..].iter().fold(0u32, |acc, &b| acc << 1 | b as u32);
    assert_eq!(crc, 0x29B1);
}

#[test]
fn systematic_round_trip_through_spec() {
    let spec = CodeSpec::pw(256, 100, 16).unwrap();
    let payload: Vec<u8> = (0..100).map(|i| (i % 3 == 1) as u8).collect();
    let cw = spec.encode_payload(&payload).unwrap();
    let info = spec.extract_info(&cw);
    assert_eq!(&info[..100], &payload[..]);
    assert!(spec.check_crc(&info));
}
