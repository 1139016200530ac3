use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fsl_polar_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(fslp_last_error_message()) }.to_string_lossy().into_owned()
}

fn pw(n: usize, k: usize, crc: usize) -> *mut FslpCode {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { fslp_code_new_pw(n, k, crc, &mut code) }, FslpStatus::Ok);
    code
}

unsafe fn round_trip(code: *mut FslpCode, dec: *mut FslpDecoder, es_n0_db: f64) -> (Vec<u8>, Vec<u8>, bool) {
    let n = fslp_code_length(code);
    let k = fslp_code_payload_bits(code);
    let payload: Vec<u8> = (0..k).map(|i| (i * 7 % 5 < 2) as u8).collect();
    let mut cw = vec![0u8; n];
    assert_eq!(fslp_encode(code, payload.as_ptr(), k, cw.as_mut_ptr(), n), FslpStatus::Ok);
    let mut llr = vec![0.0; n];
    assert_eq!(fslp_awgn_llr(cw.as_ptr(), es_n0_db, 9, 0, llr.as_mut_ptr(), n), FslpStatus::Ok);
    let mut out = vec![0u8; k];
    let mut crc_ok = false;
    let mut pm = -1.0;
    assert_eq!(fslp_decode(dec, llr.as_ptr(), n, out.as_mut_ptr(), k, &mut crc_ok, &mut pm), FslpStatus::Ok);
    assert!(pm >= 0.0);
    (payload, out, crc_ok)
}

#[test]
fn encode_decode_through_the_c_abi() {
    unsafe {
        let code = pw(256, 128, 16);
        assert_eq!((fslp_code_length(code), fslp_code_payload_bits(code)), (256, 128));
        let mut scl = ptr::null_mut();
        assert_eq!(fslp_scl_decoder_new(code, 8, &mut scl), FslpStatus::Ok);
        let params = fslp_fsl_params_default(16);
        assert_eq!((params.flip_t, params.l_sd, params.list_size), (3, 8, 8));
        let mut fsl = ptr::null_mut();
        assert_eq!(fslp_fsl_decoder_new(code, &params, &mut fsl), FslpStatus::Ok);
        for dec in [scl, fsl] {
            let (sent, got, crc_ok) = round_trip(code, dec, 6.0);
            assert_eq!(sent, got);
            assert!(crc_ok);
            let (sent, got, _) = round_trip(code, dec, f64::INFINITY);
            assert_eq!(sent, got);
        }
        fslp_decoder_free(scl);
        fslp_decoder_free(fsl);
        fslp_code_free(code);
    }
}

#[test]
fn other_constructions() {
    unsafe {
        let mut adj = ptr::null_mut();
        assert_eq!(fslp_code_new_adjusted(1024, 512, 16, 16, 5, 9, &mut adj), FslpStatus::Ok);
        let mut hyb = ptr::null_mut();
        assert_eq!(fslp_code_new_hybrid(256, 128, 16, &mut hyb), FslpStatus::Ok);
        let mut fsl = ptr::null_mut();
        assert_eq!(fslp_fsl_decoder_new(hyb, ptr::null(), &mut fsl), FslpStatus::Ok);
        let (sent, got, _) = round_trip(hyb, fsl, f64::INFINITY);
        assert_eq!(sent, got);
        let mut scl = ptr::null_mut();
        assert_eq!(fslp_scl_decoder_new(hyb, 8, &mut scl), FslpStatus::InvalidArgument);
        assert!(scl.is_null());
        fslp_decoder_free(fsl);
        fslp_code_free(adj);
        fslp_code_free(hyb);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(fslp_code_new_pw(1000, 10, 16, &mut code), FslpStatus::InvalidArgument);
        assert!(code.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(fslp_code_new_pw(64, 10, 16, ptr::null_mut()), FslpStatus::NullPointer);
        assert_eq!(fslp_code_new_adjusted(64, 20, 0, 16, 0, 16, &mut code), FslpStatus::Infeasible);

        let code = pw(64, 20, 8);
        let payload = [0u8; 20];
        let mut cw = [0u8; 63];
        assert_eq!(fslp_encode(code, payload.as_ptr(), 20, cw.as_mut_ptr(), 63), FslpStatus::LengthMismatch);
        assert!(last_error().contains("codeword"));
        let mut cw = [0u8; 64];
        assert_eq!(fslp_encode(code, payload.as_ptr(), 20, cw.as_mut_ptr(), 64), FslpStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(fslp_encode(code, ptr::null(), 20, cw.as_mut_ptr(), 64), FslpStatus::NullPointer);
        let bad = [2u8; 20];
        assert_eq!(fslp_encode(code, bad.as_ptr(), 20, cw.as_mut_ptr(), 64), FslpStatus::InvalidArgument);

        let mut dec = ptr::null_mut();
        let params = FslpFslParams { block_len: 12, ..fslp_fsl_params_default(16) };
        assert_eq!(fslp_fsl_decoder_new(code, &params, &mut dec), FslpStatus::InvalidArgument);
        assert_eq!(fslp_scl_decoder_new(code, 0, &mut dec), FslpStatus::InvalidArgument);
        assert_eq!(fslp_scl_decoder_new(code, 4, &mut dec), FslpStatus::Ok);
        let llr = [f64::NAN; 64];
        let mut out = [0u8; 20];
        let st = fslp_decode(dec, llr.as_ptr(), 64, out.as_mut_ptr(), 20, ptr::null_mut(), ptr::null_mut());
        assert_eq!(st, FslpStatus::InvalidArgument);
        assert_eq!(
            fslp_decode(ptr::null_mut(), llr.as_ptr(), 64, out.as_mut_ptr(), 20, ptr::null_mut(), ptr::null_mut()),
            FslpStatus::NullPointer
        );
        fslp_decoder_free(dec);
        fslp_code_free(code);
        fslp_code_free(ptr::null_mut());
        fslp_decoder_free(ptr::null_mut());
        assert_eq!(fslp_code_length(ptr::null()), 0);
    }
}

#[test]
fn channel_is_deterministic() {
    let cw = [0u8, 1, 1, 0, 1, 0, 0, 0];
    let (mut a, mut b) = ([0.0; 8], [0.0; 8]);
    unsafe {
        assert_eq!(fslp_awgn_llr(cw.as_ptr(), 1.0, 3, 17, a.as_mut_ptr(), 8), FslpStatus::Ok);
        assert_eq!(fslp_awgn_llr(cw.as_ptr(), 1.0, 3, 17, b.as_mut_ptr(), 8), FslpStatus::Ok);
        assert_eq!(a, b);
        assert_eq!(fslp_awgn_llr(cw.as_ptr(), f64::NAN, 3, 17, b.as_mut_ptr(), 8), FslpStatus::InvalidArgument);
        assert_eq!(fslp_awgn_llr(cw.as_ptr(), f64::INFINITY, 0, 0, b.as_mut_ptr(), 8), FslpStatus::Ok);
    }
    assert!(b.iter().zip(&cw).all(|(l, &c)| (*l < 0.0) == (c == 1)));
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(manifest_dir().join("include/fsl_polar.h")).unwrap();
    for name in [
        "typedef struct FslpCode FslpCode",
        "typedef struct FslpDecoder FslpDecoder",
        "FSLP_STATUS_OK = 0",
        "FSLP_STATUS_PANIC = 7",
        "fslp_code_new_pw(",
        "fslp_code_new_adjusted(",
        "fslp_code_new_hybrid(",
        "fslp_code_free(",
        "fslp_encode(",
        "fslp_scl_decoder_new(",
        "fslp_fsl_decoder_new(",
        "fslp_decode(",
        "fslp_decoder_free(",
        "fslp_awgn_llr(",
        "fslp_last_error_message(",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

const C_SMOKE: &str = r#"
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "fsl_polar.h"

int main(void) {
    FslpCode *code = NULL;
    if (fslp_code_new_pw(128, 64, 16, &code) != FSLP_STATUS_OK) return 10;
    uint8_t payload[64], cw[128], out[64];
    double llr[128];
    for (int i = 0; i < 64; i++) payload[i] = (uint8_t)((i * 5) % 3 == 0);
    if (fslp_encode(code, payload, 64, cw, 128) != FSLP_STATUS_OK) return 11;
    if (fslp_awgn_llr(cw, INFINITY, 1, 0, llr, 128) != FSLP_STATUS_OK) return 12;
    FslpFslParams p = fslp_fsl_params_default(8);
    FslpDecoder *dec = NULL;
    if (fslp_fsl_decoder_new(code, &p, &dec) != FSLP_STATUS_OK) return 13;
    bool ok = false;
    if (fslp_decode(dec, llr, 128, out, 64, &ok, NULL) != FSLP_STATUS_OK) return 14;
    if (!ok || memcmp(out, payload, 64) != 0) return 15;
    if (fslp_decode(dec, llr, 127, out, 64, NULL, NULL) != FSLP_STATUS_LENGTH_MISMATCH) return 16;
    if (strlen(fslp_last_error_message()) == 0) return 17;
    fslp_decoder_free(dec);
    fslp_code_free(code);
    printf("ok %s\n", fslp_version());
    return 0;
}
"#;

/// Directory holding the cdylib built alongside this test binary.
fn lib_dir() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?.to_path_buf();
    let so = if cfg!(target_os = "macos") { "libfsl_polar_ffi.dylib" } else { "libfsl_polar_ffi.so" };
    dir.join(so).exists().then_some(dir)
}

fn have(tool: &str) -> bool {
    Command::new(tool).arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
#[cfg(unix)]
fn c_program_links_against_the_library() {
    let (Some(dir), true) = (lib_dir(), have("cc")) else {
        eprintln!("skipping: cdylib or C compiler not available");
        return;
    };
    let tmp = std::env::temp_dir().join(format!("fslp-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("smoke.c");
    std::fs::write(&src, C_SMOKE).unwrap();
    let exe = tmp.join("smoke");
    let include: &Path = &manifest_dir().join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(include)
        .arg("-L")
        .arg(&dir)
        .args(["-lfsl_polar_ffi", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).env("LD_LIBRARY_PATH", &dir).output().unwrap();
    assert!(out.status.success(), "C smoke test exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
    let _ = std::fs::remove_dir_all(&tmp);
}
