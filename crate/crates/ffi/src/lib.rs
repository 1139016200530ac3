//! C ABI over `fsl-polar`.
//!
//! Codes and decoders are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`FslpStatus`]; on failure the
//! message is available from [`fslp_last_error_message`] on the same thread.
//! Bits cross the boundary as one `uint8_t` (0 or 1) per bit.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use fsl_polar::construct::{adjust_info_bits, hybrid_spec};
use fsl_polar::fsl::FslParams;
use fsl_polar::polar::{awgn_llr_seeded, modulate_bpsk};
use fsl_polar::sim::{AnyDecoder, DecoderConfig};
use fsl_polar::syndrome::TableCache;
use fsl_polar::{CodeSpec, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FslpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    Infeasible = 4,
    TableError = 5,
    Io = 6,
    Panic = 7,
}

/// FSL decoder parameters; start from [`fslp_fsl_params_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FslpFslParams {
    pub block_len: usize,
    pub flip_t: usize,
    pub l_sd: usize,
    pub list_size: usize,
    pub saturation_llr: f64,
    pub exhaustive_guard: usize,
}

impl From<FslParams> for FslpFslParams {
    fn from(p: FslParams) -> Self {
        FslpFslParams {
            block_len: p.block_len,
            flip_t: p.flip_t,
            l_sd: p.l_sd,
            list_size: p.list_size,
            saturation_llr: p.saturation_llr,
            exhaustive_guard: p.exhaustive_guard,
        }
    }
}

impl From<FslpFslParams> for FslParams {
    fn from(p: FslpFslParams) -> Self {
        FslParams {
            block_len: p.block_len,
            flip_t: p.flip_t,
            l_sd: p.l_sd,
            list_size: p.list_size,
            saturation_llr: p.saturation_llr,
            exhaustive_guard: p.exhaustive_guard,
        }
    }
}

/// A constructed code.
pub struct FslpCode {
    spec: CodeSpec,
}

/// An SCL or FSL decoder bound to one code.
pub struct FslpDecoder {
    inner: AnyDecoder,
    n: usize,
    k: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FslpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) | Error::ExhaustiveTooLarge { .. } => FslpStatus::InvalidArgument,
            Error::Infeasible(_) => FslpStatus::Infeasible,
            Error::TableNotBuilt { .. } | Error::VersionMismatch { .. } | Error::Checksum { .. } | Error::Format(_) => {
                FslpStatus::TableError
            }
            Error::Io(_) | Error::Json(_) => FslpStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FslpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FslpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            FslpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            FslpStatus::Panic
        }
    }
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return if len == 0 { Ok(&[]) } else { Err(null(what)) };
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return if len == 0 { Ok(&mut []) } else { Err(null(what)) };
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

fn check_len(got: usize, want: usize, what: &str) -> Result<(), Failure> {
    if got != want {
        return Err(Failure(FslpStatus::LengthMismatch, format!("{what}: expected {want} entries, got {got}")));
    }
    Ok(())
}

unsafe fn store_code(out: *mut *mut FslpCode, spec: CodeSpec) -> Result<(), Failure> {
    *out = Box::into_raw(Box::new(FslpCode { spec }));
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fslp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fslp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Polarization-weight code of length `n` with `k` payload bits and a
/// `crc_len`-bit CRC.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_code_new_pw(n: usize, k: usize, crc_len: usize, out: *mut *mut FslpCode) -> FslpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        store_code(out, CodeSpec::pw(n, k, crc_len)?)
    })
}

/// PW code whose information bits are re-distributed so that no
/// length-`block_len` block has `k_low < K_B < k_high`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_code_new_adjusted(
    n: usize,
    k: usize,
    crc_len: usize,
    block_len: usize,
    k_low: usize,
    k_high: usize,
    out: *mut *mut FslpCode,
) -> FslpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        store_code(out, adjust_info_bits(&CodeSpec::pw(n, k, crc_len)?, block_len, k_low, k_high)?)
    })
}

/// Hybrid code: distance-optimized length-16 outer codes under the polar
/// transform. Decode it with an FSL decoder.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_code_new_hybrid(n: usize, k: usize, crc_len: usize, out: *mut *mut FslpCode) -> FslpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        store_code(out, hybrid_spec(n, k, crc_len)?)
    })
}

/// # Safety
/// `code` must be null or a handle from an `fslp_code_new_*` call that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn fslp_code_free(code: *mut FslpCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Code length `N`; 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_code_length(code: *const FslpCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.n_mother())
}

/// Payload length `K` (CRC excluded); 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_code_payload_bits(code: *const FslpCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.k_payload())
}

/// Attaches the CRC to `payload` (`K` bits) and encodes it into
/// `codeword` (`N` bits).
///
/// # Safety
/// `payload` and `codeword` must point to `payload_len` and `codeword_len`
/// valid elements.
#[no_mangle]
pub unsafe extern "C" fn fslp_encode(
    code: *const FslpCode,
    payload: *const u8,
    payload_len: usize,
    codeword: *mut u8,
    codeword_len: usize,
) -> FslpStatus {
    guard(|| {
        let code = code.as_ref().ok_or_else(|| null("code"))?;
        let payload = input(payload, payload_len, "payload")?;
        let codeword = output(codeword, codeword_len, "codeword")?;
        check_len(payload_len, code.spec.k_payload(), "payload")?;
        check_len(codeword_len, code.spec.n_mother(), "codeword")?;
        if payload.iter().any(|&b| b > 1) {
            return Err(Failure(FslpStatus::InvalidArgument, "payload bits must be 0 or 1".into()));
        }
        codeword.copy_from_slice(&code.spec.encode_payload(payload)?);
        Ok(())
    })
}

/// BPSK-modulates `codeword`, adds seeded white Gaussian noise at
/// `es_n0_db` and writes channel LLRs (`2y/σ²`). `INFINITY` gives
/// noiseless LLRs. The output depends only on the inputs.
///
/// # Safety
/// `codeword` and `llrs` must each point to `len` valid elements.
#[no_mangle]
pub unsafe extern "C" fn fslp_awgn_llr(
    codeword: *const u8,
    es_n0_db: f64,
    seed: u64,
    frame_index: u64,
    llrs: *mut f64,
    len: usize,
) -> FslpStatus {
    guard(|| {
        let cw = input(codeword, len, "codeword")?;
        let out = output(llrs, len, "llrs")?;
        if es_n0_db.is_nan() {
            return Err(Failure(FslpStatus::InvalidArgument, "SNR is NaN".into()));
        }
        out.copy_from_slice(&awgn_llr_seeded(&modulate_bpsk(cw), es_n0_db, seed, frame_index));
        Ok(())
    })
}

/// Recommended parameters for `block_len` 8 or 16 (`L = 8`).
#[no_mangle]
pub extern "C" fn fslp_fsl_params_default(block_len: usize) -> FslpFslParams {
    FslParams::for_block_len(block_len).into()
}

unsafe fn store_decoder(code: *const FslpCode, cfg: DecoderConfig, out: *mut *mut FslpDecoder) -> Result<(), Failure> {
    let code = code.as_ref().ok_or_else(|| null("code"))?;
    if out.is_null() {
        return Err(null("out"));
    }
    let inner = AnyDecoder::new(&code.spec, &cfg, &TableCache::from_env())?;
    let dec = FslpDecoder { inner, n: code.spec.n_mother(), k: code.spec.k_payload() };
    *out = Box::into_raw(Box::new(dec));
    Ok(())
}

/// CRC-aided bit-level SCL decoder with list size `list_size`.
///
/// # Safety
/// `code` must be a live handle and `out` valid storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_scl_decoder_new(
    code: *const FslpCode,
    list_size: usize,
    out: *mut *mut FslpDecoder,
) -> FslpStatus {
    guard(|| store_decoder(code, DecoderConfig::scl(list_size), out))
}

/// FSL decoder; syndrome tables are built (or loaded from
/// `$FSLPOLAR_TABLE_CACHE`) here.
///
/// # Safety
/// `code` must be a live handle, `params` null (defaults for B = 16) or
/// valid, and `out` valid storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_fsl_decoder_new(
    code: *const FslpCode,
    params: *const FslpFslParams,
    out: *mut *mut FslpDecoder,
) -> FslpStatus {
    guard(|| {
        let params: FslParams = params.as_ref().map_or_else(FslParams::default, |&p| p.into());
        store_decoder(code, DecoderConfig::fsl(params), out)
    })
}

/// # Safety
/// `decoder` must be null or a live decoder handle.
#[no_mangle]
pub unsafe extern "C" fn fslp_decoder_free(decoder: *mut FslpDecoder) {
    if !decoder.is_null() {
        drop(Box::from_raw(decoder));
    }
}

/// Decodes `N` channel LLRs (positive favours bit 0) into `K` payload
/// bits. `crc_ok` and `path_metric` may be null.
///
/// # Safety
/// `llrs` and `payload` must point to `llr_len` and `payload_len` valid
/// elements; the optional outputs must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn fslp_decode(
    decoder: *mut FslpDecoder,
    llrs: *const f64,
    llr_len: usize,
    payload: *mut u8,
    payload_len: usize,
    crc_ok: *mut bool,
    path_metric: *mut f64,
) -> FslpStatus {
    guard(|| {
        let dec = decoder.as_mut().ok_or_else(|| null("decoder"))?;
        let llrs = input(llrs, llr_len, "llrs")?;
        let payload = output(payload, payload_len, "payload")?;
        check_len(llr_len, dec.n, "llrs")?;
        check_len(payload_len, dec.k, "payload")?;
        if llrs.iter().any(|x| x.is_nan()) {
            return Err(Failure(FslpStatus::InvalidArgument, "LLRs contain NaN".into()));
        }
        let out = dec.inner.decode(llrs)?;
        payload.copy_from_slice(&out.payload);
        if !crc_ok.is_null() {
            *crc_ok = out.crc_ok;
        }
        if !path_metric.is_null() {
            *path_metric = out.final_pm;
        }
        Ok(())
    })
}
