#ifndef FSL_POLAR_H
#define FSL_POLAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FslpStatus {
  FSLP_STATUS_OK = 0,
  FSLP_STATUS_NULL_POINTER = 1,
  FSLP_STATUS_INVALID_ARGUMENT = 2,
  FSLP_STATUS_LENGTH_MISMATCH = 3,
  FSLP_STATUS_INFEASIBLE = 4,
  FSLP_STATUS_TABLE_ERROR = 5,
  FSLP_STATUS_IO = 6,
  FSLP_STATUS_PANIC = 7,
} FslpStatus;

/**
 * A constructed code.
 */
typedef struct FslpCode FslpCode;

/**
 * An SCL or FSL decoder bound to one code.
 */
typedef struct FslpDecoder FslpDecoder;

/**
 * FSL decoder parameters; start from [`fslp_fsl_params_default`].
 */
typedef struct FslpFslParams {
  size_t block_len;
  size_t flip_t;
  size_t l_sd;
  size_t list_size;
  double saturation_llr;
  size_t exhaustive_guard;
} FslpFslParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *fslp_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fslp_version(void);

/**
 * Polarization-weight code of length `n` with `k` payload bits and a
 * `crc_len`-bit CRC.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum FslpStatus fslp_code_new_pw(size_t n, size_t k, size_t crc_len, struct FslpCode **out);

/**
 * PW code whose information bits are re-distributed so that no
 * length-`block_len` block has `k_low < K_B < k_high`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum FslpStatus fslp_code_new_adjusted(size_t n,
                                       size_t k,
                                       size_t crc_len,
                                       size_t block_len,
                                       size_t k_low,
                                       size_t k_high,
                                       struct FslpCode **out);

/**
 * Hybrid code: distance-optimized length-16 outer codes under the polar
 * transform. Decode it with an FSL decoder.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum FslpStatus fslp_code_new_hybrid(size_t n, size_t k, size_t crc_len, struct FslpCode **out);

/**
 * # Safety
 * `code` must be null or a handle from an `fslp_code_new_*` call that has
 * not been freed.
 */
void fslp_code_free(struct FslpCode *code);

/**
 * Code length `N`; 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t fslp_code_length(const struct FslpCode *code);

/**
 * Payload length `K` (CRC excluded); 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t fslp_code_payload_bits(const struct FslpCode *code);

/**
 * Attaches the CRC to `payload` (`K` bits) and encodes it into
 * `codeword` (`N` bits).
 *
 * # Safety
 * `payload` and `codeword` must point to `payload_len` and `codeword_len`
 * valid elements.
 */
enum FslpStatus fslp_encode(const struct FslpCode *code,
                            const uint8_t *payload,
                            size_t payload_len,
                            uint8_t *codeword,
                            size_t codeword_len);

/**
 * BPSK-modulates `codeword`, adds seeded white Gaussian noise at
 * `es_n0_db` and writes channel LLRs (`2y/σ²`). `INFINITY` gives
 * noiseless LLRs. The output depends only on the inputs.
 *
 * # Safety
 * `codeword` and `llrs` must each point to `len` valid elements.
 */
enum FslpStatus fslp_awgn_llr(const uint8_t *codeword,
                              double es_n0_db,
                              uint64_t seed,
                              uint64_t frame_index,
                              double *llrs,
                              size_t len);

/**
 * Recommended parameters for `block_len` 8 or 16 (`L = 8`).
 */
struct FslpFslParams fslp_fsl_params_default(size_t block_len);

/**
 * CRC-aided bit-level SCL decoder with list size `list_size`.
 *
 * # Safety
 * `code` must be a live handle and `out` valid storage for one handle.
 */
enum FslpStatus fslp_scl_decoder_new(const struct FslpCode *code,
                                     size_t list_size,
                                     struct FslpDecoder **out);

/**
 * FSL decoder; syndrome tables are built (or loaded from
 * `$FSLPOLAR_TABLE_CACHE`) here.
 *
 * # Safety
 * `code` must be a live handle, `params` null (defaults for B = 16) or
 * valid, and `out` valid storage for one handle.
 */
enum FslpStatus fslp_fsl_decoder_new(const struct FslpCode *code,
                                     const struct FslpFslParams *params,
                                     struct FslpDecoder **out);

/**
 * # Safety
 * `decoder` must be null or a live decoder handle.
 */
void fslp_decoder_free(struct FslpDecoder *decoder);

/**
 * Decodes `N` channel LLRs (positive favours bit 0) into `K` payload
 * bits. `crc_ok` and `path_metric` may be null.
 *
 * # Safety
 * `llrs` and `payload` must point to `llr_len` and `payload_len` valid
 * elements; the optional outputs must be null or valid.
 */
enum FslpStatus fslp_decode(struct FslpDecoder *decoder,
                            const double *llrs,
                            size_t llr_len,
                            uint8_t *payload,
                            size_t payload_len,
                            bool *crc_ok,
                            double *path_metric);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FSL_POLAR_H */
