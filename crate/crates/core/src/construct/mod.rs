//! Code constructions built on top of plain polar codes: information-bit
//! re-adjustment and hybrid outer codes.

mod adjust;
mod hybrid;
mod outer;

pub use adjust::{adjust_info_bits, block_rate_histogram, max_syndrome_table_rows};
pub use hybrid::{describe, hybrid_polar_encode, hybrid_spec, parse_descriptor};
pub use outer::{
    default_family, hybrid_outer_generator, spectrum_mismatch, weight_spectrum, OuterCode,
    OuterFamily, ReferenceSpectrum, WeightSpectrum, HYBRID_BLOCK_LEN, MAX_SPECTRUM_K,
    REFERENCE_SPECTRA,
};
