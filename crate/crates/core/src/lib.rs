//! Polar codes with a flip-syndrome-list (FSL) list decoder.
//!
//! The crate is organised bottom-up:
//!
//! * [`polar`] holds the mother-code arithmetic: the `F^{⊗n}` transform,
//!   CRC attachment, polarization-weight construction and the BPSK/AWGN
//!   channel.
//! * [`scl`] is the bit-by-bit CRC-aided successive-cancellation list
//!   decoder used as the reference.
//! * [`fsl`] segments the decoding tree into constituent blocks and
//!   extends every list path once per block, using deterministic flip
//!   patterns for rate-1 / SPC blocks and syndrome-indexed error patterns
//!   for general blocks.
//! * [`syndrome`] builds, serializes and caches the syndrome tables.
//! * [`construct`] implements information-bit re-adjustment and the
//!   hybrid outer codes.
//! * [`sim`] runs Monte-Carlo BLER campaigns and the self-check suite.

pub mod construct;
pub mod fsl;
pub mod gf2;
pub mod polar;
pub mod scl;
pub mod sim;
pub mod syndrome;

mod error;
mod tree;

pub use error::{Error, Result};
pub use polar::{CodeSpec, Construction};
pub use scl::{scl_decode, DecodeOutcome, DecoderPath};
