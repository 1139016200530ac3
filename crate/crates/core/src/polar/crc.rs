use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Non-reflected CRC over a bit sequence, MSB-first, no output xor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crc {
    pub width: u8,
    pub poly: u32,
    pub init: u32,
}

/// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF.
pub const CRC16_CCITT_FALSE: Crc = Crc { width: 16, poly: 0x1021, init: 0xFFFF };

impl Crc {
    /// The generator used for a given CRC length. Zero means no CRC.
    pub fn for_len(len: usize) -> Result<Option<Crc>> {
        Ok(match len {
            0 => None,
            8 => Some(Crc { width: 8, poly: 0x07, init: 0 }),
            16 => Some(CRC16_CCITT_FALSE),
            24 => Some(Crc { width: 24, poly: 0xB2_B117, init: 0 }),
            other => return Err(Error::invalid(format!("unsupported CRC length {other}"))),
        })
    }

    fn mask(&self) -> u32 {
        crate::gf2::low_mask(self.width as usize)
    }

    pub fn remainder(&self, bits: &[u8]) -> u32 {
        let top = 1u32 << (self.width - 1);
        let mut reg = self.init & self.mask();
        for &b in bits {
            let feedback = ((reg & top) != 0) ^ (b != 0);
            reg = (reg << 1) & self.mask();
            if feedback {
                reg ^= self.poly;
            }
        }
        reg
    }

    /// `payload ∥ crc`, CRC bits MSB first.
    pub fn attach(&self, payload: &[u8]) -> Vec<u8> {
        let r = self.remainder(payload);
        let mut out = Vec::with_capacity(payload.len() + self.width as usize);
        out.extend_from_slice(payload);
        out.extend((0..self.width).rev().map(|i| (r >> i & 1) as u8));
        out
    }

    pub fn check(&self, frame: &[u8]) -> bool {
        let w = self.width as usize;
        if frame.len() < w {
            return false;
        }
        let (payload, tail) = frame.split_at(frame.len() - w);
        let r = self.remainder(payload);
        tail.iter()
            .enumerate()
            .all(|(i, &b)| (r >> (w - 1 - i) & 1) as u8 == b)
    }
}

/// Attaches the CRC of length `crc_len` to a payload of exactly `k_payload` bits.
pub fn crc_attach(payload: &[u8], k_payload: usize, crc_len: usize) -> Result<Vec<u8>> {
    if payload.len() != k_payload {
        return Err(Error::invalid(format!(
            "payload has {} bits, expected {k_payload}",
            payload.len()
        )));
    }
    Ok(match Crc::for_len(crc_len)? {
        Some(crc) => crc.attach(payload),
        None => payload.to_vec(),
    })
}

pub fn crc_check(frame: &[u8], crc_len: usize) -> Result<bool> {
    Ok(match Crc::for_len(crc_len)? {
        Some(crc) => crc.check(frame),
        None => true,
    })
}
