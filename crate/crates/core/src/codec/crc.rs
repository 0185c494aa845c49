use serde::{Deserialize, Serialize};

/// Bitwise, non-reflected CRC register configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrcConfig {
    pub width: u32,
    pub polynomial: u64,
    pub init: u64,
}

impl Default for CrcConfig {
    /// CRC-16 with polynomial 0x1021 and all-ones initial register.
    fn default() -> Self {
        Self {
            width: 16,
            polynomial: 0x1021,
            init: 0xFFFF,
        }
    }
}

impl CrcConfig {
    fn mask(&self) -> u64 {
        if self.width >= 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    /// Register contents after shifting in `bits` (MSB-first semantics).
    pub fn remainder(&self, bits: &[u8]) -> u64 {
        let mask = self.mask();
        let top = 1u64 << (self.width - 1);
        let mut reg = self.init & mask;
        for &b in bits {
            let feedback = ((reg & top) != 0) ^ (b & 1 != 0);
            reg = (reg << 1) & mask;
            if feedback {
                reg ^= self.polynomial & mask;
            }
        }
        reg
    }

    /// Payload followed by its `width` check bits, most significant first.
    pub fn attach(&self, payload: &[u8]) -> Vec<u8> {
        let rem = self.remainder(payload);
        let mut out = Vec::with_capacity(payload.len() + self.width as usize);
        out.extend_from_slice(payload);
        out.extend((0..self.width).rev().map(|k| ((rem >> k) & 1) as u8));
        out
    }

    pub fn check(&self, bits: &[u8]) -> bool {
        bits.len() >= self.width as usize && self.remainder(bits) == 0
    }
}
