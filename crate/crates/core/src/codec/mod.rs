//! Encoding and decoding of relaxed polar codes.
//!
//! Decoders take channel-order LLRs `ln W(y|0)/W(y|1)` (an erasure is
//! exactly `0`, a noiseless observation is `+-inf`) and work internally in
//! natural u-order after undoing the encoder's bit-reversal.

pub mod crc;
pub mod encoder;
pub mod sc;
pub mod scl;

use serde::Serialize;

pub use encoder::{encode, encode_natural};
pub use sc::{rscd_decode, rscd_decode_seeded, sscd_decode, ScDecoder};
pub use scl::{rscl_decode, ListDecoder};

/// Output of any decoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    /// All `N` input bits; frozen positions are zero.
    pub u_hat: Vec<u8>,
    /// Bits on the good set, in index order (includes CRC bits if any).
    pub info_bits: Vec<u8>,
    pub crc_ok: Option<bool>,
    /// 1-based metric rank of the returned list path.
    pub list_rank: Option<usize>,
}

/// Check-node update in the log domain, `2 atanh(tanh(a/2) tanh(b/2))`.
///
/// Small inputs go through the `tanh` form so that the sign is always the
/// product of the input signs; larger ones use the Jacobian-logarithm form.
#[inline]
pub fn boxplus(a: f64, b: f64) -> f64 {
    let (ma, mb) = (a.abs(), b.abs());
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    let m = ma.min(mb);
    if m < 1.0 {
        return 2.0 * ((0.5 * a).tanh() * (0.5 * b).tanh()).atanh();
    }
    if ma.is_infinite() && mb.is_infinite() {
        return sign * f64::INFINITY;
    }
    sign * (m + (-(ma + mb)).exp().ln_1p() - (-(ma - mb).abs()).exp().ln_1p())
}

/// Min-sum approximation of [`boxplus`].
#[inline]
pub fn boxplus_min_sum(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs())
}

/// Variable-node update given the left partial-sum bit. Contradicting
/// infinite inputs carry no information and give `0`.
#[inline]
pub fn g_update(alpha_first: f64, alpha_second: f64, bit: u8) -> f64 {
    let v = if bit == 0 {
        alpha_second + alpha_first
    } else {
        alpha_second - alpha_first
    };
    if v.is_nan() {
        0.0
    } else {
        v
    }
}
