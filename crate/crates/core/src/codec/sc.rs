//! Relaxed successive cancellation (RSCD) and its simplified variant (SSCD).

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::encoder::{bit_reverse_permute, untransform_natural};
use super::{boxplus, boxplus_min_sum, g_update, DecodeResult};
use crate::analysis::code::{CodeSpec, SubtreeRates};
use crate::error::{Error, Result};

/// Reusable successive-cancellation decoder for one code.
///
/// Relaxed nodes pass their LLRs straight to the leaves below them. The
/// combining-operation counter charges `2^(n-t)` per polarized node at level
/// `t` (one `f` and one `g` per pair), so a fully polarized code costs `nN`.
pub struct ScDecoder<'c> {
    code: &'c CodeSpec,
    rates: SubtreeRates,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<u8>>,
    u: Vec<u8>,
    ops: u64,
    min_sum: bool,
}

impl<'c> ScDecoder<'c> {
    pub fn new(code: &'c CodeSpec) -> Self {
        let n = code.n();
        Self {
            code,
            rates: code.subtree_rates(),
            alpha: (0..=n).map(|t| vec![0.0; 1 << (n - t)]).collect(),
            beta: (0..=n).map(|t| vec![0; 1 << (n - t)]).collect(),
            u: vec![0; 1 << n],
            ops: 0,
            min_sum: false,
        }
    }

    /// Use the min-sum check-node approximation instead of exact `boxplus`.
    pub fn with_min_sum(mut self, on: bool) -> Self {
        self.min_sum = on;
        self
    }

    pub fn code(&self) -> &CodeSpec {
        self.code
    }

    /// LLR combining operations spent by the last decode.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    /// RSCD. Ties at information positions draw from `rng` when given and
    /// resolve to `0` otherwise.
    pub fn decode(&mut self, llr: &[f64], rng: Option<&mut dyn RngCore>) -> Result<DecodeResult> {
        self.decode_inner(llr, rng, false)
    }

    /// SSCD: same output as [`ScDecoder::decode`], but rate-0 subtrees are
    /// skipped and rate-1 subtrees are hard-decided at their root.
    pub fn decode_sscd(&mut self, llr: &[f64], rng: Option<&mut dyn RngCore>) -> Result<DecodeResult> {
        self.decode_inner(llr, rng, true)
    }

    fn decode_inner(
        &mut self,
        llr: &[f64],
        mut rng: Option<&mut dyn RngCore>,
        sscd: bool,
    ) -> Result<DecodeResult> {
        let code = self.code;
        let info = code.info_mask();
        let mut leaf = |i: usize, l: f64| -> u8 {
            if !info[i] {
                0
            } else if l > 0.0 {
                0
            } else if l < 0.0 {
                1
            } else {
                rng.as_mut().map_or(0, |r| r.random::<bool>() as u8)
            }
        };
        self.run(llr, sscd, &mut leaf)?;
        Ok(self.result())
    }

    /// Genie-aided pass: every position is decided from its LLR (ties drawn
    /// from `rng`), wrong decisions are counted into `errors`, and the true
    /// bit from `truth` is then fed back.
    pub fn genie(
        &mut self,
        llr: &[f64],
        truth: &[u8],
        rng: &mut dyn RngCore,
        errors: &mut [u64],
    ) -> Result<()> {
        if truth.len() != self.u.len() || errors.len() != self.u.len() {
            return Err(Error::LengthMismatch {
                expected: self.u.len(),
                got: truth.len().min(errors.len()),
            });
        }
        let mut leaf = |i: usize, l: f64| -> u8 {
            let hard = if l > 0.0 {
                0
            } else if l < 0.0 {
                1
            } else {
                rng.random::<bool>() as u8
            };
            if hard != truth[i] {
                errors[i] += 1;
            }
            truth[i]
        };
        self.run(llr, false, &mut leaf)
    }

    /// Runs the tree walk with a custom leaf rule `(index, llr) -> bit`.
    pub fn run<F: FnMut(usize, f64) -> u8>(&mut self, llr: &[f64], sscd: bool, leaf: &mut F) -> Result<()> {
        if llr.len() != self.u.len() {
            return Err(Error::LengthMismatch {
                expected: self.u.len(),
                got: llr.len(),
            });
        }
        self.alpha[0] = bit_reverse_permute(llr);
        self.ops = 0;
        self.node(0, 0, sscd, leaf);
        Ok(())
    }

    fn result(&self) -> DecodeResult {
        let info_bits: Vec<u8> = self.code.good_set().iter().map(|&i| self.u[i]).collect();
        let crc_ok = self.code.crc().map(|c| c.check(&info_bits));
        DecodeResult {
            u_hat: self.u.clone(),
            info_bits,
            crc_ok,
            list_rank: None,
        }
    }

    fn node<F: FnMut(usize, f64) -> u8>(&mut self, t: usize, j: usize, sscd: bool, leaf: &mut F) {
        let n = self.code.n();
        let len = 1usize << (n - t);
        let base = j * len;
        if sscd {
            if self.rates.rate0[t][j] {
                self.beta[t].fill(0);
                self.u[base..base + len].fill(0);
                return;
            }
            if self.rates.rate1[t][j] && self.alpha[t].iter().all(|&a| a != 0.0) {
                for (b, &a) in self.beta[t].iter_mut().zip(&self.alpha[t]) {
                    *b = (a < 0.0) as u8;
                }
                let block = &mut self.u[base..base + len];
                block.copy_from_slice(&self.beta[t]);
                untransform_natural(block, self.code.map(), t, j);
                return;
            }
        }
        if t == n || self.code.map().is_relaxed(t, j) {
            for k in 0..len {
                let b = leaf(base + k, self.alpha[t][k]);
                self.u[base + k] = b;
                self.beta[t][k] = b;
            }
            return;
        }
        let half = len / 2;
        self.ops += len as u64;
        {
            let (lo, hi) = self.alpha.split_at_mut(t + 1);
            let (a1, a2) = lo[t].split_at(half);
            let child = &mut hi[0];
            if self.min_sum {
                for k in 0..half {
                    child[k] = boxplus_min_sum(a1[k], a2[k]);
                }
            } else {
                for k in 0..half {
                    child[k] = boxplus(a1[k], a2[k]);
                }
            }
        }
        self.node(t + 1, 2 * j, sscd, leaf);
        {
            let (lo, hi) = self.beta.split_at_mut(t + 1);
            lo[t][..half].copy_from_slice(&hi[0]);
            let (alo, ahi) = self.alpha.split_at_mut(t + 1);
            let (a1, a2) = alo[t].split_at(half);
            let child = &mut ahi[0];
            for k in 0..half {
                child[k] = g_update(a1[k], a2[k], lo[t][k]);
            }
        }
        self.node(t + 1, 2 * j + 1, sscd, leaf);
        let (lo, hi) = self.beta.split_at_mut(t + 1);
        let (b1, b2) = lo[t].split_at_mut(half);
        for k in 0..half {
            b1[k] ^= hi[0][k];
            b2[k] = hi[0][k];
        }
    }
}

/// RSCD with ties resolved to `0`.
pub fn rscd_decode(llr: &[f64], code: &CodeSpec) -> Result<DecodeResult> {
    ScDecoder::new(code).decode(llr, None)
}

/// RSCD with ties drawn from a generator seeded by `seed`.
pub fn rscd_decode_seeded(llr: &[f64], code: &CodeSpec, seed: u64) -> Result<DecodeResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ScDecoder::new(code).decode(llr, Some(&mut rng))
}

/// SSCD with ties resolved to `0`.
pub fn sscd_decode(llr: &[f64], code: &CodeSpec) -> Result<DecodeResult> {
    ScDecoder::new(code).decode_sscd(llr, None)
}
