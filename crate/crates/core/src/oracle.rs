//! Exact single-step polarization of finite-output channels.
//!
//! These transforms are brute force: the output alphabet of `W-` is `Y^2`
//! and that of `W+` is `Y^2 x {0,1}`. After every step, outputs sharing the
//! same likelihood ratio are merged, which is lossless for every figure
//! computed here and keeps erasure channels at three symbols.

use serde::Serialize;

use crate::channels::DiscreteBms;
use crate::error::{Error, Result};

/// Default ceiling on the raw (pre-merge) output alphabet of one transform.
pub const DEFAULT_ALPHABET_CAP: usize = 1_000_000;

// log-likelihood ratios closer than this are treated as the same output
const LR_MERGE_TOL: f64 = 1e-11;

/// An exact bit-channel together with the `-`/`+` path that produced it.
#[derive(Debug, Clone)]
pub struct BitChannelExact {
    pub channel: DiscreteBms,
    pub lineage: String,
}

/// Exact polarizer with an explicit alphabet ceiling.
#[derive(Debug, Clone, Copy)]
pub struct ExactPolarizer {
    pub cap: usize,
}

impl Default for ExactPolarizer {
    fn default() -> Self {
        Self {
            cap: DEFAULT_ALPHABET_CAP,
        }
    }
}

impl ExactPolarizer {
    pub fn minus(&self, w: &DiscreteBms) -> Result<DiscreteBms> {
        let m = w.outputs();
        self.check(m * m)?;
        let p = w.probs();
        let mut rows = Vec::with_capacity(m * m);
        for a in p {
            for b in p {
                rows.push([
                    0.5 * (a[0] * b[0] + a[1] * b[1]),
                    0.5 * (a[1] * b[0] + a[0] * b[1]),
                ]);
            }
        }
        merge_equal_ratios(rows)
    }

    pub fn plus(&self, w: &DiscreteBms) -> Result<DiscreteBms> {
        let m = w.outputs();
        self.check(2 * m * m)?;
        let p = w.probs();
        let mut rows = Vec::with_capacity(2 * m * m);
        for a in p {
            for b in p {
                for u1 in 0..2 {
                    // W+(y1, y2, u1 | u2) = 1/2 W(y1 | u1 ^ u2) W(y2 | u2)
                    rows.push([0.5 * a[u1] * b[0], 0.5 * a[u1 ^ 1] * b[1]]);
                }
            }
        }
        merge_equal_ratios(rows)
    }

    /// The `i`-th (1-based) bit-channel at level `n`: the binary expansion of
    /// `i - 1`, most significant bit first, selects `-` for 0 and `+` for 1.
    pub fn bit_channel(&self, w: &DiscreteBms, n: usize, i: usize) -> Result<BitChannelExact> {
        if n >= usize::BITS as usize || i == 0 || i > (1usize << n) {
            return Err(Error::InvalidParameter(format!(
                "bit-channel index {i} out of range for level {n}"
            )));
        }
        let path = i - 1;
        let mut channel = w.clone();
        let mut lineage = String::with_capacity(n);
        for k in (0..n).rev() {
            if (path >> k) & 1 == 0 {
                channel = self.minus(&channel)?;
                lineage.push('-');
            } else {
                channel = self.plus(&channel)?;
                lineage.push('+');
            }
        }
        Ok(BitChannelExact { channel, lineage })
    }

    fn check(&self, size: usize) -> Result<()> {
        if size > self.cap {
            Err(Error::AlphabetCap {
                size,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

/// `W-(y1, y2 | u1) = 1/2 sum_u2 W(y1 | u1 ^ u2) W(y2 | u2)`.
pub fn polarize_minus(w: &DiscreteBms) -> Result<DiscreteBms> {
    ExactPolarizer::default().minus(w)
}

/// `W+(y1, y2, u1 | u2) = 1/2 W(y1 | u1 ^ u2) W(y2 | u2)`.
pub fn polarize_plus(w: &DiscreteBms) -> Result<DiscreteBms> {
    ExactPolarizer::default().plus(w)
}

pub fn exact_bit_channel(w: &DiscreteBms, n: usize, i: usize) -> Result<BitChannelExact> {
    ExactPolarizer::default().bit_channel(w, n, i)
}

fn merge_equal_ratios(rows: Vec<[f64; 2]>) -> Result<DiscreteBms> {
    let mut keyed: Vec<(f64, [f64; 2])> = rows
        .into_iter()
        .filter(|r| r[0] > 0.0 || r[1] > 0.0)
        .map(|r| {
            let key = if r[1] == 0.0 {
                f64::INFINITY
            } else if r[0] == 0.0 {
                f64::NEG_INFINITY
            } else {
                (r[0] / r[1]).ln()
            };
            (key, r)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut merged: Vec<[f64; 2]> = Vec::new();
    let mut anchor = f64::NAN;
    for (key, row) in keyed {
        let same = match merged.last() {
            Some(_) if key.is_infinite() || anchor.is_infinite() => key == anchor,
            Some(_) => (key - anchor).abs() <= LR_MERGE_TOL,
            None => false,
        };
        if same {
            let last = merged.last_mut().expect("non-empty");
            last[0] += row[0];
            last[1] += row[1];
        } else {
            anchor = key;
            merged.push(row);
        }
    }
    DiscreteBms::with_tolerance(merged, 1e-10)
}

/// Outcome of checking `E(W-) = 2E - 2E^2` and `E(W+) >= 2E^2` on one channel.
#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub e: f64,
    pub e_minus_exact: f64,
    pub e_minus_formula: f64,
    pub e_plus_exact: f64,
    pub e_plus_lb: f64,
    pub pass: bool,
}

pub fn verify_appendix_lemma(w: &DiscreteBms) -> Result<AppendixReport> {
    let e = w.error_probability();
    let e_minus_exact = polarize_minus(w)?.error_probability();
    let e_plus_exact = polarize_plus(w)?.error_probability();
    let e_minus_formula = 2.0 * e - 2.0 * e * e;
    let e_plus_lb = 2.0 * e * e;
    let pass = (e_minus_exact - e_minus_formula).abs() <= 1e-10 && e_plus_exact >= e_plus_lb - 1e-12;
    Ok(AppendixReport {
        e,
        e_minus_exact,
        e_minus_formula,
        e_plus_exact,
        e_plus_lb,
        pass,
    })
}
