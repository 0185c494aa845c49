//! Binary-input channels and their scalar figures of merit.
//!
//! [`DiscreteBms`] is an explicit finite-output channel given by its transition
//! matrix and is the substrate for the exact polarization oracle. The
//! parametric [`BecChannel`] and [`AwgnChannel`] drive the large-length
//! reliability estimators.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const COLUMN_TOL: f64 = 1e-12;

/// A binary-input channel with a finite output alphabet.
///
/// `probs[y] = [W(y|0), W(y|1)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DmcJson", into = "DmcJson")]
pub struct DiscreteBms {
    probs: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct DmcJson {
    #[serde(rename = "M")]
    m: usize,
    probs: Vec<[f64; 2]>,
}

impl TryFrom<DmcJson> for DiscreteBms {
    type Error = Error;

    fn try_from(raw: DmcJson) -> Result<Self> {
        if raw.m != raw.probs.len() {
            return Err(Error::InvalidChannel(format!(
                "M = {} but {} rows given",
                raw.m,
                raw.probs.len()
            )));
        }
        DiscreteBms::new(raw.probs)
    }
}

impl From<DiscreteBms> for DmcJson {
    fn from(ch: DiscreteBms) -> Self {
        DmcJson {
            m: ch.probs.len(),
            probs: ch.probs,
        }
    }
}

impl DiscreteBms {
    /// Builds a channel from its rows, checking that each input column is a
    /// probability distribution.
    pub fn new(probs: Vec<[f64; 2]>) -> Result<Self> {
        Self::with_tolerance(probs, COLUMN_TOL)
    }

    pub(crate) fn with_tolerance(probs: Vec<[f64; 2]>, tol: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidChannel("empty output alphabet".into()));
        }
        for (y, row) in probs.iter().enumerate() {
            for &w in row {
                if !(0.0..=1.0).contains(&w) || w.is_nan() {
                    return Err(Error::InvalidChannel(format!(
                        "W({y}|.) = {w} outside [0, 1]"
                    )));
                }
            }
        }
        for x in 0..2 {
            let total: f64 = probs.iter().map(|row| row[x]).sum();
            if (total - 1.0).abs() > tol {
                return Err(Error::InvalidChannel(format!(
                    "column {x} sums to {total}"
                )));
            }
        }
        Ok(Self { probs })
    }

    /// Binary symmetric channel with crossover probability `q`.
    pub fn bsc(q: f64) -> Result<Self> {
        Self::new(vec![[1.0 - q, q], [q, 1.0 - q]])
    }

    /// Two-output identity channel.
    pub fn noiseless() -> Self {
        Self {
            probs: vec![[1.0, 0.0], [0.0, 1.0]],
        }
    }

    /// Three-output erasure channel with outputs `{0, erasure, 1}`.
    pub fn bec(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidChannel(format!("erasure probability {p}")));
        }
        Self::new(vec![[1.0 - p, 0.0], [p, p], [0.0, 1.0 - p]])
    }

    /// A random symmetric channel with `2 * pairs` outputs, each pair
    /// `(a, b), (b, a)` mirroring the other.
    pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, pairs: usize) -> Self {
        let pairs = pairs.max(1);
        let raw: Vec<(f64, f64)> = (0..pairs)
            .map(|_| (rng.random::<f64>() + 1e-3, rng.random::<f64>() + 1e-3))
            .collect();
        let total: f64 = raw.iter().map(|(a, b)| a + b).sum();
        let mut probs = Vec::with_capacity(2 * pairs);
        for &(a, b) in &raw {
            probs.push([a / total, b / total]);
            probs.push([b / total, a / total]);
        }
        Self { probs }
    }

    pub fn outputs(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[[f64; 2]] {
        &self.probs
    }

    /// Bhattacharyya parameter `Z(W) = sum_y sqrt(W(y|0) W(y|1))`.
    pub fn bhattacharyya(&self) -> f64 {
        self.probs
            .iter()
            .map(|[w0, w1]| (w0 * w1).sqrt())
            .sum::<f64>()
            .min(1.0)
    }

    /// ML error probability under uniform input, `1/2 sum_y min(W(y|0), W(y|1))`.
    pub fn error_probability(&self) -> f64 {
        0.5 * self.probs.iter().map(|[w0, w1]| w0.min(*w1)).sum::<f64>()
    }

    /// Symmetric capacity in bits.
    pub fn capacity(&self) -> f64 {
        let mut acc = 0.0;
        for &[w0, w1] in &self.probs {
            let mix = 0.5 * (w0 + w1);
            for w in [w0, w1] {
                if w > 0.0 {
                    acc += 0.5 * w * (w / mix).log2();
                }
            }
        }
        acc.clamp(0.0, 1.0)
    }

    /// True when some output permutation `pi` gives `W(y|0) = W(pi(y)|1)`.
    pub fn check_symmetric(&self, tol: f64) -> bool {
        let key = |a: &[f64; 2], b: &[f64; 2]| {
            a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
        };
        let mut rows = self.probs.clone();
        let mut swapped: Vec<[f64; 2]> = self.probs.iter().map(|r| [r[1], r[0]]).collect();
        rows.sort_by(key);
        swapped.sort_by(key);
        rows.iter()
            .zip(&swapped)
            .all(|(a, b)| (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol)
    }
}

/// Binary erasure channel, parametric form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BecChannel {
    p: f64,
}

impl BecChannel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidChannel(format!("erasure probability {p}")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn capacity(&self) -> f64 {
        1.0 - self.p
    }

    pub fn to_dmc(&self) -> DiscreteBms {
        bec_as_dmc(self.p).expect("validated erasure probability")
    }
}

/// Three-output discrete form of `BEC(p)`.
pub fn bec_as_dmc(p: f64) -> Result<DiscreteBms> {
    DiscreteBms::bec(p)
}

/// BPSK over additive white Gaussian noise, bit 0 sent as +1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AwgnChannel {
    sigma: f64,
}

impl AwgnChannel {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidChannel(format!("noise deviation {sigma}")));
        }
        Ok(Self { sigma })
    }

    /// `SNR(dB) = 10 log10(1 / sigma^2)`.
    pub fn from_snr_db(snr_db: f64) -> Result<Self> {
        Self::new(10f64.powf(-snr_db / 20.0))
    }

    /// Finds the noise level whose binary-input capacity equals `capacity`.
    pub fn from_capacity(capacity: f64) -> Result<Self> {
        if !(capacity > 0.0 && capacity < 1.0) {
            return Err(Error::InvalidChannel(format!("target capacity {capacity}")));
        }
        // capacity is decreasing in sigma; bisect on log(sigma)
        let (mut lo, mut hi) = (-7.0f64, 7.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if awgn_capacity(mid.exp()) > capacity {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Self::new((0.5 * (lo + hi)).exp())
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn snr_db(&self) -> f64 {
        -20.0 * self.sigma.log10()
    }

    pub fn capacity(&self) -> f64 {
        awgn_capacity(self.sigma)
    }

    pub fn llr(&self, y: f64) -> f64 {
        awgn_llr(y, self.sigma)
    }
}

/// Channel LLR `log W(y|0)/W(y|1) = 2y / sigma^2`.
pub fn awgn_llr(y: f64, sigma: f64) -> f64 {
    2.0 * y / (sigma * sigma)
}

/// Binary-input AWGN capacity, `1 - E[log2(1 + e^-L)]` with
/// `L ~ N(2/sigma^2, 4/sigma^2)`, by composite Simpson integration.
pub fn awgn_capacity(sigma: f64) -> f64 {
    let mean = 2.0 / (sigma * sigma);
    let sd = 2.0 / sigma;
    let steps = 4000usize;
    let (a, b) = (mean - 12.0 * sd, mean + 12.0 * sd);
    let h = (b - a) / steps as f64;
    let f = |l: f64| {
        let z = (l - mean) / sd;
        let density = (-0.5 * z * z).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt());
        let loss = if l > 0.0 {
            (-l).exp().ln_1p()
        } else {
            -l + l.exp().ln_1p()
        };
        density * loss / std::f64::consts::LN_2
    };
    let mut acc = f(a) + f(b);
    for k in 1..steps {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    (1.0 - acc * h / 3.0).clamp(0.0, 1.0)
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Inverse of the binary entropy on the branch `[0, 1/2]`.
pub fn binary_entropy_inv(h: f64) -> f64 {
    if h <= 0.0 {
        return 0.0;
    }
    if h >= 1.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
