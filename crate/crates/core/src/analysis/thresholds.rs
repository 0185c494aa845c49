use serde::Serialize;

use crate::channels::{binary_entropy, binary_entropy_inv};
use crate::error::{Error, Result};

/// Relaxation thresholds in the error-probability domain.
///
/// A node is good-relaxed when its upper EP is below `eg` and bad-relaxed
/// when its lower EP is above `eb`. The bad test is carried out on the gap
/// `1/2 - EP`, so `eb_gap = 1/2 - eb` is stored as its own number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub eg: f64,
    pub eb: f64,
    pub eb_gap: f64,
}

/// Which entropy rule links `eg` and `eb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyRule {
    /// Erasure channels: `H(E) = 2E`, so `eb = 1/2 - eg`.
    Erasure,
    /// General channels: `H(E) ~ h2(E)`.
    Binary,
}

impl Thresholds {
    /// Thresholds that never trigger.
    pub fn inactive() -> Self {
        Self {
            eg: 0.0,
            eb: 1.0,
            eb_gap: -0.5,
        }
    }

    pub fn new(eg: f64, eb: f64) -> Result<Self> {
        let t = Self {
            eg,
            eb,
            eb_gap: 0.5 - eb,
        };
        t.validate()?;
        Ok(t)
    }

    /// Erasure-channel thresholds from a Bhattacharyya-domain good threshold
    /// `tg`; the bad threshold is `1 - tg`.
    pub fn from_bec_z(tg: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&tg) {
            return Err(Error::InvalidTarget(format!("Z threshold {tg} outside [0, 1)")));
        }
        let t = Self {
            eg: tg / 2.0,
            eb: (1.0 - tg) / 2.0,
            eb_gap: tg / 2.0,
        };
        t.validate()?;
        Ok(t)
    }

    /// Good threshold in the Bhattacharyya domain.
    pub fn z_good(&self) -> f64 {
        2.0 * self.eg
    }

    /// Bad threshold in the Bhattacharyya domain.
    pub fn z_bad(&self) -> f64 {
        1.0 - 2.0 * self.eb_gap
    }

    fn validate(&self) -> Result<()> {
        if self.eg.is_nan() || self.eb.is_nan() {
            return Err(Error::InvalidTarget("NaN threshold".into()));
        }
        if self.eg >= 0.5 {
            return Err(Error::InvalidTarget(format!("eg = {} is not below 1/2", self.eg)));
        }
        Ok(())
    }

    /// Fails unless the good threshold sits strictly below the bad one, so
    /// that no node can qualify as both.
    pub fn check_ordering(&self) -> Result<()> {
        if self.eg > 0.0 && self.eg >= self.eb {
            return Err(Error::InvalidTarget(format!(
                "good threshold {} is not below bad threshold {}",
                self.eg, self.eb
            )));
        }
        Ok(())
    }
}

/// `eg = E / (R N)` and the matching bad threshold.
pub fn thresholds_from_target(fer: f64, rate: f64, len: usize, rule: EntropyRule) -> Result<Thresholds> {
    if !(fer > 0.0 && fer < 1.0) {
        return Err(Error::InvalidTarget(format!("FER target {fer} outside (0, 1)")));
    }
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidTarget(format!("rate {rate} outside (0, 1]")));
    }
    let eg = fer / (rate * len as f64);
    if eg >= 0.5 {
        return Err(Error::InvalidTarget(format!("eg = {eg} is not below 1/2")));
    }
    match rule {
        EntropyRule::Erasure => Thresholds::from_bec_z(2.0 * eg),
        EntropyRule::Binary => {
            let eb = binary_entropy_inv(1.0 - binary_entropy(eg));
            Thresholds::new(eg, eb)
        }
    }
}
