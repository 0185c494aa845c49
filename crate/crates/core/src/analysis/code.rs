use std::path::Path;

use serde::{Deserialize, Serialize};

use super::map::RelaxationMap;
use crate::codec::crc::CrcConfig;
use crate::error::{Error, Result};

/// Everything an encoder or decoder needs: length, information set,
/// optional CRC and the relaxation map. Frozen bits are always zero.
///
/// Indices are 0-based in memory and 1-based in the JSON form.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    n: usize,
    good_set: Vec<usize>,
    info_mask: Vec<bool>,
    crc: Option<CrcConfig>,
    map: RelaxationMap,
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    n: usize,
    good_set: Vec<usize>,
    crc: Option<CrcConfig>,
    map_ref: String,
}

impl CodeSpec {
    pub fn new(map: RelaxationMap, good_set: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = map.n();
        let len = 1usize << n;
        let mut info_mask = vec![false; len];
        for i in good_set {
            if i >= len {
                return Err(Error::InvalidParameter(format!(
                    "good-set index {i} outside [0, {len})"
                )));
            }
            info_mask[i] = true;
        }
        let good_set = (0..len).filter(|&i| info_mask[i]).collect();
        Ok(Self {
            n,
            good_set,
            info_mask,
            crc: None,
            map,
        })
    }

    pub fn with_crc(mut self, crc: Option<CrcConfig>) -> Self {
        self.crc = crc;
        self
    }

    /// Same good set and CRC under a different map.
    pub fn with_map(&self, map: RelaxationMap) -> Result<Self> {
        if map.n() != self.n {
            return Err(Error::DepthMismatch {
                expected: self.n,
                got: map.n(),
            });
        }
        Ok(Self {
            map,
            ..self.clone()
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn good_set(&self) -> &[usize] {
        &self.good_set
    }

    pub fn info_mask(&self) -> &[bool] {
        &self.info_mask
    }

    #[inline]
    pub fn is_info(&self, i: usize) -> bool {
        self.info_mask[i]
    }

    pub fn crc(&self) -> Option<&CrcConfig> {
        self.crc.as_ref()
    }

    pub fn map(&self) -> &RelaxationMap {
        &self.map
    }

    pub fn rate(&self) -> f64 {
        self.good_set.len() as f64 / self.len() as f64
    }

    /// Number of user payload bits: the good set minus any CRC bits.
    pub fn payload_len(&self) -> usize {
        let crc = self.crc.map_or(0, |c| c.width as usize);
        self.good_set.len().saturating_sub(crc)
    }

    /// Places payload (plus CRC, if configured) on the good set.
    pub fn place_payload(&self, payload: &[u8]) -> Result<Vec<u8>> {
        if payload.len() != self.payload_len() {
            return Err(Error::LengthMismatch {
                expected: self.payload_len(),
                got: payload.len(),
            });
        }
        let framed = match &self.crc {
            Some(crc) => crc.attach(payload),
            None => payload.to_vec(),
        };
        let mut u = vec![0u8; self.len()];
        for (&i, &b) in self.good_set.iter().zip(&framed) {
            u[i] = b;
        }
        Ok(u)
    }

    /// Rate-0 and rate-1 labels of every tree node under this good set.
    pub fn subtree_rates(&self) -> SubtreeRates {
        SubtreeRates::from_mask(&self.info_mask)
    }

    /// Serializes the spec, pointing at `map_ref` for the relaxation map.
    pub fn to_json(&self, map_ref: &str) -> String {
        let raw = CodeJson {
            n: self.n,
            good_set: self.good_set.iter().map(|i| i + 1).collect(),
            crc: self.crc,
            map_ref: map_ref.to_string(),
        };
        serde_json::to_string_pretty(&raw).expect("code spec serializes")
    }

    /// Parses a spec whose map lives at `map_ref`, resolved against `base`.
    pub fn from_json(s: &str, base: &Path) -> Result<(Self, String)> {
        let raw: CodeJson = serde_json::from_str(s)?;
        let map_path = base.join(&raw.map_ref);
        let map = RelaxationMap::from_json(&std::fs::read_to_string(&map_path)?)?;
        Self::from_parts(raw.n, &raw.good_set, raw.crc, map).map(|c| (c, raw.map_ref))
    }

    fn from_parts(
        n: usize,
        good_set_1based: &[usize],
        crc: Option<CrcConfig>,
        map: RelaxationMap,
    ) -> Result<Self> {
        if map.n() != n {
            return Err(Error::DepthMismatch {
                expected: n,
                got: map.n(),
            });
        }
        if good_set_1based.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("good_set must be strictly increasing".into()));
        }
        let zero_based = good_set_1based
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::Format("good_set is 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(map, zero_based)?.with_crc(crc))
    }

    /// Loads a spec file and its referenced map.
    pub fn load(path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_json(&std::fs::read_to_string(path)?, base).map(|(c, _)| c)
    }
}

/// Per-node flags: `rate0[t][j]` when every leaf below `(t, j)` is frozen,
/// `rate1[t][j]` when every leaf below it carries information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeRates {
    pub rate0: Vec<Vec<bool>>,
    pub rate1: Vec<Vec<bool>>,
}

impl SubtreeRates {
    pub fn from_mask(info_mask: &[bool]) -> Self {
        assert!(info_mask.len().is_power_of_two(), "mask length must be a power of two");
        let n = info_mask.len().trailing_zeros() as usize;
        let mut rate0 = vec![Vec::new(); n + 1];
        let mut rate1 = vec![Vec::new(); n + 1];
        rate0[n] = info_mask.iter().map(|&b| !b).collect();
        rate1[n] = info_mask.to_vec();
        for t in (0..n).rev() {
            rate0[t] = (0..1 << t)
                .map(|j| rate0[t + 1][2 * j] && rate0[t + 1][2 * j + 1])
                .collect();
            rate1[t] = (0..1 << t)
                .map(|j| rate1[t + 1][2 * j] && rate1[t + 1][2 * j + 1])
                .collect();
        }
        Self { rate0, rate1 }
    }
}
