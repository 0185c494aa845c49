use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-node relaxation labels over the full polarization tree.
///
/// Level `t` holds `2^t` flags; node `j` (0-based) at level `t` has children
/// `2j` (the `-` transform) and `2j + 1` (the `+` transform). A relaxed node
/// is not polarized further, and neither is any of its descendants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapJson", into = "MapJson")]
pub struct RelaxationMap {
    n: usize,
    levels: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    n: usize,
    levels: Vec<String>,
}

impl RelaxationMap {
    /// The fully polarized map: nothing relaxed.
    pub fn fully_polarized(n: usize) -> Self {
        Self {
            n,
            levels: (0..=n).map(|t| vec![false; 1 << t]).collect(),
        }
    }

    /// Every node relaxed, including the root.
    pub fn fully_relaxed(n: usize) -> Self {
        Self {
            n,
            levels: (0..=n).map(|t| vec![true; 1 << t]).collect(),
        }
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

    #[inline]
    pub fn is_relaxed(&self, t: usize, j: usize) -> bool {
        self.levels[t][j]
    }

    pub fn level(&self, t: usize) -> &[bool] {
        &self.levels[t]
    }

    /// Relaxes node `(t, j)` together with its whole subtree.
    pub fn relax_subtree(&mut self, t: usize, j: usize) {
        for (depth, level) in self.levels[t..].iter_mut().enumerate() {
            let width = 1usize << depth;
            level[j * width..(j + 1) * width].fill(true);
        }
    }

    /// Roots of the maximal relaxed subtrees, as `(level, index)` pairs.
    pub fn relaxed_roots(&self) -> Vec<(usize, usize)> {
        let mut roots = Vec::new();
        for t in 0..=self.n {
            for (j, &r) in self.levels[t].iter().enumerate() {
                if r && (t == 0 || !self.levels[t - 1][j / 2]) {
                    roots.push((t, j));
                }
            }
        }
        roots
    }

    /// Checks that every relaxed node has relaxed children.
    pub fn check_heredity(&self) -> Result<()> {
        for t in 0..self.n {
            for (j, &r) in self.levels[t].iter().enumerate() {
                if r && !(self.levels[t + 1][2 * j] && self.levels[t + 1][2 * j + 1]) {
                    return Err(Error::Format(format!(
                        "node ({t}, {}) is relaxed but a child is not",
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Mirror image: index `j` at level `t` goes to `2^t - 1 - j`.
    pub fn mirrored(&self) -> Self {
        Self {
            n: self.n,
            levels: self
                .levels
                .iter()
                .map(|l| l.iter().rev().copied().collect())
                .collect(),
        }
    }

    pub fn relaxed_count(&self) -> usize {
        self.levels.iter().flatten().filter(|&&r| r).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn level_to_hex(bits: &[bool]) -> String {
    let mut out = String::with_capacity(bits.len().div_ceil(4));
    for chunk in bits.chunks(4) {
        let mut nibble = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                nibble |= 8 >> k;
            }
        }
        write!(out, "{nibble:x}").expect("write to string");
    }
    out
}

fn hex_to_level(hex: &str, width: usize) -> Result<Vec<bool>> {
    if hex.len() != width.div_ceil(4) {
        return Err(Error::Format(format!(
            "level of width {width} needs {} hex digits, got {}",
            width.div_ceil(4),
            hex.len()
        )));
    }
    let mut bits = Vec::with_capacity(width);
    for c in hex.chars() {
        let nibble = c
            .to_digit(16)
            .ok_or_else(|| Error::Format(format!("bad hex digit {c:?}")))?;
        for k in 0..4 {
            bits.push(nibble & (8 >> k) != 0);
        }
    }
    if bits[width..].iter().any(|&b| b) {
        return Err(Error::Format("padding bits must be zero".into()));
    }
    bits.truncate(width);
    Ok(bits)
}

impl From<RelaxationMap> for MapJson {
    fn from(map: RelaxationMap) -> Self {
        MapJson {
            n: map.n,
            levels: map.levels.iter().map(|l| level_to_hex(l)).collect(),
        }
    }
}

impl TryFrom<MapJson> for RelaxationMap {
    type Error = Error;

    fn try_from(raw: MapJson) -> Result<Self> {
        if raw.levels.len() != raw.n + 1 {
            return Err(Error::Format(format!(
                "n = {} needs {} levels, got {}",
                raw.n,
                raw.n + 1,
                raw.levels.len()
            )));
        }
        let levels = raw
            .levels
            .iter()
            .enumerate()
            .map(|(t, hex)| hex_to_level(hex, 1 << t))
            .collect::<Result<Vec<_>>>()?;
        let map = RelaxationMap { n: raw.n, levels };
        map.check_heredity()?;
        Ok(map)
    }
}
