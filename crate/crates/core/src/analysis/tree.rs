use serde::{Deserialize, Serialize};

use super::ga;
use crate::error::{Error, Result};

/// How the figures in a [`ReliabilityTree`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeKind {
    BecExact,
    GaAwgn,
    McGenie,
}

/// Reliability figures of one bit-channel.
///
/// `e_lower_gap` is `1/2 - e_lower`, kept separately so that nearly useless
/// channels do not lose their precision to cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeReliability {
    pub z: f64,
    pub e_lower: f64,
    pub e_upper: f64,
    pub e_lower_gap: f64,
}

/// Reliability figures for every node `(t, j)`, `t in 0..=n`, `j in 0..2^t`.
#[derive(Debug, Clone)]
pub struct ReliabilityTree {
    kind: TreeKind,
    n: usize,
    levels: Vec<Vec<NodeReliability>>,
    // GA only: LLR mean per node
    means: Option<Vec<Vec<f64>>>,
}

impl ReliabilityTree {
    /// Assembles a tree from precomputed levels.
    pub fn from_levels(kind: TreeKind, levels: Vec<Vec<NodeReliability>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidParameter("tree needs at least a root".into()));
        }
        for (t, level) in levels.iter().enumerate() {
            if level.len() != 1 << t {
                return Err(Error::LengthMismatch {
                    expected: 1 << t,
                    got: level.len(),
                });
            }
        }
        Ok(Self {
            kind,
            n: levels.len() - 1,
            levels,
            means: None,
        })
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn node(&self, t: usize, j: usize) -> &NodeReliability {
        &self.levels[t][j]
    }

    pub fn level(&self, t: usize) -> &[NodeReliability] {
        &self.levels[t]
    }

    pub fn leaves(&self) -> &[NodeReliability] {
        &self.levels[self.n]
    }

    /// GA LLR mean of node `(t, j)`, if this is a GA tree.
    pub fn mean_llr(&self, t: usize, j: usize) -> Option<f64> {
        self.means.as_ref().map(|m| m[t][j])
    }

    /// Error-probability lower figure of the best leaf below `(t, j)`, where
    /// the kind of tree makes it computable.
    pub fn best_descendant_e_lower(&self, t: usize, j: usize) -> Option<f64> {
        let depth = self.n - t;
        match self.kind {
            TreeKind::BecExact => {
                let mut z = self.levels[t][j].z;
                for _ in 0..depth {
                    z *= z;
                }
                Some(z / 2.0)
            }
            TreeKind::GaAwgn => {
                let m = self.mean_llr(t, j)? * (1u64 << depth) as f64;
                Some(ga::error_probability(m))
            }
            TreeKind::McGenie => None,
        }
    }
}

fn bec_node(z: f64, zc: f64) -> NodeReliability {
    NodeReliability {
        z,
        e_lower: z / 2.0,
        e_upper: z / 2.0,
        e_lower_gap: zc / 2.0,
    }
}

/// Exact Bhattacharyya tree of `BEC(p)`: children `(2z - z^2, z^2)`.
///
/// The complement `1 - z` is propagated by the dual recursion
/// `((1-z)^2, 2(1-z) - (1-z)^2)` rather than by subtraction.
pub fn bec_z_tree(p: f64, n: usize) -> Result<ReliabilityTree> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidChannel(format!("erasure probability {p}")));
    }
    let mut levels = Vec::with_capacity(n + 1);
    let mut z = vec![p];
    let mut zc = vec![1.0 - p];
    levels.push(vec![bec_node(p, 1.0 - p)]);
    for _ in 0..n {
        let mut nz = Vec::with_capacity(2 * z.len());
        let mut nzc = Vec::with_capacity(2 * z.len());
        for (&a, &c) in z.iter().zip(&zc) {
            nz.push(2.0 * a - a * a);
            nzc.push(c * c);
            nz.push(a * a);
            nzc.push(2.0 * c - c * c);
        }
        levels.push(nz.iter().zip(&nzc).map(|(&a, &c)| bec_node(a, c)).collect());
        z = nz;
        zc = nzc;
    }
    ReliabilityTree::from_levels(TreeKind::BecExact, levels)
}

fn ga_node(m: f64) -> NodeReliability {
    let e = ga::error_probability(m);
    NodeReliability {
        z: (-m / 4.0).exp(),
        e_lower: e,
        e_upper: e,
        e_lower_gap: ga::error_probability_gap(m),
    }
}

/// Gaussian-approximation tree for BPSK over AWGN with noise deviation
/// `sigma`; the root LLR mean is `2 / sigma^2`.
pub fn ga_reliability_tree(sigma: f64, n: usize) -> Result<ReliabilityTree> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidChannel(format!("noise deviation {sigma}")));
    }
    let mut means = vec![vec![2.0 / (sigma * sigma)]];
    for t in 0..n {
        let prev = &means[t];
        let mut next = Vec::with_capacity(2 * prev.len());
        for (j, &m) in prev.iter().enumerate() {
            let (minus, plus) = ga::children(m).ok_or(Error::GaInversion {
                level: t,
                index: j + 1,
            })?;
            next.push(minus);
            next.push(plus);
        }
        means.push(next);
    }
    let levels = means
        .iter()
        .map(|l| l.iter().map(|&m| ga_node(m)).collect())
        .collect();
    let mut tree = ReliabilityTree::from_levels(TreeKind::GaAwgn, levels)?;
    tree.means = Some(means);
    Ok(tree)
}
