//! Code constructions: fully polarized (FP), relaxed (GC, BC, AC) and the
//! modified relaxed variants that relax the rate-0 and rate-1 subtrees of an
//! existing FP code.

use serde::{Deserialize, Serialize};

use super::code::CodeSpec;
use super::map::RelaxationMap;
use super::thresholds::Thresholds;
use super::tree::ReliabilityTree;
use crate::error::{Error, Result};

/// How the good set is sized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Target {
    /// Keep `round(R N)` bit-channels.
    Rate(f64),
    /// Keep the largest prefix whose summed upper EP stays within `E`.
    Fer(f64),
}

/// Which nodes may be relaxed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    Gc,
    Bc,
    Ac,
}

impl Scenario {
    fn good(self) -> bool {
        matches!(self, Scenario::Gc | Scenario::Ac)
    }

    fn bad(self) -> bool {
        matches!(self, Scenario::Bc | Scenario::Ac)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MrpMode {
    /// Relax rate-1 subtrees only.
    GcMrp,
    /// Relax rate-1 and rate-0 subtrees.
    AcMrp,
}

/// A constructed code together with the per-leaf EP figures used to pick it.
#[derive(Debug, Clone)]
pub struct Construction {
    pub code: CodeSpec,
    /// Upper EP of every leaf, after relaxed leaves inherit from their
    /// relaxed root.
    pub leaf_ep: Vec<f64>,
    /// Set when a FER target could not admit even one bit-channel.
    pub fer_unreachable: bool,
}

impl Construction {
    /// Summed leaf EP over the good set.
    pub fn good_set_ep(&self) -> f64 {
        self.code.good_set().iter().map(|&i| self.leaf_ep[i]).sum()
    }
}

/// Leaf indices sorted by ascending EP; equal EPs put the larger index first.
pub fn reliability_order(ep: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..ep.len()).collect();
    order.sort_by(|&a, &b| ep[a].total_cmp(&ep[b]).then(b.cmp(&a)));
    order
}

/// Picks the good set from leaf EPs. Returns the set and the unreachable flag.
pub fn select_good_set(ep: &[f64], target: Target) -> Result<(Vec<usize>, bool)> {
    let order = reliability_order(ep);
    match target {
        Target::Rate(r) => {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidTarget(format!("rate {r} outside [0, 1]")));
            }
            let k = (r * ep.len() as f64).round() as usize;
            Ok((order[..k].to_vec(), false))
        }
        Target::Fer(e) => {
            if !(e > 0.0) {
                return Err(Error::InvalidTarget(format!("FER target {e} must be positive")));
            }
            let mut acc = 0.0;
            let mut k = 0;
            for &i in &order {
                if acc + ep[i] > e {
                    break;
                }
                acc += ep[i];
                k += 1;
            }
            Ok((order[..k].to_vec(), k == 0))
        }
    }
}

/// Fully polarized construction.
pub fn construct_fp(tree: &ReliabilityTree, target: Target) -> Result<Construction> {
    let leaf_ep: Vec<f64> = tree.leaves().iter().map(|r| r.e_upper).collect();
    let (good, fer_unreachable) = select_good_set(&leaf_ep, target)?;
    Ok(Construction {
        code: CodeSpec::new(RelaxationMap::fully_polarized(tree.n()), good)?,
        leaf_ep,
        fer_unreachable,
    })
}

/// Whether relaxing a bad node at `(t, j)` keeps every good descendant
/// available.
fn bad_relaxation_is_safe(tree: &ReliabilityTree, t: usize, j: usize, thr: &Thresholds) -> bool {
    match tree.best_descendant_e_lower(t, j) {
        Some(best) => best > thr.eg,
        None => {
            // Bhattacharyya-domain depth rule for trees without a closed-form
            // best descendant.
            let (tg, tb) = (thr.z_good(), thr.z_bad());
            if !(tg > 0.0 && tb > 0.0 && tb < 1.0) {
                return tg <= 0.0;
            }
            let depth = (tg.log2() / tb.log2()).log2().ceil();
            ((tree.n() - t) as f64) <= depth
        }
    }
}

/// Top-down relaxation sweep. Returns the map and the relaxed-adjusted leaf
/// EPs. The root is never relaxed.
pub fn relaxation_map(
    tree: &ReliabilityTree,
    scenario: Scenario,
    thr: &Thresholds,
) -> (RelaxationMap, Vec<f64>) {
    let n = tree.n();
    let mut map = RelaxationMap::fully_polarized(n);
    let mut ep = vec![tree.node(0, 0).e_upper];
    for t in 1..=n {
        let mut next = Vec::with_capacity(1 << t);
        for j in 0..1usize << t {
            let node = tree.node(t, j);
            if map.is_relaxed(t - 1, j / 2) {
                next.push(ep[j / 2]);
                continue;
            }
            let good = scenario.good() && node.e_upper < thr.eg;
            let bad = scenario.bad()
                && node.e_lower_gap < thr.eb_gap
                && bad_relaxation_is_safe(tree, t, j, thr);
            if good || bad {
                map.relax_subtree(t, j);
            }
            next.push(node.e_upper);
        }
        ep = next;
    }
    (map, ep)
}

/// Relaxed construction: relaxation sweep followed by good-set selection on
/// the relaxed-adjusted leaf EPs.
pub fn construct_relaxed(
    tree: &ReliabilityTree,
    scenario: Scenario,
    thr: &Thresholds,
    target: Target,
) -> Result<Construction> {
    thr.check_ordering()?;
    let (map, leaf_ep) = relaxation_map(tree, scenario, thr);
    let (good, fer_unreachable) = select_good_set(&leaf_ep, target)?;
    Ok(Construction {
        code: CodeSpec::new(map, good)?,
        leaf_ep,
        fer_unreachable,
    })
}

/// Relaxes every maximal rate-1 subtree of `fp` (and rate-0 subtree for
/// [`MrpMode::AcMrp`]), keeping its good set. The root itself is relaxed
/// when the whole code qualifies.
pub fn construct_mrp(fp: &CodeSpec, mode: MrpMode) -> Result<CodeSpec> {
    let rates = fp.subtree_rates();
    let mut map = RelaxationMap::fully_polarized(fp.n());
    for t in 0..fp.n() {
        for j in 0..1usize << t {
            if map.is_relaxed(t, j) {
                continue;
            }
            let zero = mode == MrpMode::AcMrp && rates.rate0[t][j];
            if rates.rate1[t][j] || zero {
                map.relax_subtree(t, j);
            }
        }
    }
    fp.with_map(map)
}

/// `R_FP - R_RP`; may be negative.
pub fn rate_loss(fp: &CodeSpec, rp: &CodeSpec) -> Result<f64> {
    if fp.n() != rp.n() {
        return Err(Error::DepthMismatch {
            expected: fp.n(),
            got: rp.n(),
        });
    }
    Ok(fp.rate() - rp.rate())
}
