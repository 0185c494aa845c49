use rayon::prelude::*;

use super::code::CodeSpec;
use super::map::RelaxationMap;
use super::tree::{NodeReliability, ReliabilityTree, TreeKind};
use crate::codec::ScDecoder;
use crate::error::{Error, Result};
use crate::sim::{trial_rng, ChannelModel};

const GENIE_BATCH: u64 = 4096;

/// Per-index genie-aided error rates of the code with relaxation `map`,
/// over `trials` all-zero frames. Erasure ties are broken at random.
pub fn mc_genie_bit_error_with_map(
    channel: &ChannelModel,
    map: &RelaxationMap,
    trials: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let code = CodeSpec::new(map.clone(), [])?;
    let len = code.len();
    let zeros = vec![0u8; len];
    let batches = trials.div_ceil(GENIE_BATCH);
    let errors = (0..batches)
        .into_par_iter()
        .map(|b| -> Result<Vec<u64>> {
            let mut dec = ScDecoder::new(&code);
            let mut errors = vec![0u64; len];
            let mut llr = Vec::with_capacity(len);
            for k in b * GENIE_BATCH..((b + 1) * GENIE_BATCH).min(trials) {
                let mut rng = trial_rng(seed, k);
                channel.llrs(&zeros, &mut rng, &mut llr);
                dec.genie(&llr, &zeros, &mut rng, &mut errors)?;
            }
            Ok(errors)
        })
        .try_reduce(
            || vec![0u64; len],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    Ok(errors.iter().map(|&e| e as f64 / trials as f64).collect())
}

/// Genie-aided error-rate estimates of the fully polarized code of length
/// `2^n`.
pub fn mc_genie_bit_error(channel: &ChannelModel, n: usize, trials: u64, seed: u64) -> Result<Vec<f64>> {
    mc_genie_bit_error_with_map(channel, &RelaxationMap::fully_polarized(n), trials, seed)
}

/// Reliability tree whose level `t` holds the genie estimates at length `2^t`.
/// Upper and lower figures coincide with the estimate, and `z` is set to
/// `2 e` as a proxy.
pub fn mc_genie_tree(channel: &ChannelModel, n: usize, trials: u64, seed: u64) -> Result<ReliabilityTree> {
    let mut levels = Vec::with_capacity(n + 1);
    for t in 0..=n {
        let level_seed = seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let est = mc_genie_bit_error(channel, t, trials, level_seed)?;
        levels.push(
            est.into_iter()
                .map(|e| NodeReliability {
                    z: (2.0 * e).min(1.0),
                    e_lower: e,
                    e_upper: e,
                    e_lower_gap: 0.5 - e,
                })
                .collect(),
        );
    }
    ReliabilityTree::from_levels(TreeKind::McGenie, levels)
}
