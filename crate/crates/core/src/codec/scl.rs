//! Relaxed successive-cancellation list decoding with optional CRC selection.

use std::sync::Arc;

use super::encoder::bit_reverse_permute;
use super::{boxplus, g_update, DecodeResult};
use crate::analysis::code::CodeSpec;
use crate::error::{Error, Result};

// Levels are shared between forked paths and copied on first write.
#[derive(Clone)]
struct Path {
    alpha: Vec<Arc<Vec<f64>>>,
    beta: Vec<Arc<Vec<u8>>>,
    u: Vec<u8>,
    metric: f64,
}

/// Penalty for deciding `bit` against LLR `l`.
#[inline]
fn penalty(l: f64, bit: u8) -> f64 {
    if bit == 0 {
        (-l).max(0.0)
    } else {
        l.max(0.0)
    }
}

/// List decoder. With list size 1 it reproduces [`super::rscd_decode`].
pub struct ListDecoder<'c> {
    code: &'c CodeSpec,
    list_size: usize,
    paths: Vec<Path>,
}

impl<'c> ListDecoder<'c> {
    pub fn new(code: &'c CodeSpec, list_size: usize) -> Result<Self> {
        if list_size == 0 {
            return Err(Error::InvalidParameter("list size must be at least 1".into()));
        }
        Ok(Self {
            code,
            list_size,
            paths: Vec::new(),
        })
    }

    pub fn decode(&mut self, llr: &[f64]) -> Result<DecodeResult> {
        let n = self.code.n();
        if llr.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: llr.len(),
            });
        }
        let mut alpha: Vec<Arc<Vec<f64>>> = (0..=n).map(|t| Arc::new(vec![0.0; 1 << (n - t)])).collect();
        alpha[0] = Arc::new(bit_reverse_permute(llr));
        self.paths = vec![Path {
            alpha,
            beta: (0..=n).map(|t| Arc::new(vec![0; 1 << (n - t)])).collect(),
            u: vec![0; 1 << n],
            metric: 0.0,
        }];
        self.node(0, 0);
        Ok(self.select())
    }

    fn select(&mut self) -> DecodeResult {
        let mut order: Vec<usize> = (0..self.paths.len()).collect();
        order.sort_by(|&a, &b| self.paths[a].metric.total_cmp(&self.paths[b].metric));
        let info = |p: &Path| -> Vec<u8> { self.code.good_set().iter().map(|&i| p.u[i]).collect() };
        let (rank, crc_ok) = match self.code.crc() {
            Some(crc) => match order.iter().position(|&p| crc.check(&info(&self.paths[p]))) {
                Some(r) => (r, Some(true)),
                None => (0, Some(false)),
            },
            None => (0, None),
        };
        let best = &self.paths[order[rank]];
        DecodeResult {
            u_hat: best.u.clone(),
            info_bits: info(best),
            crc_ok,
            list_rank: Some(rank + 1),
        }
    }

    fn node(&mut self, t: usize, j: usize) {
        let n = self.code.n();
        let len = 1usize << (n - t);
        let base = j * len;
        if t == n || self.code.map().is_relaxed(t, j) {
            for k in 0..len {
                self.decide(base + k, t, k);
            }
            return;
        }
        let half = len / 2;
        for p in &mut self.paths {
            let parent = Arc::clone(&p.alpha[t]);
            let child = Arc::make_mut(&mut p.alpha[t + 1]);
            for k in 0..half {
                child[k] = boxplus(parent[k], parent[k + half]);
            }
        }
        self.node(t + 1, 2 * j);
        for p in &mut self.paths {
            let left = Arc::clone(&p.beta[t + 1]);
            let own = Arc::make_mut(&mut p.beta[t]);
            own[..half].copy_from_slice(&left);
            let parent = Arc::clone(&p.alpha[t]);
            let child = Arc::make_mut(&mut p.alpha[t + 1]);
            for k in 0..half {
                child[k] = g_update(parent[k], parent[k + half], own[k]);
            }
        }
        self.node(t + 1, 2 * j + 1);
        for p in &mut self.paths {
            let right = Arc::clone(&p.beta[t + 1]);
            let own = Arc::make_mut(&mut p.beta[t]);
            for k in 0..half {
                own[k] ^= right[k];
                own[k + half] = right[k];
            }
        }
    }

    fn set_bit(p: &mut Path, i: usize, t: usize, k: usize, bit: u8) {
        p.u[i] = bit;
        Arc::make_mut(&mut p.beta[t])[k] = bit;
    }

    /// Decides leaf `i`, whose LLR sits at `alpha[t][k]` of every path.
    fn decide(&mut self, i: usize, t: usize, k: usize) {
        if !self.code.is_info(i) {
            for p in &mut self.paths {
                p.metric += penalty(p.alpha[t][k], 0);
                Self::set_bit(p, i, t, k, 0);
            }
            return;
        }
        let mut cands: Vec<(usize, u8, f64)> = Vec::with_capacity(2 * self.paths.len());
        for (idx, p) in self.paths.iter().enumerate() {
            let l = p.alpha[t][k];
            cands.push((idx, 0, p.metric + penalty(l, 0)));
            cands.push((idx, 1, p.metric + penalty(l, 1)));
        }
        cands.sort_by(|a, b| a.2.total_cmp(&b.2));
        cands.truncate(self.list_size);
        let mut uses = vec![0usize; self.paths.len()];
        for c in &cands {
            uses[c.0] += 1;
        }
        let mut old: Vec<Option<Path>> = self.paths.drain(..).map(Some).collect();
        for (idx, bit, metric) in cands {
            let mut p = if uses[idx] > 1 {
                uses[idx] -= 1;
                old[idx].as_ref().expect("path still present").clone()
            } else {
                old[idx].take().expect("path still present")
            };
            p.metric = metric;
            Self::set_bit(&mut p, i, t, k, bit);
            self.paths.push(p);
        }
    }
}

/// Relaxed SC-list decoding with list size `list_size`.
pub fn rscl_decode(llr: &[f64], code: &CodeSpec, list_size: usize) -> Result<DecodeResult> {
    ListDecoder::new(code, list_size)?.decode(llr)
}
