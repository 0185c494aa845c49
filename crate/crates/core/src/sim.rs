//! Monte-Carlo frame/bit error simulation.
//!
//! Trial `k` of a run with seed `s` draws everything (payload, noise, tie
//! breaks) from ChaCha8 seeded with `s` on stream `k`, so results do not
//! depend on how trials are spread over threads. Early stopping is checked
//! only between fixed-size batches.

use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::code::CodeSpec;
use crate::codec::{encode, ListDecoder, ScDecoder};
use crate::error::{Error, Result};

/// Header line of the FER CSV format.
pub const FER_CSV_VERSION: &str = "# relaxed-polar fer v1";

/// Channel used to generate LLRs from a codeword.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ChannelModel {
    Noiseless,
    Bec { p: f64 },
    /// BPSK `0 -> +1` with noise deviation `sigma`.
    Awgn { sigma: f64 },
}

impl ChannelModel {
    /// The sweep coordinate reported in CSV rows: `p`, SNR in dB, or 0.
    pub fn parameter(&self) -> f64 {
        match *self {
            ChannelModel::Noiseless => 0.0,
            ChannelModel::Bec { p } => p,
            ChannelModel::Awgn { sigma } => -20.0 * sigma.log10(),
        }
    }

    /// Writes the channel LLRs for codeword `x` into `out`.
    pub fn llrs<R: RngCore + ?Sized>(&self, x: &[u8], rng: &mut R, out: &mut Vec<f64>) {
        out.clear();
        let sign = |b: u8| if b == 0 { 1.0 } else { -1.0 };
        match *self {
            ChannelModel::Noiseless => out.extend(x.iter().map(|&b| sign(b) * f64::INFINITY)),
            ChannelModel::Bec { p } => out.extend(x.iter().map(|&b| {
                if rng.random::<f64>() < p {
                    0.0
                } else {
                    sign(b) * f64::INFINITY
                }
            })),
            ChannelModel::Awgn { sigma } => {
                let scale = 2.0 / (sigma * sigma);
                out.extend(x.iter().map(|&b| {
                    let n: f64 = rng.sample(StandardNormal);
                    scale * (sign(b) + sigma * n)
                }))
            }
        }
    }
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecoderKind {
    Sc,
    Sscd,
    List(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FerConfig {
    pub trials: u64,
    pub seed: u64,
    /// Stop after the batch in which this many frame errors are reached.
    pub early_stop_errors: Option<u64>,
    pub batch: u64,
}

impl FerConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            early_stop_errors: Some(100),
            batch: 256,
        }
    }
}

/// Aggregate of one simulated operating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub snr_or_p: f64,
    pub trials: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub info_bits_total: u64,
    pub fer: f64,
    pub ber: f64,
    /// Seconds; excluded from the determinism contract.
    pub wall_time: f64,
}

impl TrialRecord {
    pub const CSV_COLUMNS: &'static str =
        "snr_or_p,trials,frame_errors,bit_errors,info_bits_total,fer,ber,wall_time";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:e},{:e},{:.3}",
            self.snr_or_p,
            self.trials,
            self.frame_errors,
            self.bit_errors,
            self.info_bits_total,
            self.fer,
            self.ber,
            self.wall_time
        )
    }

    /// Standard error of the FER estimate.
    pub fn fer_std_error(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        (self.fer * (1.0 - self.fer) / self.trials as f64).sqrt()
    }
}

/// Full CSV document for a set of records.
pub fn fer_csv(records: &[TrialRecord]) -> String {
    let mut s = format!("{FER_CSV_VERSION}\n{}\n", TrialRecord::CSV_COLUMNS);
    for r in records {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

enum Engine<'c> {
    Sc(ScDecoder<'c>, bool),
    List(ListDecoder<'c>),
}

#[derive(Default, Clone, Copy)]
struct Counts {
    frames: u64,
    bits: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            frames: self.frames + o.frames,
            bits: self.bits + o.bits,
        }
    }
}

fn one_trial(
    code: &CodeSpec,
    channel: &ChannelModel,
    engine: &mut Engine<'_>,
    rng: &mut ChaCha8Rng,
    llr: &mut Vec<f64>,
) -> Result<Counts> {
    let payload: Vec<u8> = (0..code.payload_len()).map(|_| rng.random::<bool>() as u8).collect();
    let u = code.place_payload(&payload)?;
    let x = encode(&u, code.map())?;
    channel.llrs(&x, rng, llr);
    let r = match engine {
        Engine::Sc(dec, false) => dec.decode(llr, Some(rng))?,
        Engine::Sc(dec, true) => dec.decode_sscd(llr, Some(rng))?,
        Engine::List(dec) => dec.decode(llr)?,
    };
    let bits = payload
        .iter()
        .zip(&r.info_bits)
        .filter(|(a, b)| a != b)
        .count() as u64;
    Ok(Counts {
        frames: (bits > 0) as u64,
        bits,
    })
}

/// Runs a seeded, parallel FER/BER measurement of `code` over `channel`.
pub fn simulate_fer(
    code: &CodeSpec,
    channel: &ChannelModel,
    decoder: DecoderKind,
    cfg: &FerConfig,
) -> Result<TrialRecord> {
    if cfg.trials == 0 || cfg.batch == 0 {
        return Err(Error::InvalidParameter("trials and batch size must be positive".into()));
    }
    if let DecoderKind::List(0) = decoder {
        return Err(Error::InvalidParameter("list size must be at least 1".into()));
    }
    let start = Instant::now();
    let mut total = Counts::default();
    let mut done = 0u64;
    while done < cfg.trials {
        let end = (done + cfg.batch).min(cfg.trials);
        let batch = (done..end)
            .into_par_iter()
            .map_init(
                || {
                    let engine = match decoder {
                        DecoderKind::Sc => Engine::Sc(ScDecoder::new(code), false),
                        DecoderKind::Sscd => Engine::Sc(ScDecoder::new(code), true),
                        DecoderKind::List(l) => {
                            Engine::List(ListDecoder::new(code, l).expect("list size checked"))
                        }
                    };
                    (engine, Vec::new())
                },
                |(engine, llr), k| {
                    let mut rng = trial_rng(cfg.seed, k);
                    one_trial(code, channel, engine, &mut rng, llr)
                },
            )
            .try_reduce(Counts::default, |a, b| Ok(a + b))?;
        total = total + batch;
        done = end;
        if cfg.early_stop_errors.is_some_and(|e| total.frames >= e) {
            break;
        }
    }
    let info_bits_total = done * code.payload_len() as u64;
    Ok(TrialRecord {
        snr_or_p: channel.parameter(),
        trials: done,
        frame_errors: total.frames,
        bit_errors: total.bits,
        info_bits_total,
        fer: total.frames as f64 / done as f64,
        ber: if info_bits_total == 0 {
            0.0
        } else {
            total.bits as f64 / info_bits_total as f64
        },
        wall_time: start.elapsed().as_secs_f64(),
    })
}
