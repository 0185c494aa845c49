//! Command-line front end. Exit codes: 0 success, 1 invalid configuration or
//! I/O failure, 2 verification failure, 3 resource cap hit.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::code::CodeSpec;
use crate::analysis::construct::{
    construct_fp, construct_mrp, construct_relaxed, rate_loss, MrpMode, Scenario, Target,
};
use crate::analysis::genie::mc_genie_tree;
use crate::analysis::thresholds::{thresholds_from_target, EntropyRule};
use crate::analysis::tree::{bec_z_tree, ga_reliability_tree, ReliabilityTree};
use crate::bounds::{bec_bounds_report, bounds_csv, measured_cr, AsymptoticParams, LatencyReport};
use crate::channels::AwgnChannel;
use crate::codec::crc::CrcConfig;
use crate::error::{Error, Result};
use crate::sim::{fer_csv, simulate_fer, ChannelModel, DecoderKind, FerConfig};
use crate::verify::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "relaxed-polar", version, about = "Relaxed polar code construction, bounds and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write code.json, map.json and summary.json.
    Construct(ConstructArgs),
    /// Evaluate complexity-reduction bounds over an erasure-probability grid.
    Bounds(BoundsArgs),
    /// Monte-Carlo FER/BER of a constructed code.
    Fer(FerArgs),
    /// Run the built-in self-check suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelKind {
    Bec,
    Awgn,
    Noiseless,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioArg {
    Fp,
    Gc,
    Bc,
    Ac,
    GcMrp,
    AcMrp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reliability {
    /// Exact Bhattacharyya tree (erasure) or Gaussian approximation (AWGN).
    Auto,
    /// Monte-Carlo genie estimate; needs --trials and --seed.
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecoderArg {
    Sc,
    Sscd,
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub channel: ChannelKind,
    /// Erasure probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// SNR in dB, 10 log10(1/sigma^2).
    #[arg(long)]
    pub snr: Option<f64>,
    /// AWGN capacity in bits; the SNR is chosen to match it.
    #[arg(long)]
    pub capacity: Option<f64>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "fer_target")]
    pub rate: Option<f64>,
    #[arg(long)]
    pub fer_target: Option<f64>,
    #[arg(long, value_enum, default_value = "fp")]
    pub scenario: ScenarioArg,
    #[arg(long, value_enum, default_value = "auto")]
    pub reliability: Reliability,
    /// Reserve 16 good-set positions for a CRC.
    #[arg(long)]
    pub crc: bool,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub fer_target: f64,
    /// Erasure probabilities (comma separated); default 0.1, 0.2, ..., 0.9.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FerArgs {
    /// code.json written by `construct`.
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long, value_enum)]
    pub channel: ChannelKind,
    /// Erasure probabilities to sweep (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    /// SNR points in dB to sweep (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub snr: Vec<f64>,
    #[arg(long, value_enum, default_value = "sc")]
    pub decoder: DecoderArg,
    #[arg(long, default_value_t = 32)]
    pub list_size: usize,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Stop a point after this many frame errors; 0 disables early stopping.
    #[arg(long, default_value_t = 100)]
    pub early_stop_errors: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// JSON report path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Construction summary written next to the code files.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructSummary {
    pub channel: String,
    pub parameter: f64,
    pub n: usize,
    pub len: usize,
    pub scenario: ScenarioArg,
    pub rate: f64,
    pub rate_fp: f64,
    pub rate_loss: f64,
    pub info_bits: usize,
    pub crc: bool,
    pub estimated_fer: f64,
    pub good_threshold: Option<f64>,
    pub bad_threshold: Option<f64>,
    pub cr: f64,
    pub relaxed_roots: usize,
    pub latency: LatencyReport,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Construct(a) => {
            let summary = cmd_construct(&a)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(0)
        }
        Command::Bounds(a) => cmd_bounds(&a).map(|_| 0),
        Command::Fer(a) => cmd_fer(&a).map(|_| 0),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn awgn_from(snr: Option<f64>, capacity: Option<f64>) -> Result<AwgnChannel> {
    match (snr, capacity) {
        (Some(s), None) => AwgnChannel::from_snr_db(s),
        (None, Some(c)) => AwgnChannel::from_capacity(c),
        _ => Err(Error::InvalidParameter("AWGN needs exactly one of --snr or --capacity".into())),
    }
}

/// Builds the code described by `a` and writes its files into `a.out`.
pub fn cmd_construct(a: &ConstructArgs) -> Result<ConstructSummary> {
    let target = match (a.rate, a.fer_target) {
        (Some(r), None) => Target::Rate(r),
        (None, Some(e)) => Target::Fer(e),
        _ => return Err(Error::InvalidParameter("give exactly one of --rate or --fer-target".into())),
    };
    let mc = a.reliability == Reliability::Mc;
    if mc && (a.trials.is_none() || a.seed.is_none()) {
        return Err(Error::InvalidParameter("Monte-Carlo reliability needs --trials and --seed".into()));
    }
    let (tree, name, parameter, rule): (ReliabilityTree, &str, f64, EntropyRule) = match a.channel {
        ChannelKind::Bec => {
            if a.snr.is_some() || a.capacity.is_some() {
                return Err(Error::InvalidParameter("erasure channel takes only --p".into()));
            }
            let p = a.p.ok_or_else(|| Error::InvalidParameter("--p is required".into()))?;
            let tree = if mc {
                mc_genie_tree(&ChannelModel::Bec { p }, a.n, a.trials.unwrap(), a.seed.unwrap())?
            } else {
                bec_z_tree(p, a.n)?
            };
            (tree, "bec", p, EntropyRule::Erasure)
        }
        ChannelKind::Awgn => {
            if a.p.is_some() {
                return Err(Error::InvalidParameter("AWGN does not take --p".into()));
            }
            let ch = awgn_from(a.snr, a.capacity)?;
            let tree = if mc {
                let model = ChannelModel::Awgn { sigma: ch.sigma() };
                mc_genie_tree(&model, a.n, a.trials.unwrap(), a.seed.unwrap())?
            } else {
                ga_reliability_tree(ch.sigma(), a.n)?
            };
            (tree, "awgn", ch.snr_db(), EntropyRule::Binary)
        }
        ChannelKind::Noiseless => {
            return Err(Error::InvalidParameter("cannot construct for a noiseless channel".into()))
        }
    };

    let fp = construct_fp(&tree, target)?;
    if fp.fer_unreachable {
        return Err(Error::InvalidTarget(format!(
            "no bit-channel fits FER target {}",
            a.fer_target.unwrap_or_default()
        )));
    }
    let len = 1usize << a.n;
    // the FER/rate pair that sets eg = E / (R N)
    let (fer, rate) = match target {
        Target::Fer(e) => (e, fp.code.rate()),
        Target::Rate(r) => (fp.good_set_ep(), r),
    };
    let mut thresholds = None;
    let (code, estimated_fer) = match a.scenario {
        ScenarioArg::Fp => (fp.code.clone(), fp.good_set_ep()),
        ScenarioArg::GcMrp | ScenarioArg::AcMrp => {
            let mode = if a.scenario == ScenarioArg::GcMrp {
                MrpMode::GcMrp
            } else {
                MrpMode::AcMrp
            };
            (construct_mrp(&fp.code, mode)?, fp.good_set_ep())
        }
        s => {
            let scenario = match s {
                ScenarioArg::Gc => Scenario::Gc,
                ScenarioArg::Bc => Scenario::Bc,
                _ => Scenario::Ac,
            };
            if fer <= 0.0 || rate <= 0.0 {
                return Err(Error::InvalidTarget("relaxation needs a positive rate and FER".into()));
            }
            let thr = thresholds_from_target(fer.min(0.999), rate, len, rule)?;
            thresholds = Some(thr);
            let rp = construct_relaxed(&tree, scenario, &thr, target)?;
            if rp.fer_unreachable {
                return Err(Error::InvalidTarget("relaxed construction admits no bit-channel".into()));
            }
            let ep = rp.good_set_ep();
            (rp.code, ep)
        }
    };
    let crc = a.crc.then(CrcConfig::default);
    if a.crc && code.good_set().len() < 16 {
        return Err(Error::InvalidParameter("good set is smaller than the CRC".into()));
    }
    let code = code.with_crc(crc);
    let fp_code = fp.code.clone().with_crc(crc);

    std::fs::create_dir_all(&a.out)?;
    std::fs::write(a.out.join("map.json"), code.map().to_json())?;
    std::fs::write(a.out.join("code.json"), code.to_json("map.json"))?;
    let summary = ConstructSummary {
        channel: name.to_string(),
        parameter,
        n: a.n,
        len,
        scenario: a.scenario,
        rate: code.rate(),
        rate_fp: fp_code.rate(),
        rate_loss: rate_loss(&fp_code, &code)?,
        info_bits: code.payload_len(),
        crc: a.crc,
        estimated_fer,
        good_threshold: thresholds.map(|t| t.eg),
        bad_threshold: thresholds.map(|t| t.eb),
        cr: measured_cr(code.map()),
        relaxed_roots: code.map().relaxed_roots().len(),
        latency: LatencyReport::new(&fp_code, &code),
    };
    std::fs::write(a.out.join("summary.json"), serde_json::to_string_pretty(&summary)?)?;
    Ok(summary)
}

/// Evaluates the bounds grid and writes it in the requested format.
pub fn cmd_bounds(a: &BoundsArgs) -> Result<String> {
    let grid: Vec<f64> = if a.p.is_empty() {
        (1..=9).map(|k| k as f64 / 10.0).collect()
    } else {
        a.p.clone()
    };
    let rows = grid
        .par_iter()
        .map(|&p| bec_bounds_report(p, a.n, a.fer_target, AsymptoticParams::default()))
        .collect::<Result<Vec<_>>>()?;
    for r in &rows {
        for v in &r.violations {
            eprintln!("warning: p = {}: sandwich violation {v}", r.p);
        }
    }
    let text = match a.format {
        Format::Csv => bounds_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    write_or_print(a.out.as_deref(), &text)?;
    Ok(text)
}

/// Runs the FER sweep and writes it in the requested format.
pub fn cmd_fer(a: &FerArgs) -> Result<String> {
    if a.trials == 0 {
        return Err(Error::InvalidParameter("--trials must be at least 1".into()));
    }
    let code = CodeSpec::load(&a.code)?;
    let channels: Vec<ChannelModel> = match a.channel {
        ChannelKind::Bec => {
            if a.p.is_empty() || !a.snr.is_empty() {
                return Err(Error::InvalidParameter("erasure sweeps take --p only".into()));
            }
            a.p.iter().map(|&p| ChannelModel::Bec { p }).collect()
        }
        ChannelKind::Awgn => {
            if a.snr.is_empty() || !a.p.is_empty() {
                return Err(Error::InvalidParameter("AWGN sweeps take --snr only".into()));
            }
            a.snr
                .iter()
                .map(|&s| AwgnChannel::from_snr_db(s).map(|c| ChannelModel::Awgn { sigma: c.sigma() }))
                .collect::<Result<_>>()?
        }
        ChannelKind::Noiseless => vec![ChannelModel::Noiseless],
    };
    let decoder = match a.decoder {
        DecoderArg::Sc => DecoderKind::Sc,
        DecoderArg::Sscd => DecoderKind::Sscd,
        DecoderArg::List => DecoderKind::List(a.list_size),
    };
    let mut cfg = FerConfig::new(a.trials, a.seed);
    cfg.early_stop_errors = (a.early_stop_errors > 0).then_some(a.early_stop_errors);
    let records = channels
        .iter()
        .map(|ch| simulate_fer(&code, ch, decoder, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let text = match a.format {
        Format::Csv => fer_csv(&records),
        Format::Json => serde_json::to_string_pretty(&records)? + "\n",
    };
    write_or_print(a.out.as_deref(), &text)?;
    Ok(text)
}

/// Runs a verification suite; returns the exit code (2 on any failure).
pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let report = run_suite(suite, a.seed)?;
    write_or_print(a.out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
    for c in &report.checks {
        eprintln!(
            "{} {} ({} cases)",
            if c.pass() { "PASS" } else { "FAIL" },
            c.name,
            c.cases
        );
    }
    Ok(if report.pass { 0 } else { 2 })
}
