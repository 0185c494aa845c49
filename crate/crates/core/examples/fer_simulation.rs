//! Seeded FER sweep over a BEC, printed as the same CSV the CLI writes.

use relaxed_polar::analysis::{bec_z_tree, construct_relaxed, Scenario, Target, Thresholds};
use relaxed_polar::sim::{fer_csv, simulate_fer, ChannelModel, DecoderKind, FerConfig};

fn main() -> relaxed_polar::Result<()> {
    let tree = bec_z_tree(0.4, 10)?;
    let thr = Thresholds::from_bec_z(1e-6)?;
    let code = construct_relaxed(&tree, Scenario::Ac, &thr, Target::Rate(0.5))?.code;
    let cfg = FerConfig::new(20_000, 1);
    let records = [0.30, 0.35, 0.40, 0.45]
        .iter()
        .map(|&p| simulate_fer(&code, &ChannelModel::Bec { p }, DecoderKind::Sc, &cfg))
        .collect::<relaxed_polar::Result<Vec<_>>>()?;
    print!("{}", fer_csv(&records));
    Ok(())
}
