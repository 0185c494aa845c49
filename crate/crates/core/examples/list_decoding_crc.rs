//! CRC-aided list decoding of a relaxed code against plain SC.

use relaxed_polar::analysis::{construct_fp, construct_mrp, ga_reliability_tree, MrpMode, Target};
use relaxed_polar::channels::AwgnChannel;
use relaxed_polar::codec::crc::CrcConfig;
use relaxed_polar::sim::{simulate_fer, ChannelModel, DecoderKind, FerConfig};

fn main() -> relaxed_polar::Result<()> {
    let snr = 1.5;
    let sigma = AwgnChannel::from_snr_db(snr)?.sigma();
    let tree = ga_reliability_tree(sigma, 9)?;
    let fp = construct_fp(&tree, Target::Rate(0.5))?.code;
    let code = construct_mrp(&fp, MrpMode::AcMrp)?.with_crc(Some(CrcConfig::default()));
    let ch = ChannelModel::Awgn { sigma };
    let mut cfg = FerConfig::new(4000, 7);
    cfg.early_stop_errors = None;

    println!("N = {}, K = {} (incl. 16 CRC bits), {snr} dB", code.len(), code.good_set().len());
    for dec in [DecoderKind::Sc, DecoderKind::List(2), DecoderKind::List(8), DecoderKind::List(32)] {
        let r = simulate_fer(&code, &ch, dec, &cfg)?;
        println!("{:>10}: FER {:.4}  BER {:.2e}  ({} frames)", format!("{dec:?}"), r.fer, r.ber, r.trials);
    }
    Ok(())
}
