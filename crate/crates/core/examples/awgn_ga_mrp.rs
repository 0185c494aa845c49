//! AWGN construction by Gaussian approximation, then the two "maximum rate
//! preserving" relaxations that only touch rate-0 and rate-1 subtrees.

use relaxed_polar::analysis::{construct_fp, construct_mrp, ga_reliability_tree, rate_loss, MrpMode, Target};
use relaxed_polar::bounds::{measured_cr, LatencyMode, LatencyReport};
use relaxed_polar::channels::AwgnChannel;

fn main() -> relaxed_polar::Result<()> {
    let ch = AwgnChannel::from_snr_db(2.0)?;
    let tree = ga_reliability_tree(ch.sigma(), 10)?;
    let fp = construct_fp(&tree, Target::Rate(0.5))?.code;
    println!(
        "AWGN {:.1} dB (sigma {:.4}, capacity {:.4}), N = {}, R = {}",
        ch.snr_db(),
        ch.sigma(),
        ch.capacity(),
        fp.len(),
        fp.rate()
    );
    println!("estimated FER (sum of GA bit error figures): {:.3e}", {
        let leaves = tree.leaves();
        fp.good_set().iter().map(|&i| leaves[i].e_upper).sum::<f64>()
    });

    for mode in [MrpMode::GcMrp, MrpMode::AcMrp] {
        let rp = construct_mrp(&fp, mode)?;
        let lat = LatencyReport::new(&fp, &rp);
        println!(
            "{mode:?}: CR {:.4}, rate loss {}, relaxed roots {}, latency FP {} / SSCD {} / RSCD {}",
            measured_cr(rp.map()),
            rate_loss(&fp, &rp)?,
            rp.map().relaxed_roots().len(),
            lat.fp,
            lat.sscd_fp,
            lat.rscd
        );
        debug_assert_eq!(lat.rscd, relaxed_polar::bounds::latency_cycles(&rp, LatencyMode::Rscd));
    }
    Ok(())
}
