//! Decoding latency in clock cycles under the four decoder models.

use relaxed_polar::analysis::{bec_z_tree, construct_fp, construct_relaxed, Scenario, Target, Thresholds};
use relaxed_polar::bounds::LatencyReport;

fn main() -> relaxed_polar::Result<()> {
    println!("  n    SC-FP     RSCD  SSCD-FP  SSCD-RP");
    for n in [8, 10, 12, 14, 16] {
        let tree = bec_z_tree(0.5, n)?;
        let fp = construct_fp(&tree, Target::Rate(0.5))?.code;
        let thr = Thresholds::from_bec_z(1e-4 / (1usize << n) as f64)?;
        let rp = construct_relaxed(&tree, Scenario::Ac, &thr, Target::Rate(0.5))?.code;
        let l = LatencyReport::new(&fp, &rp);
        println!("{n:3} {:8} {:8} {:8} {:8}", l.fp, l.rscd, l.sscd_fp, l.sscd_rp);
    }
    Ok(())
}
