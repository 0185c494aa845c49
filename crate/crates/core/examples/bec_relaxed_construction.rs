//! Builds fully polarized and relaxed codes for a BEC and compares rate,
//! skipped work and latency across the four scenarios.
//!
//! cargo run --release --example bec_relaxed_construction -- [p] [n]

use relaxed_polar::analysis::{
    bec_z_tree, construct_fp, construct_relaxed, rate_loss, Scenario, Target, Thresholds,
};
use relaxed_polar::bounds::{latency_cycles, measured_cr, LatencyMode};

fn main() -> relaxed_polar::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(0.5, |s| s.parse().expect("p"));
    let n: usize = args.next().map_or(14, |s| s.parse().expect("n"));
    let fer = 1e-4;
    let len = 1usize << n;

    let tree = bec_z_tree(p, n)?;
    let fp = construct_fp(&tree, Target::Fer(fer))?;
    let thr = Thresholds::from_bec_z(2.0 * fer / len as f64)?;
    println!("BEC({p}), N = {len}, FER target {fer:e}, z threshold {:.3e}", thr.z_good());
    println!("{:>4}  {:>8}  {:>10}  {:>8}  {:>8}", "", "rate", "rate loss", "CR", "latency");
    println!(
        "{:>4}  {:8.5}  {:10.2e}  {:8.4}  {:8}",
        "FP",
        fp.code.rate(),
        0.0,
        0.0,
        latency_cycles(&fp.code, LatencyMode::ScFp)
    );
    for (name, s) in [("GC", Scenario::Gc), ("BC", Scenario::Bc), ("AC", Scenario::Ac)] {
        let rp = construct_relaxed(&tree, s, &thr, Target::Fer(fer))?;
        println!(
            "{name:>4}  {:8.5}  {:10.2e}  {:8.4}  {:8}",
            rp.code.rate(),
            rate_loss(&fp.code, &rp.code)?,
            measured_cr(rp.code.map()),
            latency_cycles(&rp.code, LatencyMode::Rscd)
        );
    }
    Ok(())
}
