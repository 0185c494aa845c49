//! Upper and lower bounds on the fraction of skipped operations, next to the
//! value measured on the actual relaxed tree.

use relaxed_polar::bounds::{bec_bounds_report, AsymptoticParams};

fn main() -> relaxed_polar::Result<()> {
    let n = 16;
    println!("n = {n}, FER target 1e-5");
    println!("   p   measured     ub      lb1      lb2   asymptotic");
    for k in 1..=9 {
        let p = k as f64 / 10.0;
        let r = bec_bounds_report(p, n, 1e-5, AsymptoticParams::default())?;
        println!(
            " {p:.1}   {:.4}    {:.4}   {:.4}   {:.4}   {:.4}",
            r.measured_cr.ac,
            r.ac.ub,
            r.ac.lb1,
            r.ac.lb2,
            r.asymptotic.combined
        );
        for v in &r.violations {
            println!("      violation: {v}");
        }
    }
    Ok(())
}
