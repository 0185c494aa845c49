//! Exact bit-channels of a small discrete channel, and the EP identities
//! `E(W-) = 2E - 2E^2`, `E(W+) >= 2E^2` checked on each of them.
//!
//! cargo run --release --example exact_oracle

use relaxed_polar::channels::DiscreteBms;
use relaxed_polar::oracle::{exact_bit_channel, verify_appendix_lemma};

fn main() -> relaxed_polar::Result<()> {
    // three symmetric output pairs of different reliability
    let pairs = [[0.30, 0.05], [0.15, 0.10], [0.25, 0.15]];
    let rows = pairs.iter().flat_map(|&[a, b]| [[a, b], [b, a]]).collect();
    let w = DiscreteBms::new(rows)?;
    println!(
        "W: E = {:.4}, Z = {:.4}, I = {:.4}",
        w.error_probability(),
        w.bhattacharyya(),
        w.capacity()
    );

    let n = 3;
    println!("\n i  path  outputs        E        Z        I");
    for i in 1..=1usize << n {
        let b = exact_bit_channel(&w, n, i)?;
        println!(
            "{i:2}  {:>4}  {:7}  {:.5}  {:.5}  {:.5}",
            b.lineage,
            b.channel.outputs(),
            b.channel.error_probability(),
            b.channel.bhattacharyya(),
            b.channel.capacity()
        );
    }

    let r = verify_appendix_lemma(&w)?;
    println!(
        "\nminus: exact {:.6} vs 2E-2E^2 {:.6}\nplus:  exact {:.6} >= 2E^2 {:.6}  -> {}",
        r.e_minus_exact,
        r.e_minus_formula,
        r.e_plus_exact,
        r.e_plus_lb,
        if r.pass { "ok" } else { "VIOLATED" }
    );
    Ok(())
}
