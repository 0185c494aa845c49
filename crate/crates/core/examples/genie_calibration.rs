//! Monte-Carlo genie-aided bit error rates against the Gaussian approximation.

use relaxed_polar::analysis::{ga_reliability_tree, mc_genie_bit_error};
use relaxed_polar::channels::AwgnChannel;
use relaxed_polar::sim::ChannelModel;

fn main() -> relaxed_polar::Result<()> {
    let n = 4;
    let sigma = AwgnChannel::from_snr_db(0.0)?.sigma();
    let ga = ga_reliability_tree(sigma, n)?;
    let mc = mc_genie_bit_error(&ChannelModel::Awgn { sigma }, n, 200_000, 11)?;
    println!(" i     GA        MC");
    for (i, (g, m)) in ga.leaves().iter().zip(&mc).enumerate() {
        println!("{i:2}  {:.3e}  {:.3e}", g.e_upper, m);
    }
    Ok(())
}
