//! Encode and decode one frame with a relaxed code, and count how many
//! node operations the relaxed and simplified decoders perform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaxed_polar::analysis::{bec_z_tree, construct_relaxed, Scenario, Target, Thresholds};
use relaxed_polar::codec::{encode, ScDecoder};
use relaxed_polar::sim::ChannelModel;

fn main() -> relaxed_polar::Result<()> {
    let n = 10;
    let tree = bec_z_tree(0.4, n)?;
    let thr = Thresholds::from_bec_z(1e-6)?;
    let code = construct_relaxed(&tree, Scenario::Ac, &thr, Target::Rate(0.5))?.code;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let payload: Vec<u8> = (0..code.payload_len()).map(|_| rng.random_range(0..2)).collect();
    let x = encode(&code.place_payload(&payload)?, code.map())?;
    let mut llr = Vec::new();
    ChannelModel::Awgn { sigma: 0.7 }.llrs(&x, &mut rng, &mut llr);

    let mut dec = ScDecoder::new(&code);
    let r = dec.decode(&llr, None)?;
    let ops_rscd = dec.ops();
    let r2 = dec.decode_sscd(&llr, None)?;
    let ops_sscd = dec.ops();
    assert_eq!(r.u_hat, r2.u_hat);

    let errors = r.info_bits.iter().zip(&payload).filter(|(a, b)| a != b).count();
    let full = (n as u64) << n;
    println!("N = {}, K = {}, relaxed roots = {}", code.len(), code.payload_len(), code.map().relaxed_roots().len());
    println!("bit errors after decoding: {errors}");
    println!("operations: full tree {full}, relaxed {ops_rscd}, relaxed + simplified {ops_sscd}");
    Ok(())
}
