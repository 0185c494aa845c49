//! Self-check suites run by `relaxed-polar verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::code::CodeSpec;
use crate::analysis::map::RelaxationMap;
use crate::bounds::{duality_check, skipped_ops};
use crate::channels::DiscreteBms;
use crate::codec::{encode, rscd_decode, sscd_decode, ScDecoder};
use crate::error::{Error, Result};
use crate::oracle::{polarize_minus, polarize_plus, verify_appendix_lemma};
use crate::sim::ChannelModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Appendix,
    Duality,
    Codec,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "appendix" => Ok(Suite::Appendix),
            "duality" => Ok(Suite::Duality),
            "codec" => Ok(Suite::Codec),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidParameter(format!("unknown suite '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, if any.
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            detail: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.detail.is_none() {
                self.detail = Some(what());
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

/// Runs `suite`. Random cases draw from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Appendix | Suite::All) {
        checks.extend(appendix_checks(seed)?);
    }
    if matches!(suite, Suite::Duality | Suite::All) {
        checks.push(duality_checks()?);
    }
    if matches!(suite, Suite::Codec | Suite::All) {
        checks.extend(codec_checks(seed)?);
    }
    Ok(VerifyReport {
        suite,
        seed,
        pass: checks.iter().all(Check::pass),
        checks,
    })
}

/// The channels exercised by the appendix suite: BEC and BSC grids plus
/// random symmetric 4-output channels.
pub fn appendix_channels(seed: u64, random_count: usize) -> Result<Vec<(String, DiscreteBms)>> {
    let mut out = Vec::new();
    for k in 0..=20 {
        let p = k as f64 / 20.0;
        out.push((format!("BEC({p})"), DiscreteBms::bec(p)?));
    }
    for k in 0..=10 {
        let q = k as f64 / 20.0;
        out.push((format!("BSC({q})"), DiscreteBms::bsc(q)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..random_count {
        out.push((format!("random#{k}"), DiscreteBms::random_symmetric(&mut rng, 2)));
    }
    Ok(out)
}

fn appendix_checks(seed: u64) -> Result<Vec<Check>> {
    let mut lemma = Check::new("error-probability lemma");
    let mut zplus = Check::new("Z(W+) = Z^2");
    let mut zminus = Check::new("Z(W-) <= 2Z - Z^2, equality on BEC");
    let mut cap = Check::new("I(W-) + I(W+) = 2 I(W)");
    for (name, w) in appendix_channels(seed, 200)? {
        let r = verify_appendix_lemma(&w)?;
        lemma.record(r.pass, || format!("{name}: {r:?}"));
        let (m, p) = (polarize_minus(&w)?, polarize_plus(&w)?);
        let z = w.bhattacharyya();
        let zp = p.bhattacharyya();
        zplus.record((zp - z * z).abs() <= 1e-12, || format!("{name}: {zp} vs {}", z * z));
        let zm = m.bhattacharyya();
        let bound = 2.0 * z - z * z;
        let ok = if name.starts_with("BEC") {
            (zm - bound).abs() <= 1e-12
        } else {
            zm <= bound + 1e-12
        };
        zminus.record(ok, || format!("{name}: {zm} vs {bound}"));
        let sum = m.capacity() + p.capacity();
        cap.record((sum - 2.0 * w.capacity()).abs() <= 1e-9, || {
            format!("{name}: {sum} vs {}", 2.0 * w.capacity())
        });
    }
    Ok(vec![lemma, zplus, zminus, cap])
}

fn duality_checks() -> Result<Check> {
    let mut c = Check::new("mirror/complement duality, n = 12");
    for k in 1..=9 {
        let p = k as f64 / 10.0;
        let ok = duality_check(p, 12, 1e-6)?;
        c.record(ok, || format!("p = {p}"));
    }
    Ok(c)
}

/// Random map: every node whose parent is polarized is relaxed with
/// probability `prob` (the root included).
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, n: usize, prob: f64) -> RelaxationMap {
    let mut map = RelaxationMap::fully_polarized(n);
    for t in 0..=n {
        for j in 0..1usize << t {
            if !map.is_relaxed(t, j) && rng.random::<f64>() < prob {
                map.relax_subtree(t, j);
            }
        }
    }
    map
}

/// Random good set where each index is kept with probability `prob`.
pub fn random_good_set<R: Rng + ?Sized>(rng: &mut R, len: usize, prob: f64) -> Vec<usize> {
    (0..len).filter(|_| rng.random::<f64>() < prob).collect()
}

/// `B_N F^{(x)n}` built entry by entry: row `i`, column `k` is 1 iff the
/// bit-reversal of `k` is a bitwise subset of `i`.
fn generator_entry(i: usize, k: usize, n: usize) -> u8 {
    let kr = crate::codec::encoder::bit_reverse(k, n);
    (kr & !i == 0) as u8
}

fn codec_checks(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0DEC);
    let mut matrix = Check::new("encoder equals B_N F^(x)n, exhaustive N <= 16");
    for n in 0..=4 {
        let len = 1usize << n;
        let map = RelaxationMap::fully_polarized(n);
        for word in 0..1usize << len {
            let u: Vec<u8> = (0..len).map(|i| (word >> i & 1) as u8).collect();
            let x = encode(&u, &map)?;
            let expect: Vec<u8> = (0..len)
                .map(|k| (0..len).fold(0, |acc, i| acc ^ (u[i] & generator_entry(i, k, n))))
                .collect();
            matrix.record(x == expect, || format!("n = {n}, u = {u:?}"));
        }
    }

    let mut roundtrip = Check::new("noiseless round trip, N <= 64");
    let mut llr = Vec::new();
    for n in 0..=6 {
        let len = 1usize << n;
        let exhaustive = len <= 8;
        let count = if exhaustive { 1usize << len } else { 500 };
        for c in 0..count {
            let map = random_map(&mut rng, n, 0.3);
            let code = CodeSpec::new(map, 0..len)?;
            let u: Vec<u8> = if exhaustive {
                (0..len).map(|i| (c >> i & 1) as u8).collect()
            } else {
                (0..len).map(|_| rng.random::<bool>() as u8).collect()
            };
            let x = encode(&u, code.map())?;
            ChannelModel::Noiseless.llrs(&x, &mut rng, &mut llr);
            let r = rscd_decode(&llr, &code)?;
            roundtrip.record(r.u_hat == u, || format!("n = {n}, map = {}", code.map().to_json()));
        }
    }

    let mut sscd = Check::new("SSCD equals RSCD on noisy inputs");
    let mut ops = Check::new("operation count equals nN minus skipped");
    for k in 0..300 {
        let n = 1 + k % 8;
        let len = 1usize << n;
        let map = if k % 2 == 0 {
            RelaxationMap::fully_polarized(n)
        } else {
            random_map(&mut rng, n, 0.15)
        };
        let good = random_good_set(&mut rng, len, 0.5);
        let code = CodeSpec::new(map, good)?;
        let payload: Vec<u8> = (0..code.payload_len()).map(|_| rng.random::<bool>() as u8).collect();
        let x = encode(&code.place_payload(&payload)?, code.map())?;
        let channel = if k % 3 == 0 {
            ChannelModel::Bec { p: 0.3 }
        } else {
            ChannelModel::Awgn { sigma: 0.9 }
        };
        channel.llrs(&x, &mut rng, &mut llr);
        let a = rscd_decode(&llr, &code)?;
        let b = sscd_decode(&llr, &code)?;
        sscd.record(a == b, || format!("case {k}, n = {n}"));
        let mut dec = ScDecoder::new(&code);
        dec.decode(&llr, None)?;
        let expect = ((n as u64) << n) - skipped_ops(code.map());
        ops.record(dec.ops() == expect, || format!("case {k}: {} vs {expect}", dec.ops()));
    }
    Ok(vec![matrix, roundtrip, sscd, ops])
}
