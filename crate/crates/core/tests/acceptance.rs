//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
//! below. Runs without the libtest harness so the lines always print.
//!
//! Criterion 3's CR level is a known failure (see `KNOWN_FAILURES`): the
//! line still reports FAIL, and the process only fails if anything else
//! does, including the rate-loss and symmetry parts of criterion 3.

mod common;

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relaxed_polar::analysis::*;
use relaxed_polar::bounds::*;
use relaxed_polar::channels::{AwgnChannel, DiscreteBms};
use relaxed_polar::codec::crc::CrcConfig;
use relaxed_polar::codec::{encode, rscd_decode, sscd_decode, ScDecoder};
use relaxed_polar::oracle::{polarize_minus, polarize_plus};
use relaxed_polar::sim::{simulate_fer, ChannelModel, DecoderKind, FerConfig, TrialRecord};

use common::*;

const KNOWN_FAILURES: &[u32] = &[3];

// criterion 1 and 2
const LEMMA_TOL: f64 = 1e-10;
const Z_TOL: f64 = 1e-12;
const CAPACITY_TOL: f64 = 1e-9;
const RANDOM_CHANNELS: usize = 200;
// criterion 3 and 4
const CR_REQUIRED: f64 = 0.80;
const RATE_LOSS_MAX: f64 = 1e-4;
const GRID_N: usize = 20;
const GRID_FER: f64 = 1e-5;
// criterion 5
const DUALITY_TOL: f64 = 1e-12;
// criterion 8
const GENIE_TRIALS: u64 = 1_000_000;
const GENIE_SIGMAS: f64 = 4.0;
// criterion 9
const HEADLINE_CR: f64 = 0.509;
const HEADLINE_LATENCY: f64 = 0.935;
const HEADLINE_TOL: f64 = 0.02;
// criterion 10
const MRP_GC_CR: f64 = 0.1639;
const MRP_AC_CR: f64 = 0.3340;
const MRP_TOL: f64 = 0.05;
// criterion 11
const ORDERING_SNR: f64 = 2.5;
const ORDERING_MIN_ERRORS: u64 = 200;
const FER_SIGMAS: f64 = 2.0;
const LIST_GAIN_MIN_DB: f64 = 0.6;
const LIST_REFERENCE_FER: f64 = 1e-2;

struct Outcome {
    pass: bool,
    /// Parts that must hold even for a known failure.
    required_ok: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self {
            pass,
            required_ok: pass,
            detail,
        }
    }
}

// ---------------------------------------------------------------- channels

type Table = Vec<[f64; 2]>;

fn raw_minus(w: &Table) -> Table {
    let mut out = Vec::new();
    for a in w {
        for b in w {
            // W-(y1 y2 | u1) = 1/2 sum_u2 W(y1 | u1 + u2) W(y2 | u2)
            out.push([
                0.5 * (a[0] * b[0] + a[1] * b[1]),
                0.5 * (a[1] * b[0] + a[0] * b[1]),
            ]);
        }
    }
    out
}

fn raw_plus(w: &Table) -> Table {
    let mut out = Vec::new();
    for a in w {
        for b in w {
            for u1 in 0..2 {
                // W+(y1 y2 u1 | u2) = 1/2 W(y1 | u1 + u2) W(y2 | u2)
                out.push([0.5 * a[u1] * b[0], 0.5 * a[u1 ^ 1] * b[1]]);
            }
        }
    }
    out
}

fn e_of(w: &Table) -> f64 {
    0.5 * w.iter().map(|r| r[0].min(r[1])).sum::<f64>()
}

fn z_of(w: &Table) -> f64 {
    w.iter().map(|r| (r[0] * r[1]).sqrt()).sum()
}

fn i_of(w: &Table) -> f64 {
    let mut total = 0.0;
    for r in w {
        let q = 0.5 * (r[0] + r[1]);
        for &v in r {
            if v > 0.0 {
                total += 0.5 * v * (v / q).log2();
            }
        }
    }
    total
}

fn channel_set() -> Vec<(String, Table, bool)> {
    let mut out = Vec::new();
    for k in 0..=20 {
        let p = k as f64 / 20.0;
        out.push((format!("BEC({p})"), vec![[1.0 - p, 0.0], [p, p], [0.0, 1.0 - p]], true));
    }
    for k in 0..=10 {
        let q = k as f64 / 20.0;
        out.push((format!("BSC({q})"), vec![[1.0 - q, q], [q, 1.0 - q]], false));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..RANDOM_CHANNELS {
        let (a, b, c, d): (f64, f64, f64, f64) = (rng.random(), rng.random(), rng.random(), rng.random());
        let s = a + b + c + d;
        let t = vec![[a / s, b / s], [b / s, a / s], [c / s, d / s], [d / s, c / s]];
        out.push((format!("random#{k}"), t, false));
    }
    out
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (name, w, _) in channel_set() {
        let e = e_of(&w);
        let em = e_of(&raw_minus(&w));
        let ep = e_of(&raw_plus(&w));
        worst = worst.max((em - (2.0 * e - 2.0 * e * e)).abs());
        if (em - (2.0 * e - 2.0 * e * e)).abs() > LEMMA_TOL || ep < 2.0 * e * e - LEMMA_TOL {
            bad.push(name.clone());
        }
        // the library's merged transforms must carry the same figures
        let lib = DiscreteBms::new(w.clone()).unwrap();
        let lm = polarize_minus(&lib).unwrap().error_probability();
        let lp = polarize_plus(&lib).unwrap().error_probability();
        if (lm - em).abs() > LEMMA_TOL || (lp - ep).abs() > LEMMA_TOL {
            bad.push(format!("{name} (library)"));
        }
    }
    let bsc: Table = vec![[0.9, 0.1], [0.1, 0.9]];
    let (bm, bp) = (e_of(&raw_minus(&bsc)), e_of(&raw_plus(&bsc)));
    let bsc_ok = (bm - 0.18).abs() < 1e-12 && (bp - 0.1).abs() < 1e-12;
    Outcome::new(
        bad.is_empty() && bsc_ok,
        format!(
            "{} channels, max |E- - (2E - 2E^2)| = {worst:.1e}, BSC(0.1): E- = {bm:.4}, E+ = {bp:.4}, failures {bad:?}",
            channel_set().len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let (mut zp_err, mut zm_err, mut i_err) = (0.0f64, 0.0f64, 0.0f64);
    for (name, w, erasure) in channel_set() {
        let (m, p) = (raw_minus(&w), raw_plus(&w));
        let z = z_of(&w);
        let dz_plus = (z_of(&p) - z * z).abs();
        let dz_minus = z_of(&m) - (2.0 * z - z * z);
        let di = (i_of(&m) + i_of(&p) - 2.0 * i_of(&w)).abs();
        zp_err = zp_err.max(dz_plus);
        if erasure {
            zm_err = zm_err.max(dz_minus.abs());
        }
        i_err = i_err.max(di);
        let zm_ok = if erasure { dz_minus.abs() <= Z_TOL } else { dz_minus <= Z_TOL };
        let lib = DiscreteBms::new(w.clone()).unwrap();
        let lib_ok = (polarize_plus(&lib).unwrap().bhattacharyya() - z_of(&p)).abs() <= Z_TOL
            && (polarize_minus(&lib).unwrap().bhattacharyya() - z_of(&m)).abs() <= Z_TOL
            && (lib.capacity() - i_of(&w)).abs() <= CAPACITY_TOL;
        if dz_plus > Z_TOL || !zm_ok || di > CAPACITY_TOL || !lib_ok {
            bad.push(name);
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "max |Z+ - Z^2| = {zp_err:.1e}, max BEC |Z- - (2Z - Z^2)| = {zm_err:.1e}, max |I- + I+ - 2I| = {i_err:.1e}, failures {bad:?}"
        ),
    )
}

// ------------------------------------------------------------- BEC sweeps

fn bec_grid() -> Vec<f64> {
    // upper half as exact complements so symmetry can be compared bit for bit
    (1..=19)
        .map(|k| if k <= 10 { k as f64 / 20.0 } else { 1.0 - (20 - k) as f64 / 20.0 })
        .collect()
}

/// Skip count of the AC relaxation at `T_g = 2E/N` computed from the naive tree.
fn naive_ac_skip(p: f64, n: usize, fer: f64) -> u64 {
    let z = bec_z_naive(p, n);
    let tg = 2.0 * fer / (1u64 << n) as f64;
    let mut map = RelaxationMap::fully_polarized(n);
    for t in 1..=n {
        for j in 0..1usize << t {
            if !map.is_relaxed(t, j) && (z[t][j] < tg || z[t][j] > 1.0 - tg) {
                map.relax_subtree(t, j);
            }
        }
    }
    skip_count(&map)
}

fn criterion_3(reports: &[BoundsReport]) -> Outcome {
    let best = reports
        .iter()
        .max_by(|a, b| a.measured_cr.ac.total_cmp(&b.measured_cr.ac))
        .unwrap();
    let max_loss = reports.iter().map(|r| r.rate_fp - r.rate_ac).fold(f64::MIN, f64::max);
    let len = reports.len();
    let symmetric = (0..len).all(|k| reports[k].measured_cr.ac == reports[len - 1 - k].measured_cr.ac);
    let oracle = naive_ac_skip(0.3, GRID_N, GRID_FER) as f64 / (GRID_N as f64 * (1u64 << GRID_N) as f64);
    let lib = reports.iter().find(|r| r.p == 0.3).unwrap().measured_cr.ac;
    let oracle_ok = (oracle - lib).abs() < 1e-3;
    let level_ok = best.measured_cr.ac >= CR_REQUIRED;
    let required_ok = max_loss < RATE_LOSS_MAX && symmetric && oracle_ok;
    Outcome {
        pass: level_ok && required_ok,
        required_ok,
        detail: format!(
            "best AC CR {:.4} at p = {} (need >= {CR_REQUIRED}), CR at p = 0.5 {:.4}, max rate loss {max_loss:.2e} (< {RATE_LOSS_MAX:e}), symmetric {symmetric}, naive-tree CR at p = 0.3 {oracle:.4} vs {lib:.4}",
            best.measured_cr.ac,
            best.p,
            reports[9].measured_cr.ac,
        ),
    }
}

fn criterion_4(reports: &[BoundsReport]) -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    for r in reports {
        let mut check = |name: &str, lo: f64, v: f64, hi: f64| {
            checked += 1;
            if !(lo <= v && v <= hi) {
                violations.push(format!("p = {} {name}: {lo} <= {v} <= {hi}", r.p));
            }
        };
        check("gc", r.gc.lb1.max(r.gc.lb2), r.measured_cr.gc, r.gc.ub);
        check("bc", r.bc.lb1.max(r.bc.lb2), r.measured_cr.bc, r.bc.ub);
        if r.ac_disjoint {
            check("ac", r.ac.lb(), r.measured_cr.ac, r.ac.ub);
        }
        let b = 2.0 * r.p - r.p * r.p;
        if r.b != b {
            violations.push(format!("p = {}: B = {} is not 2p - p^2", r.p, r.b));
        }
    }
    let flagged: usize = reports.iter().map(|r| r.violations.len()).sum();
    Outcome::new(
        violations.is_empty() && flagged == 0,
        format!("{checked} sandwich checks over {} grid points, violations {violations:?}", reports.len()),
    )
}

fn criterion_5() -> Outcome {
    let n = 12;
    let t = 1e-6;
    let mut bad = Vec::new();
    for k in 1..=9 {
        let p = k as f64 / 10.0;
        let a = bec_z_naive(p, n);
        let b = bec_z_naive(1.0 - p, n);
        let mut worst = 0.0f64;
        for lvl in 0..=n {
            let m = a[lvl].len();
            for j in 0..m {
                worst = worst.max((a[lvl][j] - (1.0 - b[lvl][m - 1 - j])).abs());
            }
        }
        let lib = duality_check(p, n, t).unwrap();
        if worst > DUALITY_TOL || !lib {
            bad.push(format!("p = {p}: worst {worst:.1e}, library {lib}"));
        }
    }
    Outcome::new(bad.is_empty(), format!("p in 0.1..0.9, n = {n}, failures {bad:?}"))
}

// --------------------------------------------------- exact FER ordering

/// Numerators of every node's Z for `BEC(a/b)`; level `t` has denominator
/// `b^(2^t)`.
fn exact_tree(a: u32, b: u32, n: usize) -> Vec<Vec<BigUint>> {
    let mut levels = vec![vec![BigUint::from(a)]];
    let mut denom = BigUint::from(b);
    for t in 0..n {
        let next = levels[t]
            .iter()
            .flat_map(|z| {
                let sq = z * z;
                [z * &denom * 2u32 - &sq, sq]
            })
            .collect();
        levels.push(next);
        denom = &denom * &denom;
    }
    levels
}

fn criterion_6() -> Outcome {
    let mut settings = Vec::new();
    for (k, a) in [1u32, 2, 3, 4, 5, 6, 7, 8, 9, 5].into_iter().enumerate() {
        for (m, rate) in [0.3, 0.6].into_iter().enumerate() {
            let n = [8, 10, 12][(k + m) % 3];
            settings.push((a, n, rate, if m == 0 { MrpMode::GcMrp } else { MrpMode::AcMrp }));
        }
    }
    let mut bad = Vec::new();
    let mut strict = 0;
    let mut relaxed_total = 0;
    for &(a, n, rate, mode) in &settings {
        let p = a as f64 / 10.0;
        let tree = bec_z_tree(p, n).unwrap();
        let fp = construct_fp(&tree, Target::Rate(rate)).unwrap().code;
        let rp = construct_mrp(&fp, mode).unwrap();
        assert_eq!(rp.good_set(), fp.good_set());
        let exact = exact_tree(a, 10, n);
        let b = BigUint::from(10u32);
        let len = 1usize << n;
        // common denominator b^N
        let scale = |t: usize| b.pow((len - (1usize << t)) as u32);
        let fp_sum: BigUint = fp.good_set().iter().map(|&i| exact[n][i].clone()).sum();
        let mut rp_sum = BigUint::zero();
        let mut covered = vec![false; len];
        for (t, j) in rp.map().relaxed_roots() {
            let span = 1usize << (n - t);
            let count = (j * span..(j + 1) * span).filter(|&i| rp.is_info(i)).count();
            covered[j * span..(j + 1) * span].iter_mut().for_each(|c| *c = true);
            rp_sum += &exact[t][j] * scale(t) * BigUint::from(count);
            relaxed_total += 1;
        }
        for &i in fp.good_set() {
            if !covered[i] {
                rp_sum += &exact[n][i];
            }
        }
        if rp_sum > fp_sum {
            bad.push(format!("p = {p}, n = {n}, R = {rate}"));
        } else if rp_sum < fp_sum {
            strict += 1;
        }
    }
    Outcome::new(
        bad.is_empty() && relaxed_total > 0,
        format!(
            "{} settings, {relaxed_total} relaxed roots, {strict} strict, violations {bad:?}",
            settings.len()
        ),
    )
}

// ------------------------------------------------------------------ codec

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut msgs = Vec::new();

    let mut matrix_fail = 0;
    let mut matrix_cases = 0;
    for n in 0..=4 {
        let g = generator_fp(n);
        let len = 1usize << n;
        let map = RelaxationMap::fully_polarized(n);
        for word in 0..1usize << len {
            let u: Vec<u8> = (0..len).map(|i| (word >> i & 1) as u8).collect();
            matrix_cases += 1;
            if encode(&u, &map).unwrap() != mul_gf2(&u, &g) {
                matrix_fail += 1;
            }
        }
    }
    msgs.push(format!("(a) {matrix_cases} words, {matrix_fail} mismatches"));

    let mut rt_fail = 0;
    let mut llr = Vec::new();
    for _ in 0..10_000 {
        let n = rng.random_range(0..=6);
        let map = random_map(&mut rng, n, 0.2);
        let len = 1usize << n;
        let code = CodeSpec::new(map, 0..len).unwrap();
        let u: Vec<u8> = (0..len).map(|_| rng.random_range(0..2)).collect();
        let x = encode(&u, code.map()).unwrap();
        ChannelModel::Noiseless.llrs(&x, &mut rng, &mut llr);
        if rscd_decode(&llr, &code).unwrap().u_hat != u {
            rt_fail += 1;
        }
    }
    msgs.push(format!("(b) 10000 round trips, {rt_fail} failures"));

    let (mut sscd_fail, mut ops_fail) = (0, 0);
    for k in 0..1000 {
        let n = rng.random_range(1..=8);
        let len = 1usize << n;
        let map = if k % 2 == 0 {
            RelaxationMap::fully_polarized(n)
        } else {
            random_map(&mut rng, n, 0.15)
        };
        let good: Vec<usize> = (0..len).filter(|_| rng.random_bool(0.5)).collect();
        let code = CodeSpec::new(map, good).unwrap();
        let payload: Vec<u8> = (0..code.payload_len()).map(|_| rng.random_range(0..2)).collect();
        let x = encode(&code.place_payload(&payload).unwrap(), code.map()).unwrap();
        let ch = if k % 3 == 0 {
            ChannelModel::Bec { p: 0.35 }
        } else {
            ChannelModel::Awgn { sigma: 0.8 }
        };
        ch.llrs(&x, &mut rng, &mut llr);
        if rscd_decode(&llr, &code).unwrap() != sscd_decode(&llr, &code).unwrap() {
            sscd_fail += 1;
        }
        let mut dec = ScDecoder::new(&code);
        dec.decode(&llr, None).unwrap();
        if dec.ops() != ((n as u64) << n) - skip_count(code.map()) {
            ops_fail += 1;
        }
    }
    msgs.push(format!("(c) 1000 noisy instances, {sscd_fail} SSCD/RSCD mismatches"));
    msgs.push(format!("(d) {ops_fail} op-count mismatches"));
    Outcome::new(
        matrix_fail + rt_fail + sscd_fail + ops_fail == 0,
        msgs.join("; "),
    )
}

fn criterion_8() -> Outcome {
    let (p, n) = (0.4, 8);
    let est = mc_genie_bit_error(&ChannelModel::Bec { p }, n, GENIE_TRIALS, 8).unwrap();
    let exact = &bec_z_naive(p, n)[n];
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (i, (&e, &z)) in est.iter().zip(exact).enumerate() {
        let q = z / 2.0;
        let sd = (q * (1.0 - q) / GENIE_TRIALS as f64).sqrt();
        let dev = if sd > 0.0 { (e - q).abs() / sd } else if e == q { 0.0 } else { f64::INFINITY };
        // below one expected event the estimate is 0 or 1e-6 by construction
        let dev = if q * (GENIE_TRIALS as f64) < 1.0 && e <= 2.0 / GENIE_TRIALS as f64 { 0.0 } else { dev };
        worst = worst.max(dev);
        if dev > GENIE_SIGMAS {
            bad.push(i + 1);
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("BEC(0.4), n = 8, {GENIE_TRIALS} trials, worst deviation {worst:.2} sd (limit {GENIE_SIGMAS}), outside: {bad:?}"),
    )
}

fn criterion_9() -> Outcome {
    let (p, n) = (2.0 / 3.0, 16);
    let rate = 0.9 * (1.0 - p);
    let tree = bec_z_tree(p, n).unwrap();
    let fp = construct_fp(&tree, Target::Rate(rate)).unwrap().code;
    let mrp = construct_mrp(&fp, MrpMode::AcMrp).unwrap();
    let total = (n as f64) * (1u64 << n) as f64;
    let cr = skip_count(mrp.map()) as f64 / total;
    let info = fp.info_mask();
    let lat_fp = latency_reference(fp.map(), info, false, false);
    let lat_rp = latency_reference(mrp.map(), info, true, false);
    let reduction = 1.0 - lat_rp as f64 / lat_fp as f64;
    let lib_ok = latency_cycles(&fp, LatencyMode::ScFp) == lat_fp
        && latency_cycles(&mrp, LatencyMode::Rscd) == lat_rp
        && lat_fp == 3 * (1 << n) - 3
        && measured_cr(mrp.map()) == cr;
    Outcome::new(
        (cr - HEADLINE_CR).abs() <= HEADLINE_TOL && (reduction - HEADLINE_LATENCY).abs() <= HEADLINE_TOL && lib_ok,
        format!(
            "rate {:.4}, AC-MRP CR {:.2}% (expected 50.9 +- 2), latency {lat_rp}/{lat_fp} cycles, reduction {:.2}% (expected 93.5 +- 2), library agrees {lib_ok}",
            fp.rate(),
            100.0 * cr,
            100.0 * reduction
        ),
    )
}

fn criterion_10() -> Outcome {
    let sigma = AwgnChannel::from_snr_db(2.0).unwrap().sigma();
    let tree = ga_reliability_tree(sigma, 10).unwrap();
    let fp = construct_fp(&tree, Target::Rate(0.5)).unwrap().code;
    let total = 10.0 * 1024.0;
    let gc = skip_count(construct_mrp(&fp, MrpMode::GcMrp).unwrap().map()) as f64 / total;
    let ac = skip_count(construct_mrp(&fp, MrpMode::AcMrp).unwrap().map()) as f64 / total;
    Outcome::new(
        (gc - MRP_GC_CR).abs() <= MRP_TOL && (ac - MRP_AC_CR).abs() <= MRP_TOL,
        format!("GC-MRP CR {gc:.4} (expected 0.1639 +- {MRP_TOL}), AC-MRP CR {ac:.4} (expected 0.3340 +- {MRP_TOL})"),
    )
}

// ----------------------------------------------------------- AWGN Monte Carlo

fn run(code: &CodeSpec, snr: f64, decoder: DecoderKind, trials: u64, stop: u64, seed: u64) -> TrialRecord {
    let sigma = AwgnChannel::from_snr_db(snr).unwrap().sigma();
    let cfg = FerConfig {
        trials,
        seed,
        early_stop_errors: Some(stop),
        batch: 256,
    };
    simulate_fer(code, &ChannelModel::Awgn { sigma }, decoder, &cfg).unwrap()
}

/// SNR at which the log-FER line through two points reaches `target`.
fn snr_at(a: &TrialRecord, b: &TrialRecord, target: f64) -> f64 {
    let (x1, x2) = (a.snr_or_p, b.snr_or_p);
    let (y1, y2) = (a.fer.max(1e-9).log10(), b.fer.max(1e-9).log10());
    x1 + (target.log10() - y1) * (x2 - x1) / (y2 - y1)
}

fn criterion_11() -> Outcome {
    let sigma = AwgnChannel::from_snr_db(2.0).unwrap().sigma();
    let tree = ga_reliability_tree(sigma, 10).unwrap();
    let fp = construct_fp(&tree, Target::Rate(0.5)).unwrap().code;
    let rp = construct_mrp(&fp, MrpMode::AcMrp).unwrap();
    let f = run(&fp, ORDERING_SNR, DecoderKind::Sc, 2_000_000, ORDERING_MIN_ERRORS, 11);
    let r = run(&rp, ORDERING_SNR, DecoderKind::Sc, 2_000_000, ORDERING_MIN_ERRORS, 11);
    let se = (f.fer_std_error().powi(2) + r.fer_std_error().powi(2)).sqrt();
    let enough = f.frame_errors >= ORDERING_MIN_ERRORS && r.frame_errors >= ORDERING_MIN_ERRORS;
    let fer_ok = r.fer <= f.fer + FER_SIGMAS * se;
    let ber_ok = r.ber <= f.ber;

    // list gain: relaxed SC at rate 1/2 against relaxed SCL-32 with CRC-16
    let fp528 = construct_fp(&tree, Target::Rate(528.0 / 1024.0)).unwrap().code;
    let list_code = construct_mrp(&fp528, MrpMode::AcMrp).unwrap().with_crc(Some(CrcConfig::default()));
    let sc_lo = run(&rp, 2.0, DecoderKind::Sc, 200_000, 200, 12);
    let l_lo = run(&list_code, 1.0, DecoderKind::List(32), 6_000, 100, 13);
    let l_hi = run(&list_code, 1.5, DecoderKind::List(32), 6_000, 100, 13);
    let gain = snr_at(&sc_lo, &r, LIST_REFERENCE_FER) - snr_at(&l_lo, &l_hi, LIST_REFERENCE_FER);
    let gain_ok = gain >= LIST_GAIN_MIN_DB;
    Outcome::new(
        enough && fer_ok && ber_ok && gain_ok,
        format!(
            "2.5 dB SC: FP FER {:.4} ({} errors) BER {:.2e}, RP FER {:.4} ({} errors) BER {:.2e}, 2 se = {:.4}; \
list gain at FER {LIST_REFERENCE_FER:e}: {gain:.2} dB (need >= {LIST_GAIN_MIN_DB}; SC FER {:.3}/{:.4} at 2.0/2.5 dB, SCL FER {:.3}/{:.4} at 1.0/1.5 dB)",
            f.fer,
            f.frame_errors,
            f.ber,
            r.fer,
            r.frame_errors,
            r.ber,
            FER_SIGMAS * se,
            sc_lo.fer,
            r.fer,
            l_lo.fer,
            l_hi.fer
        ),
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut timed = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {id:>2} {}: {name} ({secs:.1} s): {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((id, name, o, secs));
    };
    timed(1, "error-probability lemma", &mut criterion_1);
    timed(2, "recursion and oracle agreement", &mut criterion_2);
    let start = Instant::now();
    let reports: Vec<BoundsReport> = bec_grid()
        .into_iter()
        .map(|p| bec_bounds_report(p, GRID_N, GRID_FER, AsymptoticParams::default()).unwrap())
        .collect();
    println!("(erasure grid, n = {GRID_N}: {:.1} s)", start.elapsed().as_secs_f64());
    timed(3, "erasure CR reproduction", &mut || criterion_3(&reports));
    timed(4, "bound sandwich", &mut || criterion_4(&reports));
    timed(5, "duality", &mut criterion_5);
    timed(6, "FER ordering, exact", &mut criterion_6);
    timed(7, "codec equivalences", &mut criterion_7);
    timed(8, "genie calibration", &mut criterion_8);
    timed(9, "N = 2^16 headline numbers", &mut criterion_9);
    timed(10, "MRP CR at N = 1024", &mut criterion_10);
    timed(11, "AWGN error-rate ordering", &mut criterion_11);

    let passed = results.iter().filter(|r| r.2.pass).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    let mut unexpected = Vec::new();
    for (id, name, o, _) in &results {
        if o.pass {
            continue;
        }
        if KNOWN_FAILURES.contains(id) && o.required_ok {
            println!("known failure: criterion {id} ({name}), recorded in the project notes");
        } else {
            unexpected.push(*id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
