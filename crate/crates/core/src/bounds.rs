//! Complexity and latency accounting, and the complexity-reduction bounds for
//! erasure channels.
//!
//! Complexity is counted in butterfly operations: the fully polarized code
//! costs `n N`, and a maximal relaxed subtree rooted at level `t` saves
//! `(n - t) 2^(n - t)` of them.
//!
//! Every level parameter `t_x` below is the smallest `t` with
//! `q^(2^t) < T`, found by repeated squaring. The closed forms
//! `ceil(log2(log2 T / log2 q))` agree except when `q^(2^t)` lands exactly on
//! `T`, where the iteration matches the strict relaxation test.

use serde::Serialize;

use crate::analysis::code::CodeSpec;
use crate::analysis::construct::{construct_fp, relaxation_map, Scenario, Target};
use crate::analysis::map::RelaxationMap;
use crate::analysis::thresholds::Thresholds;
use crate::analysis::tree::{bec_z_tree, ReliabilityTree, TreeKind};
use crate::error::{Error, Result};

/// Header line of the bounds CSV format.
pub const BOUNDS_CSV_VERSION: &str = "# relaxed-polar bounds v1";

/// Butterfly operations skipped by the relaxed subtrees of `map`.
pub fn skipped_ops(map: &RelaxationMap) -> u64 {
    let n = map.n();
    map.relaxed_roots()
        .into_iter()
        .map(|(t, _)| ((n - t) as u64) << (n - t))
        .sum()
}

/// Skipped operations over `n N`.
pub fn measured_cr(map: &RelaxationMap) -> f64 {
    let n = map.n();
    if n == 0 {
        return 0.0;
    }
    skipped_ops(map) as f64 / ((n as u64) << n) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LatencyMode {
    /// Plain SC on the fully polarized code, `3N - 3`.
    ScFp,
    /// RSCD on the code's map: a relaxed subtree costs one cycle, or none if
    /// all its leaves are frozen.
    Rscd,
    /// SSCD on the fully polarized code with the same good set.
    SscdFp,
    /// SSCD on top of RSCD.
    SscdRp,
}

/// Decoding latency in clock cycles.
pub fn latency_cycles(code: &CodeSpec, mode: LatencyMode) -> u64 {
    let rates = code.subtree_rates();
    let n = code.n();
    let use_map = matches!(mode, LatencyMode::Rscd | LatencyMode::SscdRp);
    let use_rates = matches!(mode, LatencyMode::SscdFp | LatencyMode::SscdRp);
    fn walk(
        t: usize,
        j: usize,
        n: usize,
        code: &CodeSpec,
        rates: &crate::analysis::code::SubtreeRates,
        use_map: bool,
        use_rates: bool,
    ) -> u64 {
        if t == n {
            return 0;
        }
        if use_map && code.map().is_relaxed(t, j) {
            return if rates.rate0[t][j] { 0 } else { 1 };
        }
        if use_rates {
            if rates.rate0[t][j] {
                return 0;
            }
            if rates.rate1[t][j] {
                return 1 + (n - t) as u64;
            }
        }
        3 + walk(t + 1, 2 * j, n, code, rates, use_map, use_rates)
            + walk(t + 1, 2 * j + 1, n, code, rates, use_map, use_rates)
    }
    walk(0, 0, n, code, &rates, use_map, use_rates)
}

/// Smallest `t` with `q^(2^t) < threshold`, or `None` if it never happens.
pub fn levels_to_reach(q: f64, threshold: f64) -> Option<usize> {
    let mut v = q;
    for t in 0..=64 {
        if v < threshold {
            return Some(t);
        }
        let next = v * v;
        if next >= v {
            return None;
        }
        v = next;
    }
    None
}

/// Bounds for one relaxation side (good or bad).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideBounds {
    pub ub: f64,
    pub lb1: f64,
    pub lb2: f64,
    /// `t_g` (good side) or `t_b` (bad side); `None` if never reached.
    pub t_first: Option<usize>,
    /// Levels for the auxiliary threshold to reach the relaxation threshold.
    pub t_r: Option<usize>,
    /// Level at which the LB1 fraction was read, and the fraction.
    pub t_gamma: Option<usize>,
    pub gamma: f64,
    /// Starting level of the LB2 sum, its fraction, and the `gamma / 2`
    /// approximation of that fraction.
    pub t_lb2: Option<usize>,
    pub gamma_prime: f64,
    pub gamma_prime_approx: f64,
    /// The upper bound would have been negative and was clamped to 0.
    pub ub_clamped: bool,
    /// The LB2 optimum needed the truncated sum because `t + 2 t_r <= n`.
    pub lb2_truncated: bool,
}

/// Core of both sides: `levels(t)` gives the (mirrored) figures that must
/// fall below `threshold`, `q` is the root figure, `aux` is `B` or `G`.
fn side_bounds(
    q: f64,
    n: usize,
    threshold: f64,
    aux: f64,
    levels: &dyn Fn(usize) -> Vec<f64>,
) -> SideBounds {
    let nf = n as f64;
    let t_first = levels_to_reach(q, threshold);
    let (ub, ub_clamped) = match t_first {
        Some(t) if t < n => ((nf - t as f64) / nf, false),
        Some(t) => (0.0, t > n),
        None => (0.0, true),
    };
    let mut out = SideBounds {
        ub,
        lb1: 0.0,
        lb2: 0.0,
        t_first,
        t_r: None,
        t_gamma: None,
        gamma: 0.0,
        t_lb2: None,
        gamma_prime: 0.0,
        gamma_prime_approx: 0.0,
        ub_clamped,
        lb2_truncated: false,
    };
    let Some(t_r) = levels_to_reach(aux, threshold) else {
        return out;
    };
    out.t_r = Some(t_r);
    if t_r > n {
        return out;
    }
    let k = n - t_r;
    let scale = 0.5f64.powi(t_r as i32);
    // first level where some node reaches aux (keeps the fraction non-zero)
    let t_aux = (0..=k).find(|&t| {
        let mut v = q;
        for _ in 0..t {
            v *= v;
        }
        v <= aux
    });
    let frac = |t: usize, odd_only: bool| -> f64 {
        let vals = levels(t);
        let hits = vals
            .iter()
            .enumerate()
            .filter(|&(j, &v)| v <= aux && (!odd_only || j % 2 == 0))
            .count();
        hits as f64 / vals.len() as f64
    };
    let fractions: Vec<f64> = (0..=k).map(|t| frac(t, false)).collect();
    let odd_fractions: Vec<f64> = (0..=k).map(|t| frac(t, true)).collect();
    if let Some(tb) = t_aux {
        for t_gamma in tb..=k {
            let v = fractions[t_gamma] * scale * (k - t_gamma) as f64 / nf;
            if v > out.lb1 || out.t_gamma.is_none() {
                out.lb1 = v;
                out.t_gamma = Some(t_gamma);
                out.gamma = fractions[t_gamma];
            }
        }
    }
    // LB2: odd-indexed (minus-child) nodes at every level of the sum
    let t_start = (1..=k).find(|&t| {
        let mut v = q;
        for _ in 0..t - 1 {
            v *= v;
        }
        v <= aux / 2.0
    });
    if let Some(ts) = t_start {
        for t in ts..=k {
            let truncated = t + 2 * t_r <= n;
            let last = if truncated { (t + t_r).min(k) } else { k };
            let g = odd_fractions[t..=last].iter().cloned().fold(f64::INFINITY, f64::min);
            let steps: usize = (t..=last).map(|t0| k - t0).sum();
            let v = g * scale * steps as f64 / nf;
            if v > out.lb2 || out.t_lb2.is_none() {
                out.lb2 = v;
                out.t_lb2 = Some(t);
                out.gamma_prime = g;
                out.gamma_prime_approx = out.gamma / 2.0;
                out.lb2_truncated = truncated;
            }
        }
    }
    out
}

fn require_bec(tree: &ReliabilityTree, p: f64, n: usize) -> Result<()> {
    if tree.kind() != TreeKind::BecExact || tree.n() != n {
        return Err(Error::InvalidParameter("bounds need the exact erasure tree of depth n".into()));
    }
    if tree.node(0, 0).z != p {
        return Err(Error::InvalidParameter(format!(
            "tree root {} does not match p = {p}",
            tree.node(0, 0).z
        )));
    }
    Ok(())
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidParameter(format!("{name} = {v} outside (0, 1)")));
    }
    Ok(())
}

/// Good-channel bounds for `BEC(p)` with Bhattacharyya threshold `t` and
/// auxiliary threshold `b`.
pub fn gc_bounds(p: f64, n: usize, t: f64, b: f64, tree: &ReliabilityTree) -> Result<SideBounds> {
    check_unit("p", p)?;
    check_unit("T", t)?;
    check_unit("B", b)?;
    require_bec(tree, p, n)?;
    let levels = |lvl: usize| tree.level(lvl).iter().map(|r| r.z).collect();
    Ok(side_bounds(p, n, t, b, &levels))
}

/// Bad-channel bounds for `BEC(p)`. Nodes are relaxed when `Z > 1 - t`; `g`
/// plays the role of `G` (nodes with `Z >= 1 - g` are counted). Evaluated on
/// the mirrored complement tree, so it equals `gc_bounds(1 - p, n, t, g)`.
pub fn bc_bounds(p: f64, n: usize, t: f64, g: f64, tree: &ReliabilityTree) -> Result<SideBounds> {
    check_unit("p", p)?;
    check_unit("T", t)?;
    check_unit("G", g)?;
    require_bec(tree, p, n)?;
    let levels = |lvl: usize| {
        tree.level(lvl)
            .iter()
            .rev()
            .map(|r| 2.0 * r.e_lower_gap)
            .collect()
    };
    Ok(side_bounds(1.0 - tree.node(0, 0).z, n, t, g, &levels))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcBounds {
    pub ub: f64,
    pub lb1: f64,
    pub lb2: f64,
}

impl AcBounds {
    pub fn lb(&self) -> f64 {
        self.lb1.max(self.lb2)
    }
}

/// All-channel bounds from the two sides (valid when their relaxed sets are
/// disjoint).
pub fn ac_bounds(gc: &SideBounds, bc: &SideBounds, p: f64) -> AcBounds {
    AcBounds {
        ub: if p <= 0.5 { gc.ub } else { bc.ub },
        lb1: gc.lb1 + bc.lb1,
        lb2: gc.lb2 + bc.lb2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticBounds {
    pub gc: f64,
    pub bc: f64,
    /// Limit `1 - 2 beta C` of the combined reduction.
    pub combined: f64,
}

/// `(C - eps)(1 - (2 + delta) beta)` and
/// `(1 - C - eps)(1 - (2 + delta) log2(n) / n)`, both clamped at 0.
pub fn asymptotic_bounds(c: f64, beta: f64, n: usize, delta: f64, epsilon: f64) -> Result<AsymptoticBounds> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::InvalidParameter(format!("capacity {c} outside [0, 1]")));
    }
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::InvalidParameter(format!("beta = {beta} outside (0, 1/2)")));
    }
    if !(delta > 0.0 && delta < 1.0 / beta - 2.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} outside (0, 1/beta - 2)")));
    }
    if !(epsilon > 0.0) || n < 2 {
        return Err(Error::InvalidParameter("need epsilon > 0 and n >= 2".into()));
    }
    let nf = n as f64;
    Ok(AsymptoticBounds {
        gc: ((c - epsilon) * (1.0 - (2.0 + delta) * beta)).max(0.0),
        bc: ((1.0 - c - epsilon) * (1.0 - (2.0 + delta) * nf.log2() / nf)).max(0.0),
        combined: 1.0 - 2.0 * beta * c,
    })
}

/// Checks the mirror/complement isomorphism between the trees of `BEC(p)`
/// and `BEC(1-p)`, and that good relaxation of `BEC(1-p)` at threshold `t`
/// mirrors bad relaxation of `BEC(p)` at `1 - t`.
pub fn duality_check(p: f64, n: usize, t: f64) -> Result<bool> {
    check_unit("p", p)?;
    check_unit("T", t)?;
    let a = bec_z_tree(p, n)?;
    let b = bec_z_tree(1.0 - p, n)?;
    for lvl in 0..=n {
        let (la, lb) = (a.level(lvl), b.level(lvl));
        for (x, y) in la.iter().zip(lb.iter().rev()) {
            if (x.z - (1.0 - y.z)).abs() > 1e-12 {
                return Ok(false);
            }
        }
    }
    let thr = Thresholds::from_bec_z(t)?;
    let (good, _) = relaxation_map(&b, Scenario::Gc, &thr);
    let (bad, _) = relaxation_map(&a, Scenario::Bc, &thr);
    Ok(good.mirrored() == bad)
}

/// Per-mode latency of one construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatencyReport {
    pub fp: u64,
    pub rscd: u64,
    pub sscd_fp: u64,
    pub sscd_rp: u64,
}

impl LatencyReport {
    /// `fp` is the fully polarized code, `rp` the relaxed one (same length).
    pub fn new(fp: &CodeSpec, rp: &CodeSpec) -> Self {
        Self {
            fp: latency_cycles(fp, LatencyMode::ScFp),
            rscd: latency_cycles(rp, LatencyMode::Rscd),
            sscd_fp: latency_cycles(fp, LatencyMode::SscdFp),
            sscd_rp: latency_cycles(rp, LatencyMode::SscdRp),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasuredCr {
    pub gc: f64,
    pub bc: f64,
    pub ac: f64,
}

/// Everything evaluated at one erasure-channel grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub p: f64,
    pub fer_target: f64,
    /// Bhattacharyya-domain good threshold; the bad one is `1 - t_good`.
    pub t_good: f64,
    pub b: f64,
    pub g: f64,
    pub measured_cr: MeasuredCr,
    pub rate_fp: f64,
    pub rate_ac: f64,
    pub gc: SideBounds,
    pub bc: SideBounds,
    pub ac: AcBounds,
    pub asymptotic: AsymptoticBounds,
    pub latency: LatencyReport,
    /// The good and bad relaxed sets are disjoint (AC bounds apply).
    pub ac_disjoint: bool,
    pub violations: Vec<String>,
}

/// Parameters of the asymptotic columns of a [`BoundsReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub beta: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl Default for AsymptoticParams {
    fn default() -> Self {
        Self {
            beta: 0.25,
            delta: 0.1,
            epsilon: 1e-3,
        }
    }
}

/// Evaluates bounds and measured reductions for `BEC(p)` at length `2^n` and
/// FER target `fer`, with `T = 2 fer / N`, `B = 2p - p^2` and `1 - G = p^2`.
pub fn bec_bounds_report(p: f64, n: usize, fer: f64, asym: AsymptoticParams) -> Result<BoundsReport> {
    check_unit("p", p)?;
    let tree = bec_z_tree(p, n)?;
    let t_good = 2.0 * fer / (1u64 << n) as f64;
    let thr = Thresholds::from_bec_z(t_good)?;
    let b = 2.0 * p - p * p;
    let q = 1.0 - p;
    let g = 2.0 * q - q * q;
    let gc = gc_bounds(p, n, t_good, b, &tree)?;
    let bc = bc_bounds(p, n, t_good, g, &tree)?;
    let ac = ac_bounds(&gc, &bc, p);
    let (map_gc, _) = relaxation_map(&tree, Scenario::Gc, &thr);
    let (map_bc, _) = relaxation_map(&tree, Scenario::Bc, &thr);
    let (map_ac, ep_ac) = relaxation_map(&tree, Scenario::Ac, &thr);
    let measured = MeasuredCr {
        gc: measured_cr(&map_gc),
        bc: measured_cr(&map_bc),
        ac: measured_cr(&map_ac),
    };
    let ac_disjoint = skipped_ops(&map_ac) == skipped_ops(&map_gc) + skipped_ops(&map_bc);
    let fp = construct_fp(&tree, Target::Fer(fer))?.code;
    let (good, _) = crate::analysis::construct::select_good_set(&ep_ac, Target::Fer(fer))?;
    let rp = CodeSpec::new(map_ac, good)?;

    let mut violations = Vec::new();
    let mut check = |name: &str, lo: f64, v: f64, hi: f64| {
        if !(lo <= v && v <= hi) {
            violations.push(format!("{name}: {lo} <= {v} <= {hi}"));
        }
    };
    check("gc", gc.lb1.max(gc.lb2), measured.gc, gc.ub);
    check("bc", bc.lb1.max(bc.lb2), measured.bc, bc.ub);
    if ac_disjoint {
        check("ac", ac.lb(), measured.ac, ac.ub);
    }
    Ok(BoundsReport {
        n,
        p,
        fer_target: fer,
        t_good,
        b,
        g,
        measured_cr: measured,
        rate_fp: fp.rate(),
        rate_ac: rp.rate(),
        gc,
        bc,
        ac,
        asymptotic: asymptotic_bounds(q, asym.beta, n, asym.delta, asym.epsilon)?,
        latency: LatencyReport::new(&fp, &rp),
        ac_disjoint,
        violations,
    })
}

impl BoundsReport {
    pub const CSV_COLUMNS: &'static str = "p,n,fer_target,t_good,rate_fp,rate_ac,rate_loss,\
cr_gc,cr_bc,cr_ac,gc_ub,gc_lb1,gc_lb2,bc_ub,bc_lb1,bc_lb2,ac_ub,ac_lb1,ac_lb2,\
gc_gamma,gc_gamma_prime,gc_gamma_prime_approx,bc_beta,bc_beta_prime,bc_beta_prime_approx,\
lb2_truncated,asym_gc,asym_bc,asym_combined,lat_fp,lat_rscd,lat_sscd_fp,lat_sscd_rp,ac_disjoint,violations";

    pub fn csv_row(&self) -> String {
        let f = |v: f64| format!("{v:.6}");
        [
            format!("{}", self.p),
            self.n.to_string(),
            format!("{:e}", self.fer_target),
            format!("{:e}", self.t_good),
            f(self.rate_fp),
            f(self.rate_ac),
            format!("{:e}", self.rate_fp - self.rate_ac),
            f(self.measured_cr.gc),
            f(self.measured_cr.bc),
            f(self.measured_cr.ac),
            f(self.gc.ub),
            f(self.gc.lb1),
            f(self.gc.lb2),
            f(self.bc.ub),
            f(self.bc.lb1),
            f(self.bc.lb2),
            f(self.ac.ub),
            f(self.ac.lb1),
            f(self.ac.lb2),
            f(self.gc.gamma),
            f(self.gc.gamma_prime),
            f(self.gc.gamma_prime_approx),
            f(self.bc.gamma),
            f(self.bc.gamma_prime),
            f(self.bc.gamma_prime_approx),
            (self.gc.lb2_truncated || self.bc.lb2_truncated).to_string(),
            f(self.asymptotic.gc),
            f(self.asymptotic.bc),
            f(self.asymptotic.combined),
            self.latency.fp.to_string(),
            self.latency.rscd.to_string(),
            self.latency.sscd_fp.to_string(),
            self.latency.sscd_rp.to_string(),
            self.ac_disjoint.to_string(),
            self.violations.len().to_string(),
        ]
        .join(",")
    }
}

/// Full CSV document for a grid of reports.
pub fn bounds_csv(rows: &[BoundsReport]) -> String {
    let mut s = format!("{BOUNDS_CSV_VERSION}\n{}\n", BoundsReport::CSV_COLUMNS);
    for r in rows {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}
