//! Reference implementations shared by the integration tests. They are
//! written from the definitions and avoid the library's code paths.
#![allow(dead_code)]

use rand::Rng;
use relaxed_polar::analysis::RelaxationMap;

/// Bhattacharyya parameters of every tree node for `BEC(p)`, level by level.
pub fn bec_z_naive(p: f64, n: usize) -> Vec<Vec<f64>> {
    let mut levels = vec![vec![p]];
    for t in 0..n {
        let next = levels[t]
            .iter()
            .flat_map(|&z| [2.0 * z - z * z, z * z])
            .collect();
        levels.push(next);
    }
    levels
}

/// Relaxed when a node or one of its ancestors is marked.
pub fn random_map<R: Rng>(rng: &mut R, n: usize, prob: f64) -> RelaxationMap {
    let mut map = RelaxationMap::fully_polarized(n);
    for t in 0..=n {
        for j in 0..1usize << t {
            if !map.is_relaxed(t, j) && rng.random_bool(prob) {
                map.relax_subtree(t, j);
            }
        }
    }
    map
}

/// Skipped butterfly operations, counted from the top-most relaxed nodes.
pub fn skip_count(map: &RelaxationMap) -> u64 {
    let n = map.n();
    let mut total = 0;
    for t in 0..=n {
        for j in 0..1usize << t {
            let top = map.is_relaxed(t, j) && (t == 0 || !map.is_relaxed(t - 1, j / 2));
            if top {
                total += ((n - t) as u64) * (1u64 << (n - t));
            }
        }
    }
    total
}

/// `B_N F^{(x)n}` with `F = [[1,0],[1,1]]`, built by Kronecker products and
/// a row permutation.
pub fn generator_fp(n: usize) -> Vec<Vec<u8>> {
    let mut g = vec![vec![1u8]];
    for _ in 0..n {
        let m = g.len();
        let mut next = vec![vec![0u8; 2 * m]; 2 * m];
        for r in 0..m {
            for c in 0..m {
                next[r][c] = g[r][c];
                next[m + r][c] = g[r][c];
                next[m + r][m + c] = g[r][c];
            }
        }
        g = next;
    }
    let rev = |i: usize| if n == 0 { 0 } else { i.reverse_bits() >> (usize::BITS as usize - n) };
    (0..g.len()).map(|i| g[rev(i)].clone()).collect()
}

/// Generator of a relaxed code via the odd/even recursion
/// `x = (v_odd G', v_even G')`, where `v` is `(u_{2i-1} + u_{2i}, u_{2i})`
/// at polarized pairs and `u` itself at relaxed ones. Rows are `u` indices.
pub fn generator_relaxed(map: &RelaxationMap) -> Vec<Vec<u8>> {
    let len = map.len();
    (0..len)
        .map(|i| {
            let mut u = vec![0u8; len];
            u[i] = 1;
            transform_recursive(&u, map, map.n())
        })
        .collect()
}

fn transform_recursive(u: &[u8], map: &RelaxationMap, s: usize) -> Vec<u8> {
    if s == 0 {
        return u.to_vec();
    }
    let half = u.len() / 2;
    let mut first = Vec::with_capacity(half);
    let mut second = Vec::with_capacity(half);
    for k in 0..half {
        // the pair (2k, 2k+1) at level s descends from node k at level s-1
        let relaxed = map.is_relaxed(s - 1, k);
        let (a, b) = (u[2 * k], u[2 * k + 1]);
        first.push(if relaxed { a } else { a ^ b });
        second.push(b);
    }
    let mut x = transform_recursive(&first, map, s - 1);
    x.extend(transform_recursive(&second, map, s - 1));
    x
}

pub fn mul_gf2(u: &[u8], g: &[Vec<u8>]) -> Vec<u8> {
    let mut x = vec![0u8; g[0].len()];
    for (i, &bit) in u.iter().enumerate() {
        if bit == 1 {
            for (xk, gk) in x.iter_mut().zip(&g[i]) {
                *xk ^= gk;
            }
        }
    }
    x
}

/// Solves `x = u G` over GF(2) for invertible square `G`.
pub fn solve_gf2(g: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
    // transpose so that unknowns are columns: G^T u^T = x^T
    let len = g.len();
    let mut a: Vec<Vec<u8>> = (0..len)
        .map(|r| {
            let mut row: Vec<u8> = (0..len).map(|c| g[c][r]).collect();
            row.push(x[r]);
            row
        })
        .collect();
    for col in 0..len {
        let pivot = (col..len).find(|&r| a[r][col] == 1).expect("generator is invertible");
        a.swap(col, pivot);
        for r in 0..len {
            if r != col && a[r][col] == 1 {
                let src = a[col].clone();
                for (v, s) in a[r].iter_mut().zip(&src) {
                    *v ^= s;
                }
            }
        }
    }
    (0..len).map(|r| a[r][len]).collect()
}

fn check_node(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let s = a.signum() * b.signum();
    if a.is_infinite() && b.is_infinite() {
        return s * f64::INFINITY;
    }
    let (ma, mb) = (a.abs(), b.abs());
    let m = ma.min(mb);
    // exact identity: 2 atanh(tanh(a/2) tanh(b/2))
    let corr = (-(ma - mb).abs()).exp().ln_1p() - (-(ma + mb)).exp().ln_1p();
    s * (m - corr)
}

fn var_node(a: f64, b: f64, bit: u8) -> f64 {
    let v = if bit == 0 { b + a } else { b - a };
    if v.is_nan() {
        0.0
    } else {
        v
    }
}

/// Bit-channel LLR `L_M^{(k)}(y, u_1^{k-1})` by the odd/even recursion over
/// output halves, with relaxed parents passing the channel through.
/// `k` is 1-based; `s = log2 M`.
fn bit_llr(y: &[f64], hist: &[u8], k: usize, s: usize, map: &RelaxationMap) -> f64 {
    if s == 0 {
        return y[0];
    }
    let half = y.len() / 2;
    let parent = k.div_ceil(2);
    let pairs = (k - 1) / 2;
    // each earlier pair is combined or passed through by its own parent
    let first: Vec<u8> = (0..pairs)
        .map(|q| {
            if map.is_relaxed(s - 1, q) {
                hist[2 * q]
            } else {
                hist[2 * q] ^ hist[2 * q + 1]
            }
        })
        .collect();
    let second: Vec<u8> = (0..pairs).map(|q| hist[2 * q + 1]).collect();
    if map.is_relaxed(s - 1, parent - 1) {
        return if k % 2 == 1 {
            bit_llr(&y[..half], &first, parent, s - 1, map)
        } else {
            bit_llr(&y[half..], &second, parent, s - 1, map)
        };
    }
    let a = bit_llr(&y[..half], &first, parent, s - 1, map);
    let b = bit_llr(&y[half..], &second, parent, s - 1, map);
    if k % 2 == 1 {
        check_node(a, b)
    } else {
        var_node(a, b, hist[k - 2])
    }
}

/// Successive cancellation straight from the recursive bit-channel
/// likelihoods: quadratic in `N`, ties decide 0.
pub fn sc_reference(y: &[f64], info: &[bool], map: &RelaxationMap) -> Vec<u8> {
    let n = map.n();
    let mut u = Vec::with_capacity(y.len());
    for k in 1..=y.len() {
        let bit = if info[k - 1] {
            (bit_llr(y, &u, k, n, map) < 0.0) as u8
        } else {
            0
        };
        u.push(bit);
    }
    u
}

/// Latency by the cycle rules: leaves 0, relaxed roots 0 when every leaf
/// below is frozen and 1 otherwise, SSCD rate-0 0 and rate-1 `1 + depth`,
/// anything else `3 + left + right`.
pub fn latency_reference(map: &RelaxationMap, info: &[bool], use_map: bool, sscd: bool) -> u64 {
    fn go(t: usize, j: usize, n: usize, map: &RelaxationMap, info: &[bool], use_map: bool, sscd: bool) -> u64 {
        if t == n {
            return 0;
        }
        let span = 1usize << (n - t);
        let leaves = &info[j * span..(j + 1) * span];
        let zero = leaves.iter().all(|&b| !b);
        let one = leaves.iter().all(|&b| b);
        if use_map && map.is_relaxed(t, j) {
            return if zero { 0 } else { 1 };
        }
        if sscd && zero {
            return 0;
        }
        if sscd && one {
            return 1 + (n - t) as u64;
        }
        3 + go(t + 1, 2 * j, n, map, info, use_map, sscd) + go(t + 1, 2 * j + 1, n, map, info, use_map, sscd)
    }
    go(0, 0, map.n(), map, info, use_map, sscd)
}
