//! Gaussian approximation of density evolution for BPSK over AWGN.
//!
//! Every bit-channel LLR is modelled as `N(m, 2m)`, so one mean tracks the
//! whole density. The check-node update goes through the usual `phi`
//! function.

const PHI_SPLIT: f64 = 10.0;

/// `ln phi(x)` with the two-piece approximation
/// `phi(x) = exp(-0.4527 x^0.86 + 0.0218)` below 10 and
/// `sqrt(pi/x) exp(-x/4) (1 - 10/(7x))` above; capped at `phi = 1`.
pub fn ln_phi(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let v = if x < PHI_SPLIT {
        -0.4527 * x.powf(0.86) + 0.0218
    } else {
        0.5 * (std::f64::consts::PI / x).ln() - 0.25 * x + (1.0 - 10.0 / (7.0 * x)).ln()
    };
    v.min(0.0)
}

pub fn phi(x: f64) -> f64 {
    ln_phi(x).exp()
}

/// Solves `ln phi(x) = target` on `[0, upper]` by bisection.
fn ln_phi_inverse(target: f64, upper: f64) -> Option<f64> {
    if target.is_nan() || upper.is_nan() {
        return None;
    }
    if target >= 0.0 {
        return Some(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, upper);
    if ln_phi(hi) > target {
        return None;
    }
    for _ in 0..200 {
        if hi - lo <= 1e-9 * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if ln_phi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Child means `(m-, m+)` of a node with mean `m`.
///
/// `m+ = 2m` and `m- = phi^-1(1 - (1 - phi(m))^2)`, evaluated in the log
/// domain as `ln phi(m) + ln(2 - phi(m))`.
pub fn children(m: f64) -> Option<(f64, f64)> {
    if m.is_nan() || m < 0.0 {
        return None;
    }
    if m == 0.0 {
        return Some((0.0, 0.0));
    }
    let lp = ln_phi(m);
    let target = lp + (2.0 - lp.exp()).ln();
    let minus = ln_phi_inverse(target, m)?;
    Some((minus, 2.0 * m))
}

/// `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Bit error probability of an `N(m, 2m)` LLR: `Q(sqrt(m/2))`.
pub fn error_probability(m: f64) -> f64 {
    q_function((m / 2.0).sqrt())
}

/// `1/2 - Q(sqrt(m/2))`, accurate when the error probability is near 1/2.
pub fn error_probability_gap(m: f64) -> f64 {
    0.5 * libm::erf(m.sqrt() / 2.0)
}
