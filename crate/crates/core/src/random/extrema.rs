//! Root-finders for the two extremum equations of the expected-edge curves
//! under p(n) = n^α/3ⁿ:
//!
//! * n_max — the universe size maximizing E[R_s] for a fixed edge size s:
//!   α/n + ln(n / (3(n − s))) = 0.
//! * s_max — the edge size maximizing E[R_s] (equivalently u_s, since p does
//!   not depend on s) for a fixed universe size n:
//!   2^(s−1)·ln2 / (2^(s−1) − 1) + ln((n − s)/s) = 0.
//!
//! Both use bracketing + bisection: the equations have logarithmic
//! singularities at the domain edges where Newton steps can escape, while a
//! bracketed sign change makes convergence unconditional.

use num_bigint::BigUint;
use serde::Serialize;

use crate::counting;
use crate::error::{Error, Result};

/// Which variable a solver optimized over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtremumVariable {
    #[serde(rename = "n_max")]
    NMax,
    #[serde(rename = "s_max")]
    SMax,
}

/// A located extremum: the real root of the stationarity equation plus the
/// integer argmax obtained by comparing the exact objective at ⌊root⌋/⌈root⌉.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExtremumResult {
    pub variable: ExtremumVariable,
    /// Real root of the stationarity equation.
    pub value: f64,
    /// |equation(value)| at the returned root.
    pub residual: f64,
    /// Bisection steps taken (bracket expansions excluded).
    pub iterations: u32,
    /// Integer maximizer of the underlying expectation.
    pub argmax: u64,
}

const RESIDUAL_TOLERANCE: f64 = 1e-9;
const MAX_BISECTIONS: u32 = 500;

/// Bisects f on [lo, hi]; requires f(lo) > 0 > f(hi).
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64, u32) {
    let mut iterations = 0;
    let mut mid = 0.5 * (lo + hi);
    while iterations < MAX_BISECTIONS {
        mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval narrowed to adjacent floats
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if hi - lo < 1e-13 * mid.max(1.0) {
            mid = 0.5 * (lo + hi);
            break;
        }
    }
    (mid, f(mid).abs(), iterations)
}

/// The universe size at which E[R_s] peaks for fixed edge size s under
/// p = n^α/3ⁿ. The root always exists: the equation diverges to +∞ as
/// n → s⁺ and tends to −ln3 as n → ∞.
pub fn solve_n_max(s: u32, alpha: f64) -> Result<ExtremumResult> {
    if s < 2 {
        return Err(Error::SizeOutOfRange { s, n: u32::MAX });
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidFamily {
            alpha,
            beta: 3.0,
            reason: "alpha must be finite".into(),
        });
    }
    let sf = s as f64;
    let f = |n: f64| alpha / n + (n / (3.0 * (n - sf))).ln();

    // Left end: walk toward the n = s singularity until f is positive.
    let mut lo = sf + 1.0;
    let mut shrinks = 0;
    while f(lo) <= 0.0 {
        lo = sf + (lo - sf) / 2.0;
        shrinks += 1;
        if shrinks > 200 {
            return Err(Error::NoRoot { lo: sf, hi: lo });
        }
    }
    // Right end: the default bracket suffices unless α is enormous.
    let mut hi = 100.0 * sf + 1000.0;
    let mut expansions = 0;
    while f(hi) >= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 64 {
            return Err(Error::NoRoot { lo, hi });
        }
    }

    let (root, residual, iterations) = bisect(f, lo, hi);
    debug_assert!(residual <= RESIDUAL_TOLERANCE);

    // ln E[R_s](n) = α·ln n − n·ln3 + ln u_s(n); compare the two neighbors.
    let objective = |n: f64| alpha * n.ln() - n * 3f64.ln() + counting::ln_size_count(n, sf);
    let floor = root.floor().max(sf + 1.0);
    let ceil = root.ceil();
    let argmax = if objective(floor) >= objective(ceil) {
        floor as u64
    } else {
        ceil as u64
    };

    Ok(ExtremumResult {
        variable: ExtremumVariable::NMax,
        value: root,
        residual,
        iterations,
        argmax,
    })
}

/// The edge size at which u_s(n) (hence E[R_s] for any s-independent p)
/// peaks for a fixed universe size n ≥ 4.
pub fn solve_s_max(n: u64) -> Result<ExtremumResult> {
    if n < 4 {
        return Err(Error::UniverseTooSmall {
            n: n as u32,
            min: 4,
        });
    }
    let nf = n as f64;
    // 2^(s−1)ln2/(2^(s−1) − 1) rewritten as ln2/(1 − 2^(1−s)): the naive
    // form overflows f64 once s exceeds ~1025.
    let f = |s: f64| std::f64::consts::LN_2 / (1.0 - (2f64).powf(1.0 - s)) + ((nf - s) / s).ln();

    let lo = 2.0;
    let hi = nf - 1.0;
    if f(lo) <= 0.0 || f(hi) >= 0.0 {
        return Err(Error::NoRoot { lo, hi });
    }
    let (root, residual, iterations) = bisect(f, lo, hi);
    debug_assert!(residual <= RESIDUAL_TOLERANCE);

    // u_s is log-concave in s, so the integer argmax is ⌊root⌋ or ⌊root⌋+1.
    // Near the peak the neighbors can agree to 10+ significant digits —
    // far past f64 log precision — so decide exactly:
    // u_{s+1} ≥ u_s  ⟺  (2^s − 1)(n − s) ≥ (2^(s−1) − 1)(s + 1).
    let floor = (root.floor() as u64).clamp(2, n - 2);
    let move_up = if floor >= 66 {
        // 2^(s−1) > n ≥ every linear term, so the sign of D = 2n − 3s − 1
        // decides; at D = 0 the difference is (s+1)/2 > 0, so D ≥ 0 — for
        // integers, 2n − 3s > 0 — moves up.
        2 * (n as i128) - 3 * (floor as i128) > 0
    } else {
        let shift = floor as usize;
        let grow = ((BigUint::from(1u8) << shift) - 1u8) * (n - floor);
        let stay = ((BigUint::from(1u8) << (shift - 1)) - 1u8) * (floor + 1);
        grow > stay
    };
    let argmax = if move_up { floor + 1 } else { floor };

    Ok(ExtremumResult {
        variable: ExtremumVariable::SMax,
        value: root,
        residual,
        iterations,
        argmax,
    })
}
