//! Matrix exponential by scaling and squaring with a rigorously truncated
//! Taylor series.
//!
//! The argument is halved (exactly — powers of two are exact in binary
//! arithmetic) until its induced 1-norm is below one half, the series is
//! summed until the tail bound `2 * ||X||^(K+1) / (K+1)!` drops under the
//! working-precision target, and the result is squared back up. Sixty-four
//! guard bits absorb the error amplification of the squaring stage.

use crate::float::HpFloat;
use crate::matrix::{MatrixExact, MatrixHp, RingScalar};

/// Guard bits for the summation and squaring stages.
const GUARD_BITS: u32 = 64;

/// `exp(t L)` for an exact generator and a nonnegative time, rounded to
/// `prec` bits. The product `t L` is formed once at the working precision
/// before the exponential is taken.
pub fn matrix_exp(l: &MatrixExact, t: &HpFloat, prec: u32) -> MatrixHp {
    assert!(!t.is_negative(), "propagator times are nonnegative");
    let wp = prec + GUARD_BITS;
    let scale = t.clone().with_min_prec(wp);
    let x = l.to_hp(wp).map(|z| z.scale(&scale));
    matrix_exp_hp(&x, prec)
}

/// `exp(a)`, rounded to `prec` bits.
pub fn matrix_exp_hp(a: &MatrixHp, prec: u32) -> MatrixHp {
    let wp = prec + GUARD_BITS;
    let n = a.n();
    let lifted = a.with_min_prec(wp);
    let norm = lifted.one_norm();

    // Scale by 2^-s so the scaled norm is below 1/2.
    let s = if norm.is_zero() {
        0
    } else {
        let mut k = norm.log2_f64().floor() as i64;
        // log2 through f64 can be off by one near a binade boundary; fix it
        // so that norm lies in [2^k, 2^(k+1)).
        while HpFloat::pow2(k + 1, wp) <= norm {
            k += 1;
        }
        while HpFloat::pow2(k, wp) > norm {
            k -= 1;
        }
        (k + 2).max(0) as u32
    };
    let x = lifted.map(|z| z.scale(&HpFloat::pow2(-i64::from(s), wp)));
    let nb = x.one_norm();

    // sum = I + X + X^2/2! + ...; stop when the remaining tail is below
    // 2^-(wp+5). The tail bound is itself computed in rounded arithmetic,
    // but its relative rounding error over a few hundred terms is far
    // smaller than the five spare guard bits.
    let half_target = HpFloat::pow2(-i64::from(wp) - 6, 64);
    let mut term = x.clone();
    let mut sum = MatrixHp::identity_hp(n, wp).add(&term);
    let mut bound = nb.clone();
    let mut k: u64 = 1;
    loop {
        let next_bound = &(&bound * &nb) / &HpFloat::from_u64(k + 1, 64);
        if next_bound <= half_target {
            break;
        }
        k += 1;
        term = term.mul(&x).map(|z| z.ring_div_int(k));
        sum = sum.add(&term);
        bound = next_bound;
        assert!(k < 100_000, "exponential series failed to terminate");
    }

    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    sum.round_to(prec)
}
