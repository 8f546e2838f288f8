//! Spectral norm via cyclic Jacobi diagonalisation of the Gram matrix.
//!
//! `||M||_2 = sqrt(lambda_max(M* M))`. The Gram matrix is Hermitian by
//! construction even in rounded arithmetic (mirrored entries are computed from
//! the same rounded products, and rounding is sign-symmetric), and the Jacobi
//! updates keep it that way: off-diagonal pairs are written as explicit
//! conjugates and the rotated diagonal is updated with the real closed form.
//!
//! Each rotation first strips the phase of the pivot entry, reducing the 2x2
//! block to the real symmetric case, then applies the classical rotation
//! choosing the smaller angle. Cyclic sweeps converge quadratically; the
//! iteration stops once the off-diagonal mass is negligible at the requested
//! precision and fails loudly if a fixed sweep budget is exhausted.

use crate::error::{CoreError, Result};
use crate::float::{HpComplex, HpFloat};
use crate::matrix::MatrixHp;

const SWEEP_BUDGET: usize = 64;
/// Guard bits carried by the iteration beyond the requested precision.
const GUARD_BITS: u32 = 32;

/// Sum of `|h_ij|^2` over off-diagonal entries and over all entries.
fn off_and_frob_sqr(h: &MatrixHp, wp: u32) -> (HpFloat, HpFloat) {
    let n = h.n();
    let mut off = HpFloat::zero(wp);
    let mut frob = HpFloat::zero(wp);
    for i in 0..n {
        for j in 0..n {
            let m = h.get(i, j).abs_sqr();
            frob = &frob + &m;
            if i != j {
                off = &off + &m;
            }
        }
    }
    (off, frob)
}

/// Largest singular value of `m`, rounded to `prec` bits.
///
/// Fails with [`CoreError::NonConvergence`] if the Jacobi iteration does not
/// reach the target off-diagonal mass within its sweep budget; this does not
/// happen for Hermitian inputs of the dimensions used here, so a failure
/// indicates a corrupted input rather than a tight budget.
pub fn spectral_norm(m: &MatrixHp, prec: u32) -> Result<HpFloat> {
    let wp = prec + GUARD_BITS;
    let n = m.n();
    let lifted = m.with_min_prec(wp);
    let mut h = lifted.adjoint().mul(&lifted);
    debug_assert!(h.hermitian_defect().is_none());

    let one = HpFloat::one(wp);
    let two = HpFloat::pow2(1, wp);
    // Stop once off^2 <= frob^2 * 2^(-2*(prec+8)): diagonal entries then
    // approximate the eigenvalues to well below the rounding target.
    let tol_scale = HpFloat::pow2(-2 * (i64::from(prec) + 8), wp);

    let mut converged = false;
    for _ in 0..SWEEP_BUDGET {
        let (off, frob) = off_and_frob_sqr(&h, wp);
        if off <= &frob * &tol_scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let pivot = h.get(p, q).clone();
                if pivot.is_zero() {
                    continue;
                }
                let g = pivot.abs();
                let alpha = h.get(p, p).re.clone();
                let beta = h.get(q, q).re.clone();
                // Phase of the pivot; conj(u) carries the phase through the
                // column updates below.
                let ubar = pivot.conj().scale(&(&one / &g));
                let zeta = &(&beta - &alpha) / &(&two * &g);
                let root = (&(&zeta * &zeta) + &one).sqrt();
                let mut t = &one / &(&zeta.abs() + &root);
                if zeta.is_negative() {
                    t = -&t;
                }
                let c = &one / &(&(&one + &(&t * &t)).sqrt());
                let s = &t * &c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let hkp = h.get(k, p).clone();
                    let hkq = &ubar * h.get(k, q);
                    let new_kp = &hkp.scale(&c) - &hkq.scale(&s);
                    let new_kq = &hkp.scale(&s) + &hkq.scale(&c);
                    h.set(k, p, new_kp.clone());
                    h.set(p, k, new_kp.conj());
                    h.set(k, q, new_kq.clone());
                    h.set(q, k, new_kq.conj());
                }
                let tg = &t * &g;
                h.set(p, p, HpComplex::from_re((&alpha - &tg).with_min_prec(wp)));
                h.set(q, q, HpComplex::from_re((&beta + &tg).with_min_prec(wp)));
                h.set(p, q, HpComplex::zero(wp));
                h.set(q, p, HpComplex::zero(wp));
            }
        }
    }
    if !converged {
        return Err(CoreError::NonConvergence {
            kernel: "jacobi spectral norm",
            budget: SWEEP_BUDGET,
        });
    }

    let mut largest = HpFloat::zero(wp);
    for i in 0..n {
        let d = &h.get(i, i).re;
        if *d > largest {
            largest = d.clone();
        }
    }
    Ok(largest.sqrt().round_to(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn complexify(rows: &[&[(i64, i64)]], prec: u32) -> MatrixHp {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(re, im)| {
                            HpComplex::new(HpFloat::from_i64(re, prec), HpFloat::from_i64(im, prec))
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn assert_close(a: &HpFloat, b: &HpFloat, log2_tol: i64) {
        let diff = (a - b).abs();
        assert!(
            diff <= HpFloat::pow2(log2_tol, a.precision_bits()),
            "difference {} exceeds 2^{}",
            diff,
            log2_tol
        );
    }

    #[test]
    fn diagonal_matrix() {
        let m = complexify(&[&[(3, 0), (0, 0)], &[(0, 0), (-4, 0)]], 192);
        let norm = spectral_norm(&m, 192).unwrap();
        assert_eq!(norm, HpFloat::from_i64(4, 192));
    }

    #[test]
    fn unitary_has_norm_one() {
        let m = complexify(&[&[(0, 0), (0, 1)], &[(1, 0), (0, 0)]], 192);
        let norm = spectral_norm(&m, 192).unwrap();
        assert_close(&norm, &HpFloat::one(192), -188);
    }

    #[test]
    fn shear_norm_is_golden_ratio() {
        // ||[[1,1],[0,1]]|| = (1+sqrt 5)/2.
        let prec = 256;
        let m = complexify(&[&[(1, 0), (1, 0)], &[(0, 0), (1, 0)]], prec);
        let norm = spectral_norm(&m, prec).unwrap();
        let phi = &(&HpFloat::one(prec) + &HpFloat::from_i64(5, prec).sqrt())
            / &HpFloat::pow2(1, prec);
        assert_close(&norm, &phi, -250);
    }

    #[test]
    fn complex_shear_norm_is_golden_ratio() {
        // The Gram matrix of [[1,i],[0,1]] is [[1,i],[-i,2]], whose largest
        // eigenvalue is (3+sqrt 5)/2; the rotation must handle the phase.
        let prec = 256;
        let m = complexify(&[&[(1, 0), (0, 1)], &[(0, 0), (1, 0)]], prec);
        let norm = spectral_norm(&m, prec).unwrap();
        let phi = &(&HpFloat::one(prec) + &HpFloat::from_i64(5, prec).sqrt())
            / &HpFloat::pow2(1, prec);
        assert_close(&norm, &phi, -250);
    }

    #[test]
    fn zero_matrix() {
        let m = complexify(&[&[(0, 0), (0, 0)], &[(0, 0), (0, 0)]], 128);
        let norm = spectral_norm(&m, 128).unwrap();
        assert!(norm.is_zero());
    }

    #[test]
    fn three_by_three_with_mixing() {
        // M = [[2,1,0],[1,3,1],[0,1,4]] is symmetric positive definite, so
        // the spectral norm is its largest eigenvalue. The characteristic
        // polynomial x^3 - 9x^2 + 24x - 18 factors as (x-3)(x^2-6x+6), so
        // that eigenvalue is 3 + sqrt(3).
        let prec = 224;
        let m = complexify(
            &[&[(2, 0), (1, 0), (0, 0)], &[(1, 0), (3, 0), (1, 0)], &[(0, 0), (1, 0), (4, 0)]],
            prec,
        );
        let norm = spectral_norm(&m, prec).unwrap();
        let expected = &HpFloat::from_i64(3, prec) + &HpFloat::from_i64(3, prec).sqrt();
        assert_close(&norm, &expected, -216);
    }
}
