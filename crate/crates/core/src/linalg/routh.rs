//! Exact Routh–Hurwitz stability test.
//!
//! Decides whether every root of a polynomial lies strictly in the open left
//! half plane, using only rational arithmetic on the coefficients. For a
//! complex-coefficient polynomial `p` the test runs on `p * conj(p)`, which
//! has real coefficients and the same root real parts.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::ExactScalar;
use crate::linalg::charpoly::char_poly_ring;
use crate::matrix::MatrixExact;

/// Result of a Routh–Hurwitz table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouthOutcome {
    /// Every root has strictly negative real part.
    pub hurwitz: bool,
    /// The table degenerated (a zero pivot or an all-zero row), which happens
    /// exactly when roots sit on or symmetric about the imaginary axis. In
    /// that case `hurwitz` is definitively `false`, but the polynomial may be
    /// marginally stable rather than unstable.
    pub degenerate: bool,
}

/// Routh–Hurwitz criterion for a real polynomial.
///
/// `coeffs[k]` is the coefficient of `lambda^k`; the leading coefficient must
/// be nonzero. Returns whether all roots lie in the open left half plane.
pub fn hurwitz_real(coeffs: &[BigRational]) -> RouthOutcome {
    let lead = coeffs.last().expect("polynomial must have a coefficient");
    assert!(!lead.is_zero(), "leading coefficient must be nonzero");
    let n = coeffs.len() - 1;
    if n == 0 {
        // A nonzero constant has no roots at all.
        return RouthOutcome {
            hurwitz: true,
            degenerate: false,
        };
    }

    // Normalise the sign so the leading coefficient is positive; this does
    // not move any root.
    let normalised: Vec<BigRational> = if lead.is_negative() {
        coeffs.iter().map(|c| -c).collect()
    } else {
        coeffs.to_vec()
    };

    // First two rows interleave the coefficients from the top degree down.
    let width = n / 2 + 1;
    let coeff = |k: i64| -> BigRational {
        if k < 0 {
            BigRational::zero()
        } else {
            normalised[k as usize].clone()
        }
    };
    let mut above: Vec<BigRational> = (0..width).map(|j| coeff(n as i64 - 2 * j as i64)).collect();
    let mut current: Vec<BigRational> =
        (0..width).map(|j| coeff(n as i64 - 1 - 2 * j as i64)).collect();

    let mut first_column = vec![above[0].clone()];
    for row in 1..=n {
        let pivot = current[0].clone();
        first_column.push(pivot.clone());
        if row == n {
            break;
        }
        if pivot.is_zero() {
            // A zero pivot stops the recurrence: either the whole row
            // vanishes (an even factor with axis-symmetric roots) or only
            // the leading entry does. Both certify the polynomial is not
            // Hurwitz.
            return RouthOutcome {
                hurwitz: false,
                degenerate: true,
            };
        }
        let next: Vec<BigRational> = (0..width)
            .map(|j| {
                let a = above.get(j + 1).cloned().unwrap_or_else(BigRational::zero);
                let c = current.get(j + 1).cloned().unwrap_or_else(BigRational::zero);
                (&pivot * a - &above[0] * c) / &pivot
            })
            .collect();
        above = std::mem::replace(&mut current, next);
    }

    if first_column.iter().all(|v| v.is_positive()) {
        RouthOutcome {
            hurwitz: true,
            degenerate: false,
        }
    } else if first_column.iter().any(|v| v.is_zero()) {
        // Only the final entry (the constant coefficient) can be zero here,
        // signalling a root at the origin.
        RouthOutcome {
            hurwitz: false,
            degenerate: true,
        }
    } else {
        RouthOutcome {
            hurwitz: false,
            degenerate: false,
        }
    }
}

/// Whether every eigenvalue of `m` has strictly negative real part.
pub fn is_asymptotically_stable(m: &MatrixExact) -> RouthOutcome {
    let p = char_poly_ring(m, ExactScalar::one());
    if p.iter().all(ExactScalar::is_real) {
        let real: Vec<BigRational> = p.iter().map(|c| c.re().clone()).collect();
        return hurwitz_real(&real);
    }
    // q = p * conj(p) has real coefficients and doubles every root real part
    // pattern, so q is Hurwitz iff p is.
    let deg = p.len() - 1;
    let mut q = vec![BigRational::zero(); 2 * deg + 1];
    for (i, ci) in p.iter().enumerate() {
        for (j, cj) in p.iter().enumerate() {
            let term = ci * &cj.conj();
            q[i + j] += term.re();
        }
    }
    hurwitz_real(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use num_traits::One;

    fn poly(coeffs: &[i64]) -> Vec<BigRational> {
        coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn linear_factors() {
        assert_eq!(
            hurwitz_real(&poly(&[1, 1])),
            RouthOutcome { hurwitz: true, degenerate: false }
        );
        assert_eq!(
            hurwitz_real(&poly(&[-1, 1])),
            RouthOutcome { hurwitz: false, degenerate: false }
        );
        // Sign normalisation: -(lambda + 1).
        assert_eq!(
            hurwitz_real(&poly(&[-1, -1])),
            RouthOutcome { hurwitz: true, degenerate: false }
        );
    }

    #[test]
    fn products_of_left_half_plane_roots() {
        // (x+1)(x+2)(x+3) = x^3 + 6x^2 + 11x + 6
        assert!(hurwitz_real(&poly(&[6, 11, 6, 1])).hurwitz);
        // (x^2 + x + 1)^2
        assert!(hurwitz_real(&poly(&[1, 2, 3, 2, 1])).hurwitz);
    }

    #[test]
    fn right_half_plane_root_is_refuted_cleanly() {
        // (x-1)(x+2)(x+3) = x^3 + 4x^2 + x - 6
        let out = hurwitz_real(&poly(&[-6, 1, 4, 1]));
        assert!(!out.hurwitz);
        assert!(!out.degenerate);
    }

    #[test]
    fn imaginary_axis_roots_degenerate() {
        // x^2 + 1: the odd-coefficient row vanishes entirely.
        let out = hurwitz_real(&poly(&[1, 0, 1]));
        assert!(!out.hurwitz);
        assert!(out.degenerate);
        // (x+1)(x^2+1): zero row appears mid-table.
        let out = hurwitz_real(&poly(&[1, 1, 1, 1]));
        assert!(!out.hurwitz);
        assert!(out.degenerate);
        // Root at the origin: x^2 + x.
        let out = hurwitz_real(&poly(&[0, 1, 1]));
        assert!(!out.hurwitz);
        assert!(out.degenerate);
    }

    #[test]
    fn zero_pivot_with_nonzero_row() {
        // x^4 + x^3 + 2x^2 + 2x + 1 produces a zero pivot whose row is not
        // all zero; the polynomial has roots off the open left half plane.
        let out = hurwitz_real(&poly(&[1, 2, 2, 1, 1]));
        assert!(!out.hurwitz);
        assert!(out.degenerate);
    }

    #[test]
    fn tridiagonal_mixing_matrix_is_stable() {
        // Characteristic polynomial x^3 + x^2 + 2x + 1; all roots in the
        // open left half plane.
        assert!(hurwitz_real(&poly(&[1, 2, 1, 1])).hurwitz);
    }

    #[test]
    fn matrix_stability_real_and_complex() {
        let diag = Matrix::from_rows(vec![
            vec![ExactScalar::int(-1), ExactScalar::int(0)],
            vec![ExactScalar::int(0), ExactScalar::int(-2)],
        ])
        .unwrap();
        assert!(is_asymptotically_stable(&diag).hurwitz);

        let rotation = Matrix::from_rows(vec![
            vec![ExactScalar::int(0), ExactScalar::int(-1)],
            vec![ExactScalar::int(1), ExactScalar::int(0)],
        ])
        .unwrap();
        let out = is_asymptotically_stable(&rotation);
        assert!(!out.hurwitz);
        assert!(out.degenerate);

        // Complex spectrum {-1 + i, -2}: stable, exercises the p * conj(p)
        // reduction.
        let shifted = Matrix::from_rows(vec![
            vec![
                ExactScalar::int(-1) + ExactScalar::i(),
                ExactScalar::int(0),
            ],
            vec![ExactScalar::int(0), ExactScalar::int(-2)],
        ])
        .unwrap();
        assert!(is_asymptotically_stable(&shifted).hurwitz);

        // Complex spectrum {i, -1}: eigenvalue on the axis.
        let marginal = Matrix::from_rows(vec![
            vec![ExactScalar::i(), ExactScalar::int(0)],
            vec![ExactScalar::int(0), ExactScalar::int(-1)],
        ])
        .unwrap();
        let out = is_asymptotically_stable(&marginal);
        assert!(!out.hurwitz);
        assert!(out.degenerate);
    }

    #[test]
    fn constant_polynomial_is_vacuously_hurwitz() {
        assert!(hurwitz_real(&[BigRational::one()]).hurwitz);
    }
}
