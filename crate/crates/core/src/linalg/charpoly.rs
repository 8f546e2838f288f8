//! Characteristic polynomials by the Faddeev-LeVerrier recurrence.
//!
//! The recurrence needs only ring operations and exact division by the step
//! counter, so it runs unchanged over exact scalars and over polynomial
//! entries. The latter yields the characteristic polynomial of a matrix
//! *family*: coefficients that are themselves polynomials in the step size,
//! which is what the small-step eigenvalue-sign analysis consumes.

use crate::matrix::{Matrix, MatrixExact, RingScalar};
use crate::poly::TauPoly;

/// Monic characteristic polynomial `det(lambda*I - M)` of a square matrix
/// over any commutative ring containing the rationals.
///
/// Returns coefficients from `lambda^0` up to `lambda^n` (the latter always
/// the supplied `one`).
pub fn char_poly_ring<T: RingScalar>(m: &Matrix<T>, one: T) -> Vec<T> {
    let n = m.n();
    let mut coeffs = vec![one.clone(); n + 1];
    // Faddeev-LeVerrier: A_1 = M, c_{n-k} = -tr(A_k)/k,
    // A_{k+1} = M * (A_k + c_{n-k} I).
    let mut a = m.clone();
    for k in 1..=n {
        let c = a.trace().ring_div_int(k as u64).ring_neg();
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shifted = a;
            for i in 0..n {
                shifted.set(i, i, shifted.get(i, i).ring_add(&c));
            }
            a = m.mul(&shifted);
        }
    }
    coeffs
}

/// Characteristic polynomial of an exact matrix, as a polynomial in the
/// eigenvalue variable.
pub fn char_poly_exact(m: &MatrixExact) -> TauPoly {
    use num_traits::One;
    TauPoly::from_coeffs(char_poly_ring(m, crate::exact::ExactScalar::one()))
}

/// Alias for the exact variant; the common entry point.
pub fn char_poly(m: &MatrixExact) -> TauPoly {
    char_poly_exact(m)
}
