//! Exact definiteness classification of Hermitian matrices.
//!
//! A Hermitian matrix has a real spectrum, and its characteristic polynomial
//! `prod_i (lambda - lambda_i)` has all eigenvalues nonpositive exactly when
//! every coefficient is nonnegative (and negative exactly when every
//! coefficient is strictly positive, the leading one being 1): the
//! coefficients are, up to sign, elementary symmetric functions of the
//! spectrum. Classification therefore reduces to exact sign inspection of
//! rational coefficients — no root finding and no tolerance.

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::linalg::charpoly::char_poly;
use crate::matrix::MatrixExact;

/// Sign class of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    NegativeDefinite,
    NegativeSemiDefinite,
    Indefinite,
    PositiveSemiDefinite,
    PositiveDefinite,
    Zero,
}

impl Definiteness {
    /// Human-readable label used in reports and error messages.
    pub fn label(&self) -> &'static str {
        match self {
            Definiteness::NegativeDefinite => "negative definite",
            Definiteness::NegativeSemiDefinite => "negative semi-definite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::PositiveSemiDefinite => "positive semi-definite",
            Definiteness::PositiveDefinite => "positive definite",
            Definiteness::Zero => "zero",
        }
    }

    /// True for the classes with no positive eigenvalue.
    pub fn is_negative_semi_definite(&self) -> bool {
        matches!(
            self,
            Definiteness::NegativeDefinite
                | Definiteness::NegativeSemiDefinite
                | Definiteness::Zero
        )
    }
}

/// Classify a Hermitian matrix by the signs of its characteristic-polynomial
/// coefficients. Errors if the matrix is not exactly Hermitian.
pub fn definiteness(h: &MatrixExact) -> Result<Definiteness> {
    if let Some((i, j)) = h.hermitian_defect() {
        return Err(CoreError::NotHermitian { i, j });
    }
    if h.is_zero() {
        return Ok(Definiteness::Zero);
    }
    let poly = char_poly(h);
    let n = h.n();
    // Hermitian input makes every coefficient exactly real.
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        coeffs.push(
            poly.coeff(k)
                .expect_real("characteristic-polynomial coefficient of a Hermitian matrix")?,
        );
    }

    let all_nonneg = |cs: &[BigRational]| cs.iter().all(|c| !c.is_negative());
    let all_pos = |cs: &[BigRational]| cs.iter().all(|c| c.is_positive());

    // Spectrum of -H: flip the sign of every odd-degree coefficient.
    let flipped: Vec<BigRational> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| if (n - k) % 2 == 1 { -c } else { c.clone() })
        .collect();

    Ok(if all_pos(&coeffs) {
        Definiteness::NegativeDefinite
    } else if all_nonneg(&coeffs) {
        Definiteness::NegativeSemiDefinite
    } else if all_pos(&flipped) {
        Definiteness::PositiveDefinite
    } else if all_nonneg(&flipped) {
        Definiteness::PositiveSemiDefinite
    } else {
        Definiteness::Indefinite
    })
}
