//! Hermitian/skew splitting, semi-dissipativity, the hypocoercivity index,
//! rank-based index bounds, and exact asymptotic-stability checks.
//!
//! All decisions here are exact: definiteness is read off characteristic-
//! polynomial coefficient signs, stability comes from the Routh–Hurwitz
//! table, and the `T_m` chain is built in rational arithmetic. Nothing in
//! this module carries a tolerance.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::exact::{rational_to_string, ExactScalar};
use crate::linalg::{definiteness, matrix_routh, rank_exact, rank_rect, Definiteness, RouthOutcome};
use crate::matrix::{Matrix, MatrixExact};

/// Hermitian and skew-Hermitian parts `(L_H, L_S)` with `L_H + L_S = L`.
pub fn split(l: &MatrixExact) -> (MatrixExact, MatrixExact) {
    let adj = l.adjoint();
    let two = ExactScalar::int(2);
    let herm = l.add(&adj).map(|z| z / &two);
    let skew = l.sub(&adj).map(|z| z / &two);
    (herm, skew)
}

/// Whether the Hermitian part of `l` is negative semi-definite.
pub fn is_semi_dissipative(l: &MatrixExact) -> bool {
    let (herm, _) = split(l);
    definiteness(&herm)
        .expect("Hermitian part is Hermitian by construction")
        .is_negative_semi_definite()
}

/// The tridiagonal mixing matrix with a single dissipative entry: +1 on the
/// subdiagonal, -1 on the superdiagonal, and -1 in the bottom-right corner.
///
/// Its Hermitian part has rank one, and its hypocoercivity index attains the
/// maximal value `n - 1`.
pub fn staircase(n: usize) -> MatrixExact {
    assert!(n >= 1, "dimension must be at least 1");
    Matrix::from_fn(n, |i, j| {
        if i == j + 1 {
            ExactScalar::int(1)
        } else if j == i + 1 {
            ExactScalar::int(-1)
        } else if i == j && i == n - 1 {
            ExactScalar::int(-1)
        } else {
            ExactScalar::zero()
        }
    })
}

/// The 2x2 rotation generator `[[0,-1],[1,0]]`: skew-Hermitian, so its
/// propagator is an isometry and its hypocoercivity index does not exist.
pub fn rotation_generator() -> MatrixExact {
    Matrix::from_rows(vec![
        vec![ExactScalar::int(0), ExactScalar::int(-1)],
        vec![ExactScalar::int(1), ExactScalar::int(0)],
    ])
    .unwrap()
}

/// The partial sum `T_m = sum_{j=0}^m L_S^j L_H (L_S*)^j`.
///
/// Errors with [`CoreError::NotSemiDissipative`] when the Hermitian part is
/// not negative semi-definite, matching the index definition's hypothesis.
pub fn t_matrix(l: &MatrixExact, m: usize) -> Result<MatrixExact> {
    let (herm, skew) = split(l);
    require_semi_dissipative(&herm)?;
    let mut total = herm.clone();
    let mut power = skew.clone();
    for _ in 0..m {
        total = total.add(&power.mul(&herm).mul(&power.adjoint()));
        power = power.mul(&skew);
    }
    Ok(total)
}

fn require_semi_dissipative(herm: &MatrixExact) -> Result<Definiteness> {
    let class = definiteness(herm).expect("Hermitian part is Hermitian by construction");
    if class.is_negative_semi_definite() {
        Ok(class)
    } else {
        Err(CoreError::NotSemiDissipative {
            found: class.label(),
        })
    }
}

/// The hypocoercivity index: the smallest `m` such that `T_m` is negative
/// definite, or `None` if no `m <= n-1` works (searching further is
/// pointless, since the index is bounded by `n - rank L_H <= n-1` whenever
/// it exists).
pub fn hc_index(l: &MatrixExact) -> Result<Option<usize>> {
    Ok(hc_search(l)?.0)
}

/// Index search that also records the definiteness of every `T_m` visited.
fn hc_search(l: &MatrixExact) -> Result<(Option<usize>, Vec<TmRecord>)> {
    let n = l.n();
    let (herm, skew) = split(l);
    require_semi_dissipative(&herm)?;
    let mut chain = Vec::new();
    let mut total = herm.clone();
    let mut power = skew.clone();
    for m in 0..n {
        let class = definiteness(&total).expect("T_m is Hermitian by construction");
        chain.push(TmRecord {
            m,
            definiteness: class,
        });
        if class == Definiteness::NegativeDefinite {
            return Ok((Some(m), chain));
        }
        total = total.add(&power.mul(&herm).mul(&power.adjoint()));
        power = power.mul(&skew);
    }
    Ok((None, chain))
}

/// Rank-based bounds `(n - r)/r <= m_HC <= n - r` where `r = rank L_H`.
pub fn hc_bounds(l: &MatrixExact) -> Result<(BigRational, usize)> {
    let (herm, _) = split(l);
    require_semi_dissipative(&herm)?;
    let n = l.n();
    let r = rank_exact(&herm);
    if r == 0 {
        return Err(CoreError::ZeroDissipativePart);
    }
    let lower = BigRational::new(((n - r) as i64).into(), (r as i64).into());
    Ok((lower, n - r))
}

/// Whether every eigenvalue of `l` has strictly negative real part, decided
/// by the exact Routh–Hurwitz criterion. Marginal spectra (imaginary-axis
/// eigenvalues, surfacing as a degenerate table) yield `false`; use
/// [`stability`] to distinguish them from genuinely unstable ones.
pub fn is_asymptotically_stable(l: &MatrixExact) -> bool {
    matrix_routh(l).hurwitz
}

/// The full Routh–Hurwitz outcome, including the degeneracy flag.
pub fn stability(l: &MatrixExact) -> RouthOutcome {
    matrix_routh(l)
}

/// Controllability-rank cross-check for the index's existence.
///
/// Only available when `-L_H` is diagonal with entries that are perfect
/// squares of rationals, so that `B = sqrt(-L_H)` is exact. Returns whether
/// the stacked controllability matrix `[B, L_S B, ..., L_S^{n-1} B]` has
/// full rank — which holds if and only if the hypocoercivity index exists —
/// or `None` when the exact square root is unavailable.
pub fn kalman_cross_check(l: &MatrixExact) -> Option<bool> {
    let n = l.n();
    let (herm, skew) = split(l);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !herm.get(i, j).is_zero() {
                return None;
            }
        }
        let d = herm.get(i, i);
        if !d.is_real() {
            return None;
        }
        b.push(rational_sqrt(&-d.re().clone())?);
    }
    // Columns of [B, L_S B, ..., L_S^{n-1} B], laid out as rows of a
    // rectangular matrix; the rank is unaffected.
    let b_mat = Matrix::from_fn(n, |i, j| {
        if i == j {
            ExactScalar::from_rational(b[i].clone())
        } else {
            ExactScalar::zero()
        }
    });
    let mut rows: Vec<Vec<ExactScalar>> = Vec::with_capacity(n * n);
    let mut block = b_mat;
    for _ in 0..n {
        for j in 0..n {
            rows.push((0..n).map(|i| block.get(i, j).clone()).collect());
        }
        block = skew.mul(&block);
    }
    Some(rank_rect(&rows) == n)
}

/// Exact square root of a nonnegative rational, if one exists.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    if q < &BigRational::zero() {
        return None;
    }
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// One step of the `T_m` chain, as recorded in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TmRecord {
    pub m: usize,
    pub definiteness: Definiteness,
}

/// Everything the index analysis produces for one matrix, in serializable
/// form. Rationals are rendered as `"num/den"` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HcReport {
    pub n: usize,
    pub semi_dissipative: bool,
    pub hc_index: Option<usize>,
    pub rank_lh: usize,
    /// `(n - rank L_H)/rank L_H`; absent when the Hermitian part vanishes.
    pub lower_bound: Option<String>,
    /// `n - rank L_H`; absent when the Hermitian part vanishes.
    pub upper_bound: Option<usize>,
    pub asymptotically_stable: bool,
    /// The stability test degenerated: eigenvalues on (or symmetric about)
    /// the imaginary axis; `asymptotically_stable` is then `false`.
    pub stability_marginal: bool,
    pub tm_chain: Vec<TmRecord>,
    pub notes: Vec<String>,
}

/// Full report for one matrix. Total: non-semi-dissipative inputs produce a
/// report with `semi_dissipative: false` and an empty chain rather than an
/// error, so callers can decide how strict to be.
pub fn hc_report(l: &MatrixExact) -> HcReport {
    let n = l.n();
    let (herm, _) = split(l);
    let semi = definiteness(&herm)
        .expect("Hermitian part is Hermitian by construction")
        .is_negative_semi_definite();
    let rank_lh = rank_exact(&herm);
    let stab = matrix_routh(l);
    let mut notes = Vec::new();
    let (hc, chain) = if semi {
        hc_search(l).expect("semi-dissipativity was just established")
    } else {
        notes.push("matrix is not semi-dissipative; the index is undefined".to_string());
        (None, Vec::new())
    };
    let (lower, upper) = if semi && rank_lh > 0 {
        (
            Some(rational_to_string(&BigRational::new(
                ((n - rank_lh) as i64).into(),
                (rank_lh as i64).into(),
            ))),
            Some(n - rank_lh),
        )
    } else {
        if semi {
            notes.push(
                "Hermitian part vanishes: bounds undefined, matrix cannot be hypocoercive"
                    .to_string(),
            );
        }
        (None, None)
    };
    if semi && hc.is_none() {
        notes.push("no index m <= n-1 makes T_m negative definite".to_string());
    }
    if stab.degenerate {
        notes.push("stability test degenerate: spectrum touches the imaginary axis".to_string());
    }
    HcReport {
        n,
        semi_dissipative: semi,
        hc_index: hc,
        rank_lh,
        lower_bound: lower,
        upper_bound: upper,
        asymptotically_stable: stab.hurwitz,
        stability_marginal: stab.degenerate,
        tm_chain: chain,
        notes,
    }
}
