//! Explicit Runge–Kutta tableaux and their stability functions.
//!
//! The stability function of an explicit `s`-stage tableau `(A, b)` is the
//! degree-`<= s` polynomial `R(z) = 1 + sum_{k>=1} (b . A^{k-1} 1) z^k`,
//! obtained here by iterating the truncated Neumann series (A is strictly
//! lower triangular, hence nilpotent, so the series is finite and exact).
//! All coefficients stay rational; nothing is floated until a caller
//! evaluates at a concrete step size.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::exact::ExactScalar;
use crate::float::{HpComplex, HpFloat};
use crate::matrix::{Matrix, MatrixExact, MatrixHp, TauPolyMatrix};
use crate::poly::TauPoly;

/// An explicit Butcher tableau: strictly lower-triangular `a`, weights `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ButcherTableau {
    s: usize,
    a: Vec<Vec<ExactScalar>>,
    b: Vec<ExactScalar>,
}

impl ButcherTableau {
    /// Validates shape (square `a`, matching `b`) and explicitness: any
    /// nonzero entry on or above the diagonal is rejected with
    /// [`CoreError::NotExplicit`].
    pub fn new(a: Vec<Vec<ExactScalar>>, b: Vec<ExactScalar>) -> Result<Self> {
        let s = b.len();
        if s == 0 {
            return Err(CoreError::Parse("tableau has no stages".into()));
        }
        if a.len() != s || a.iter().any(|row| row.len() != s) {
            return Err(CoreError::Parse(format!(
                "tableau coefficient matrix must be {s}x{s} to match {s} weights"
            )));
        }
        for (i, row) in a.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if j >= i && !entry.is_zero() {
                    return Err(CoreError::NotExplicit { row: i, col: j });
                }
            }
        }
        Ok(ButcherTableau { s, a, b })
    }

    pub fn stages(&self) -> usize {
        self.s
    }

    pub fn a(&self) -> &[Vec<ExactScalar>] {
        &self.a
    }

    pub fn b(&self) -> &[ExactScalar] {
        &self.b
    }
}

#[derive(Serialize)]
struct TableauSer<'a> {
    s: usize,
    a: &'a [Vec<ExactScalar>],
    b: &'a [ExactScalar],
}

#[derive(Deserialize)]
struct TableauDe {
    s: usize,
    a: Vec<Vec<ExactScalar>>,
    b: Vec<ExactScalar>,
}

impl Serialize for ButcherTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TableauSer {
            s: self.s,
            a: &self.a,
            b: &self.b,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ButcherTableau {
    /// Accepts `{"s": n, "a": [[...]], "b": [...]}` with entries written as
    /// rational strings (`"1/6"`) or `{re, im}` pairs. Bare floating-point
    /// numbers are rejected so no entry is silently approximated.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TableauDe::deserialize(deserializer)?;
        if repr.s != repr.b.len() {
            return Err(D::Error::custom(format!(
                "declared {} stages but found {} weights",
                repr.s,
                repr.b.len()
            )));
        }
        ButcherTableau::new(repr.a, repr.b).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// A stability polynomial together with its detected classical order and the
/// stage count of the generating tableau (for a truncated exponential, the
/// polynomial degree).
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityFn {
    poly: TauPoly,
    order: usize,
    stages: usize,
}

impl StabilityFn {
    fn from_poly(poly: TauPoly, stages: usize) -> Self {
        let order = detect_order(&poly);
        StabilityFn { poly, order, stages }
    }

    pub fn poly(&self) -> &TauPoly {
        &self.poly
    }

    /// Largest `p` such that the coefficients match `exp` through degree `p`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn stages(&self) -> usize {
        self.stages
    }
}

impl Serialize for StabilityFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            order: usize,
            stages: usize,
            /// Low-to-high coefficients of the stability polynomial.
            coefficients: &'a [ExactScalar],
        }
        Repr {
            order: self.order,
            stages: self.stages,
            coefficients: self.poly.coeffs(),
        }
        .serialize(serializer)
    }
}

/// Largest `p >= 0` with `c_j = 1/j!` for all `j <= p`. Stability functions
/// of explicit tableaux always satisfy `c_0 = 1`, so the loop starts at 1;
/// it stops no later than one past the degree, where the coefficient is zero.
fn detect_order(poly: &TauPoly) -> usize {
    debug_assert!(poly.coeff(0).is_one());
    let mut factorial = ExactScalar::one();
    let mut order = 0;
    let mut j: usize = 1;
    loop {
        factorial = &factorial * &ExactScalar::int(j as i64);
        if poly.coeff(j) != &ExactScalar::one() / &factorial {
            return order;
        }
        order = j;
        j += 1;
    }
}

/// Stability polynomial of an explicit tableau, exactly.
pub fn stability_function(tableau: &ButcherTableau) -> StabilityFn {
    let s = tableau.s;
    let mut w: Vec<ExactScalar> = vec![ExactScalar::one(); s];
    let mut coeffs = Vec::with_capacity(s + 1);
    coeffs.push(ExactScalar::one());
    for _ in 0..s {
        let mut c = ExactScalar::zero();
        for (bi, wi) in tableau.b.iter().zip(&w) {
            c = &c + &(bi * wi);
        }
        coeffs.push(c);
        let next: Vec<ExactScalar> = (0..s)
            .map(|i| {
                let mut acc = ExactScalar::zero();
                for (j, wj) in w.iter().enumerate() {
                    if !tableau.a[i][j].is_zero() {
                        acc = &acc + &(&tableau.a[i][j] * wj);
                    }
                }
                acc
            })
            .collect();
        w = next;
    }
    StabilityFn::from_poly(TauPoly::from_coeffs(coeffs), s)
}

/// The degree-`p` truncated exponential `sum_{j<=p} z^j/j!` as a stability
/// function — the unique stability polynomial of any `p`-stage scheme of
/// order `p` (which exist for `p <= 4`), and the natural reference object
/// for every order.
pub fn taylor_scheme(p: usize) -> StabilityFn {
    assert!(p >= 1, "order must be at least 1");
    let mut coeffs = Vec::with_capacity(p + 1);
    let mut c = ExactScalar::one();
    coeffs.push(c.clone());
    for j in 1..=p {
        c = &c / &ExactScalar::int(j as i64);
        coeffs.push(c.clone());
    }
    StabilityFn::from_poly(TauPoly::from_coeffs(coeffs), p)
}

/// `R(tau L)` evaluated exactly by Horner's rule.
pub fn evaluate_at_matrix_exact(
    r: &StabilityFn,
    l: &MatrixExact,
    tau: &ExactScalar,
) -> MatrixExact {
    let n = l.n();
    let x = l.scalar_mul(tau);
    let d = r.poly.degree().unwrap_or(0);
    let mut acc = MatrixExact::identity(n).scalar_mul(&r.poly.coeff(d));
    for j in (0..d).rev() {
        acc = acc.mul(&x);
        let c = r.poly.coeff(j);
        for i in 0..n {
            let updated = acc.get(i, i) + &c;
            acc.set(i, i, updated);
        }
    }
    acc
}

/// `R(tau L)` in high-precision arithmetic: the matrix and coefficients are
/// rounded once at `prec` bits, then combined by Horner's rule.
pub fn evaluate_at_matrix_hp(
    r: &StabilityFn,
    l: &MatrixExact,
    tau: &HpFloat,
    prec: u32,
) -> MatrixHp {
    let n = l.n();
    let x = l.to_hp(prec).map(|z| z.scale(tau));
    let d = r.poly.degree().unwrap_or(0);
    let mut acc =
        MatrixHp::identity_hp(n, prec).scalar_mul(&HpComplex::from_exact(&r.poly.coeff(d), prec));
    for j in (0..d).rev() {
        acc = acc.mul(&x);
        let c = HpComplex::from_exact(&r.poly.coeff(j), prec);
        for i in 0..n {
            let updated = acc.get(i, i) + &c;
            acc.set(i, i, updated);
        }
    }
    acc
}

/// `R(tau L)` as a matrix of polynomials in the step size: entry `(i,j)` is
/// `sum_k c_k (L^k)_{ij} tau^k`. This is the exact series object that the
/// contraction-defect analysis expands.
pub fn propagator_series(r: &StabilityFn, l: &MatrixExact) -> TauPolyMatrix {
    let n = l.n();
    let d = r.poly.degree().unwrap_or(0);
    let mut entry_coeffs: Vec<Vec<ExactScalar>> = vec![Vec::with_capacity(d + 1); n * n];
    let mut power = MatrixExact::identity(n);
    for k in 0..=d {
        let c = r.poly.coeff(k);
        for i in 0..n {
            for j in 0..n {
                entry_coeffs[i * n + j].push(&c * power.get(i, j));
            }
        }
        if k < d {
            power = power.mul(l);
        }
    }
    Matrix::from_fn(n, |i, j| {
        TauPoly::from_coeffs(std::mem::take(&mut entry_coeffs[i * n + j]))
    })
}

/// Forward Euler: one stage, order one.
pub fn euler() -> ButcherTableau {
    ButcherTableau::new(vec![vec![ExactScalar::zero()]], vec![ExactScalar::one()]).unwrap()
}

/// Heun's two-stage, second-order scheme.
pub fn heun2() -> ButcherTableau {
    let z = ExactScalar::zero;
    ButcherTableau::new(
        vec![vec![z(), z()], vec![ExactScalar::one(), z()]],
        vec![ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 2)],
    )
    .unwrap()
}

/// Kutta's three-stage, third-order scheme.
pub fn kutta3() -> ButcherTableau {
    let z = ExactScalar::zero;
    ButcherTableau::new(
        vec![
            vec![z(), z(), z()],
            vec![ExactScalar::ratio(1, 2), z(), z()],
            vec![ExactScalar::int(-1), ExactScalar::int(2), z()],
        ],
        vec![
            ExactScalar::ratio(1, 6),
            ExactScalar::ratio(2, 3),
            ExactScalar::ratio(1, 6),
        ],
    )
    .unwrap()
}

/// The classical four-stage, fourth-order scheme.
pub fn rk4() -> ButcherTableau {
    let z = ExactScalar::zero;
    ButcherTableau::new(
        vec![
            vec![z(), z(), z(), z()],
            vec![ExactScalar::ratio(1, 2), z(), z(), z()],
            vec![z(), ExactScalar::ratio(1, 2), z(), z()],
            vec![z(), z(), ExactScalar::one(), z()],
        ],
        vec![
            ExactScalar::ratio(1, 6),
            ExactScalar::ratio(1, 3),
            ExactScalar::ratio(1, 3),
            ExactScalar::ratio(1, 6),
        ],
    )
    .unwrap()
}
