//! Dense square matrices over the crate's scalar kernels.
//!
//! One generic container serves three instantiations: [`MatrixExact`] over
//! complex rationals (all structural analysis), [`MatrixHp`] over
//! high-precision complex floats (norm sweeps, matrix exponentials), and
//! [`TauPolyMatrix`] over step-size polynomials (series expansions of scheme
//! propagators). The scalar interface is the small [`RingScalar`] trait rather
//! than the full numeric-trait tower, because polynomial and high-precision
//! entries have no meaningful `zero()`/`one()` constants detached from a
//! precision or degree context.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoreError, Result};
use crate::exact::ExactScalar;
use crate::float::{HpComplex, HpFloat};
use crate::poly::TauPoly;

/// Commutative *-ring operations needed by the matrix kernels.
pub trait RingScalar: Clone + PartialEq {
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Conjugation for the *-structure; identity for rings without one.
    fn ring_conj(&self) -> Self;
    fn is_ring_zero(&self) -> bool;
    /// Division by a small positive integer: exact over the rational scalar
    /// kinds, correctly rounded over high-precision floats.
    fn ring_div_int(&self, k: u64) -> Self;
}

impl RingScalar for ExactScalar {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_conj(&self) -> Self {
        self.conj()
    }
    fn is_ring_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn ring_div_int(&self, k: u64) -> Self {
        self / &ExactScalar::int(k as i64)
    }
}

impl RingScalar for HpComplex {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_conj(&self) -> Self {
        self.conj()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_div_int(&self, k: u64) -> Self {
        let prec = self.re.precision_bits().max(self.im.precision_bits());
        let d = HpFloat::from_u64(k, prec);
        HpComplex::new(&self.re / &d, &self.im / &d)
    }
}

/// Square matrix in row-major storage. Dimension is always at least one.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

/// Matrix over exact complex rationals.
pub type MatrixExact = Matrix<ExactScalar>;
/// Matrix over high-precision complex floats.
pub type MatrixHp = Matrix<HpComplex>;
/// Matrix over polynomials in the step size.
pub type TauPolyMatrix = Matrix<TauPoly>;

impl<T> Matrix<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value;
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n >= 1, "matrix dimension must be at least one");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(CoreError::Parse("matrix has no rows".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(CoreError::Parse(format!(
                    "matrix is not square: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|t| f(t)).collect(),
        }
    }
}

impl<T: RingScalar> Matrix<T> {
    /// Identity built from caller-supplied constants (scalar kinds carry
    /// precision or degree context that a bare `one()` could not).
    pub fn identity_with(n: usize, zero: T, one: T) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.ring_add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.ring_sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|t| t.ring_neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc = self.get(i, 0).ring_mul(rhs.get(0, j));
            for k in 1..n {
                if self.get(i, k).is_ring_zero() || rhs.get(k, j).is_ring_zero() {
                    continue;
                }
                acc = acc.ring_add(&self.get(i, k).ring_mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn scalar_mul(&self, s: &T) -> Self {
        self.map(|t| t.ring_mul(s))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).ring_conj())
    }

    /// First index pair at which `A != A*`, if any (exact comparison).
    pub fn hermitian_defect(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i..self.n {
                if *self.get(i, j) != self.get(j, i).ring_conj() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect().is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|t| t.is_ring_zero())
    }

    pub fn trace(&self) -> T {
        let mut acc = self.get(0, 0).clone();
        for i in 1..self.n {
            acc = acc.ring_add(self.get(i, i));
        }
        acc
    }
}

impl MatrixExact {
    /// Identity over exact scalars.
    pub fn identity(n: usize) -> Self {
        use num_traits::{One, Zero};
        Matrix::identity_with(n, ExactScalar::zero(), ExactScalar::one())
    }

    /// Zero matrix over exact scalars.
    pub fn zeros(n: usize) -> Self {
        use num_traits::Zero;
        Matrix::from_fn(n, |_, _| ExactScalar::zero())
    }

    /// Entrywise nearest high-precision matrix.
    pub fn to_hp(&self, prec: u32) -> MatrixHp {
        self.map(|z| HpComplex::from_exact(z, prec))
    }
}

impl MatrixHp {
    pub fn identity_hp(n: usize, prec: u32) -> Self {
        Matrix::identity_with(n, HpComplex::zero(prec), HpComplex::one(prec))
    }

    /// Maximum column sum of entry magnitudes (the induced 1-norm); an upper
    /// bound on the spectral norm up to a factor of sqrt(n).
    pub fn one_norm(&self) -> HpFloat {
        let prec = self
            .data
            .iter()
            .map(|z| z.re.precision_bits().max(z.im.precision_bits()))
            .max()
            .unwrap();
        let mut best = HpFloat::zero(prec);
        for j in 0..self.n {
            let mut col = HpFloat::zero(prec);
            for i in 0..self.n {
                col = &col + &self.get(i, j).abs();
            }
            if col > best {
                best = col;
            }
        }
        best
    }

    /// Raise the carried precision of every entry (values unchanged).
    pub fn with_min_prec(&self, prec: u32) -> Self {
        self.map(|z| z.clone().with_min_prec(prec))
    }

    /// Re-round every entry to a lower precision.
    pub fn round_to(&self, prec: u32) -> Self {
        self.map(|z| z.round_to(prec))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.n + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: Serialize> Serialize for Matrix<T> {
    /// Serializes as a 2-D array of entries (rationals as strings, complex
    /// entries as `{re, im}` pairs).
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}
