//! Polynomials in a real step-size variable with exact complex coefficients.
//!
//! These represent truncation-free series objects: stability functions, the
//! entries of propagator products, and determinant expansions. The variable is
//! real, so conjugation acts on coefficients only.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::ExactScalar;
use crate::float::{HpComplex, HpFloat};
use crate::matrix::RingScalar;

/// Polynomial `sum_k c_k * tau^k`; the coefficient list never ends in zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TauPoly {
    coeffs: Vec<ExactScalar>,
}

impl TauPoly {
    /// The zero polynomial (empty coefficient list).
    pub fn zero() -> Self {
        TauPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TauPoly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        TauPoly::from_coeffs(vec![c])
    }

    /// `c * tau^k`.
    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        if c.is_zero() {
            return TauPoly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k + 1];
        coeffs[k] = c;
        TauPoly { coeffs }
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TauPoly { coeffs }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Coefficient of `tau^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Lowest-order nonzero term `(k, c_k)`, or `None` for zero.
    pub fn lowest_term(&self) -> Option<(usize, &ExactScalar)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Conjugate coefficients (the variable is real).
    pub fn conj(&self) -> Self {
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scalar_mul(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return TauPoly::zero();
        }
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Product truncated to degree `cap`: exact in every coefficient up to
    /// `tau^cap`, with higher-order terms discarded.
    pub fn mul_trunc(&self, rhs: &TauPoly, cap: usize) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(cap + 1);
        let mut coeffs = vec![ExactScalar::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > cap || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > cap {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TauPoly::from_coeffs(coeffs)
    }

    /// Drop all terms above degree `cap`.
    pub fn truncate(&self, cap: usize) -> TauPoly {
        if self.coeffs.len() <= cap + 1 {
            return self.clone();
        }
        TauPoly::from_coeffs(self.coeffs[..=cap].to_vec())
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval_exact(&self, tau: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * tau) + c;
        }
        acc
    }

    /// High-precision evaluation at a real step by Horner's rule, with
    /// coefficients rounded once at `prec` bits.
    pub fn eval_hp(&self, tau: &HpFloat, prec: u32) -> HpComplex {
        let mut acc = HpComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(tau) + &HpComplex::from_exact(c, prec);
        }
        acc
    }
}

impl Add for &TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: &TauPoly) -> TauPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        TauPoly::from_coeffs(coeffs)
    }
}

impl Sub for &TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: &TauPoly) -> TauPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        TauPoly::from_coeffs(coeffs)
    }
}

impl Mul for &TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: &TauPoly) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        let mut coeffs =
            vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TauPoly::from_coeffs(coeffs)
    }
}

impl Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl RingScalar for TauPoly {
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
        let d = ExactScalar::int(k as i64);
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| c / &d).collect(),
        }
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*tau")?,
                _ => write!(f, "({c})*tau^{k}")?,
            }
        }
        Ok(())
    }
}
