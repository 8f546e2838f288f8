//! Deterministic arbitrary-precision binary floating point.
//!
//! A value is `mant * 2^exp` with an odd (or zero) big-integer mantissa, so
//! every representable number has exactly one encoding and equality is value
//! equality. Each value carries the precision it was rounded to; an operation
//! rounds its result to nearest (ties to even) at the larger of its operands'
//! precisions. All operations are exact rational functions of their inputs
//! followed by a single correct rounding, which makes every computation in the
//! crate bit-for-bit reproducible across runs, platforms, and execution modes.
//!
//! The kernel implements only what the analysis layers need — add, subtract,
//! multiply, divide, square root, comparison, powers of two, and decimal
//! formatting — and omits transcendentals entirely; the few places that need a
//! logarithm extract it through [`HpFloat::log2_f64`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::ExactScalar;

/// Arbitrary-precision binary float with round-to-nearest-even semantics.
#[derive(Debug, Clone)]
pub struct HpFloat {
    /// Odd, or zero (with `exp == 0`): the canonical mantissa.
    mant: BigInt,
    /// Binary exponent: the value is `mant * 2^exp`.
    exp: i64,
    /// Precision this value was rounded to, in mantissa bits.
    prec: u32,
}

impl HpFloat {
    /// Round the exact value `mant * 2^exp` to `prec` bits (nearest, ties to
    /// even) and normalize to the canonical odd-mantissa form.
    ///
    /// Callers that cannot supply the exact value (division, square root)
    /// instead supply a mantissa with at least `prec + 2` significant bits
    /// whose lowest bit is set whenever any nonzero tail was truncated; the
    /// result is still correctly rounded because a sticky bit two or more
    /// places below the rounding position cannot flip the round bit and rules
    /// out exact ties.
    fn make(mant: BigInt, mut exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return HpFloat {
                mant,
                exp: 0,
                prec,
            };
        }
        let sign = mant.sign();
        let mut mag = mant.into_parts().1;
        let bits = mag.bits();
        if bits > u64::from(prec) {
            let drop = bits - u64::from(prec);
            let round_bit = mag.bit(drop - 1);
            let mut hi = &mag >> drop;
            if round_bit {
                let tail_nonzero = mag.trailing_zeros().unwrap() < drop - 1;
                if tail_nonzero || hi.is_odd() {
                    hi += 1u32;
                }
            }
            exp += drop as i64;
            mag = hi;
        }
        let tz = mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mag >>= tz;
            exp += tz as i64;
        }
        HpFloat {
            mant: BigInt::from_biguint(sign, mag),
            exp,
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        HpFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        HpFloat {
            mant: BigInt::one(),
            exp: 0,
            prec,
        }
    }

    /// Exact power of two `2^k`.
    pub fn pow2(k: i64, prec: u32) -> Self {
        HpFloat {
            mant: BigInt::one(),
            exp: k,
            prec,
        }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::make(n.clone(), 0, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }

    pub fn from_u64(n: u64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }

    /// Nearest representable value of an exact rational.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        if q.numer().is_zero() {
            return Self::zero(prec);
        }
        if q.denom().is_one() {
            return Self::from_bigint(q.numer(), prec);
        }
        let sign = q.numer().sign();
        let num = q.numer().magnitude().clone();
        let den = q.denom().magnitude();
        Self::div_magnitudes(sign, num, 0, den, 0, prec)
    }

    /// Exact rational value of this float (always possible).
    pub fn to_rational(&self) -> BigRational {
        let base = BigRational::from_integer(self.mant.clone());
        if self.exp >= 0 {
            base * BigRational::from_integer(BigInt::one() << self.exp as usize)
        } else {
            base / BigRational::from_integer(BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    /// Raise the carried precision without changing the value. Later
    /// operations involving the result then round at the higher precision;
    /// used by iterative kernels that keep internal guard bits.
    pub fn with_min_prec(mut self, prec: u32) -> Self {
        self.prec = self.prec.max(prec);
        self
    }

    /// Re-round the value to a (typically lower) precision.
    pub fn round_to(&self, prec: u32) -> Self {
        Self::make(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        HpFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Position of the most significant bit: the value's magnitude lies in
    /// `[2^(top-1), 2^top)`. Meaningless for zero (returns `i64::MIN`).
    fn top(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.magnitude().bits() as i64
        }
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let prec = self.prec.max(rhs.prec);
        if rhs.is_zero() {
            let mut out = self.clone();
            out.prec = prec;
            return out;
        }
        let rhs_mant = if negate_rhs {
            -rhs.mant.clone()
        } else {
            rhs.mant.clone()
        };
        if self.is_zero() {
            let mut out = HpFloat {
                mant: rhs_mant,
                exp: rhs.exp,
                prec,
            };
            out.prec = prec;
            return out;
        }
        let (big_mant, big_exp, small_mant, small_exp) = if self.top() >= rhs.top() {
            (&self.mant, self.exp, &rhs_mant, rhs.exp)
        } else {
            (&rhs_mant, rhs.exp, &self.mant, self.exp)
        };
        let big_top = big_exp + big_mant.magnitude().bits() as i64;
        let small_top = small_exp + small_mant.magnitude().bits() as i64;
        let gap = big_top - small_top;
        let big_bits = big_mant.magnitude().bits() as i64;
        if gap > i64::from(prec) + 3 {
            // The small operand lies entirely below a quarter-ulp of the
            // result; fold it into a sticky bit at least two places under the
            // rounding position.
            let shift = 3.max(i64::from(prec) + 2 - big_bits) as usize;
            let mut mant = big_mant.clone() << shift;
            if small_mant.is_positive() {
                mant += 1;
            } else {
                mant -= 1;
            }
            Self::make(mant, big_exp - shift as i64, prec)
        } else {
            let d = (big_exp - small_exp).unsigned_abs() as usize;
            let (mant, exp) = if big_exp >= small_exp {
                ((big_mant.clone() << d) + small_mant, small_exp)
            } else {
                (big_mant + (small_mant.clone() << d), big_exp)
            };
            Self::make(mant, exp, prec)
        }
    }

    /// Quotient of `sa * na * 2^ea` by `da * 2^eb`, correctly rounded.
    fn div_magnitudes(
        sign: Sign,
        num: BigUint,
        num_exp: i64,
        den: &BigUint,
        den_exp: i64,
        prec: u32,
    ) -> Self {
        let shift = (i64::from(prec) + 4 + den.bits() as i64 - num.bits() as i64).max(0) as usize;
        let (mut q, r) = (num << shift).div_rem(den);
        if !r.is_zero() {
            q |= BigUint::one();
        }
        Self::make(
            BigInt::from_biguint(sign, q),
            num_exp - shift as i64 - den_exp,
            prec,
        )
    }

    /// Nonnegative square root, correctly rounded. Panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(
            !self.is_negative(),
            "square root of a negative high-precision float"
        );
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        let mag = self.mant.magnitude();
        let mut shift = (2 * i64::from(prec) + 8 - mag.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let t = mag << shift as usize;
        let r = t.sqrt();
        let mut r = r;
        if &r * &r != t {
            r |= BigUint::one();
        }
        Self::make(BigInt::from_biguint(Sign::Plus, r), (self.exp - shift) / 2, prec)
    }

    /// Signum as an integer: -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Best double approximation (saturating to infinities far outside range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mag = self.mant.magnitude();
        let bits = mag.bits();
        let (hi, scale) = if bits > 64 {
            ((mag >> (bits - 64) as usize).to_u64().unwrap(), self.exp + (bits - 64) as i64)
        } else {
            (mag.to_u64().unwrap(), self.exp)
        };
        let sig = if self.mant.is_negative() {
            -(hi as f64)
        } else {
            hi as f64
        };
        if scale > 2000 {
            return sig.signum() * f64::INFINITY;
        }
        if scale < -2000 {
            return 0.0;
        }
        sig * (scale as f64).exp2()
    }

    /// `log2` of the magnitude as a double, accurate to double rounding.
    /// The result is finite for any nonzero value, even when the value itself
    /// underflows or overflows double range. Returns `-inf` for zero.
    pub fn log2_f64(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let mag = self.mant.magnitude();
        let bits = mag.bits();
        let (hi, scale) = if bits > 64 {
            ((mag >> (bits - 64) as usize).to_u64().unwrap(), self.exp + (bits - 64) as i64)
        } else {
            (mag.to_u64().unwrap(), self.exp)
        };
        (hi as f64).log2() + scale as f64
    }

    /// Natural logarithm of the magnitude as a double; `-inf` for zero.
    pub fn ln_f64(&self) -> f64 {
        self.log2_f64() * std::f64::consts::LN_2
    }

    /// Scientific-notation decimal string with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.mant.is_negative();
        // Decimal exponent estimate; corrected below if the scaling step
        // lands outside [10^(digits-1), 10^digits).
        let mut d10 = (self.log2_f64() * std::f64::consts::LOG10_2).floor() as i64;
        let mag = self.mant.magnitude().clone();
        loop {
            let k = digits as i64 - 1 - d10;
            let n = Self::scale_decimal(&mag, self.exp, k);
            let lo = BigUint::from(10u32).pow(digits as u32 - 1);
            let hi = &lo * BigUint::from(10u32);
            if n < lo {
                d10 -= 1;
                continue;
            }
            if n >= hi {
                d10 += 1;
                continue;
            }
            let s = n.to_string();
            let (first, rest) = s.split_at(1);
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            out.push_str(first);
            if !rest.is_empty() {
                out.push('.');
                out.push_str(rest);
            }
            out.push('e');
            out.push_str(&d10.to_string());
            return out;
        }
    }

    /// Decimal string carrying the full precision of the value.
    pub fn to_decimal_full(&self) -> String {
        let digits = (f64::from(self.prec) * std::f64::consts::LOG10_2).ceil() as usize + 1;
        self.to_decimal(digits)
    }

    /// `round(mag * 2^exp * 10^k)` as a nonnegative integer (half away from
    /// zero; display only).
    fn scale_decimal(mag: &BigUint, exp: i64, k: i64) -> BigUint {
        let mut num = mag.clone();
        let mut den = BigUint::one();
        if exp >= 0 {
            num <<= exp as usize;
        } else {
            den <<= (-exp) as usize;
        }
        if k >= 0 {
            num *= BigUint::from(10u32).pow(k as u32);
        } else {
            den *= BigUint::from(10u32).pow((-k) as u32);
        }
        let (q, r) = num.div_rem(&den);
        if &r * 2u32 >= den {
            q + BigUint::one()
        } else {
            q
        }
    }
}

impl PartialEq for HpFloat {
    /// Value equality: canonical form makes this a representation comparison.
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant && (self.is_zero() || self.exp == other.exp)
    }
}

impl Eq for HpFloat {}

impl PartialOrd for HpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HpFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let mag_order = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                // Same leading-bit position: align exponents and compare.
                let e = self.exp.min(other.exp);
                let a = self.mant.magnitude() << (self.exp - e) as usize;
                let b = other.mant.magnitude() << (other.exp - e) as usize;
                a.cmp(&b)
            }
            o => o,
        };
        if sa > 0 {
            mag_order
        } else {
            mag_order.reverse()
        }
    }
}

impl Add for &HpFloat {
    type Output = HpFloat;
    fn add(self, rhs: &HpFloat) -> HpFloat {
        self.add_impl(rhs, false)
    }
}

impl Sub for &HpFloat {
    type Output = HpFloat;
    fn sub(self, rhs: &HpFloat) -> HpFloat {
        self.add_impl(rhs, true)
    }
}

impl Mul for &HpFloat {
    type Output = HpFloat;
    fn mul(self, rhs: &HpFloat) -> HpFloat {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return HpFloat::zero(prec);
        }
        HpFloat::make(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }
}

impl Div for &HpFloat {
    type Output = HpFloat;
    fn div(self, rhs: &HpFloat) -> HpFloat {
        assert!(!rhs.is_zero(), "division of high-precision float by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return HpFloat::zero(prec);
        }
        let sign = if self.mant.sign() == rhs.mant.sign() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        HpFloat::div_magnitudes(
            sign,
            self.mant.magnitude().clone(),
            self.exp,
            rhs.mant.magnitude(),
            rhs.exp,
            prec,
        )
    }
}

impl Neg for &HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        HpFloat {
            mant: -self.mant.clone(),
            exp: self.exp,
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for HpFloat {
            type Output = HpFloat;
            fn $method(self, rhs: HpFloat) -> HpFloat {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        -&self
    }
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(40))
    }
}

impl Serialize for HpFloat {
    /// Full-precision decimal string; the enclosing report carries the
    /// precision in bits.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_decimal_full())
    }
}

impl<'de> Deserialize<'de> for HpFloat {
    /// Parses a decimal or rational string at the default precision. Decimal
    /// round trips are value-faithful only to the printed digits.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let q = crate::exact::parse_rational(&s).map_err(serde::de::Error::custom)?;
        Ok(HpFloat::from_rational(
            &q,
            crate::context::DEFAULT_PRECISION_BITS,
        ))
    }
}

/// Complex number over [`HpFloat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HpComplex {
    pub re: HpFloat,
    pub im: HpFloat,
}

impl HpComplex {
    pub fn new(re: HpFloat, im: HpFloat) -> Self {
        HpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        HpComplex {
            re: HpFloat::zero(prec),
            im: HpFloat::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        HpComplex {
            re: HpFloat::one(prec),
            im: HpFloat::zero(prec),
        }
    }

    pub fn from_re(re: HpFloat) -> Self {
        let prec = re.precision_bits();
        HpComplex {
            re,
            im: HpFloat::zero(prec),
        }
    }

    /// Nearest representable value of an exact complex scalar.
    pub fn from_exact(z: &ExactScalar, prec: u32) -> Self {
        HpComplex {
            re: HpFloat::from_rational(z.re(), prec),
            im: HpFloat::from_rational(z.im(), prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, s: &HpFloat) -> Self {
        HpComplex {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    /// `|z|^2`, exact up to two roundings.
    pub fn abs_sqr(&self) -> HpFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> HpFloat {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.abs_sqr().sqrt()
    }

    pub fn with_min_prec(self, prec: u32) -> Self {
        HpComplex {
            re: self.re.with_min_prec(prec),
            im: self.im.with_min_prec(prec),
        }
    }

    pub fn round_to(&self, prec: u32) -> Self {
        HpComplex {
            re: self.re.round_to(prec),
            im: self.im.round_to(prec),
        }
    }
}

impl Add for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        HpComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        HpComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        // Zero imaginary parts are the common case for the real-matrix
        // workloads; HpFloat's zero short-circuits make these branches cheap.
        if self.im.is_zero() && rhs.im.is_zero() {
            return HpComplex::from_re(&self.re * &rhs.re);
        }
        HpComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Half of the ulp of `x` as an exact rational: representable neighbours
    /// of `x` at its precision differ by `2^(top - prec)`.
    fn half_ulp(x: &HpFloat) -> BigRational {
        let k = x.top() - i64::from(x.precision_bits()) - 1;
        let two = BigRational::from_integer(BigInt::from(2));
        let mut out = BigRational::one();
        let mut n = k.unsigned_abs();
        while n > 0 {
            // Cheap repeated scaling; exponents in tests are small.
            if k > 0 {
                out *= &two;
            } else {
                out /= &two;
            }
            n -= 1;
        }
        out
    }

    fn assert_correctly_rounded(result: &HpFloat, exact: &BigRational) {
        if exact.is_zero() {
            assert!(result.is_zero());
            return;
        }
        let err = (result.to_rational() - exact).abs();
        assert!(
            err <= half_ulp(result),
            "rounding error {} exceeds half ulp for result {}",
            err,
            result
        );
        // Canonical invariants.
        assert!(result.mant.is_zero() || result.mant.is_odd());
        assert!(result.mant.magnitude().bits() <= u64::from(result.precision_bits()));
    }

    #[test]
    fn integer_rounding_ties_to_even() {
        // 341 = 0b101010101: dropping one bit is an exact tie; 170 is even.
        assert_eq!(
            HpFloat::from_i64(341, 8).to_rational(),
            BigRational::from_integer(BigInt::from(340))
        );
        // 343 = 0b101010111: tie again, but 171 is odd, so round up to 344.
        assert_eq!(
            HpFloat::from_i64(343, 8).to_rational(),
            BigRational::from_integer(BigInt::from(344))
        );
        // 342 fits in 8 bits after stripping the factor of two: exact.
        assert_eq!(
            HpFloat::from_i64(342, 8).to_rational(),
            BigRational::from_integer(BigInt::from(342))
        );
    }

    #[test]
    fn huge_exponent_gap_addition_is_sticky_correct() {
        let one = HpFloat::one(64);
        let tiny = HpFloat::pow2(-1000, 64);
        assert_eq!(&one + &tiny, one);
        assert_eq!(&one - &tiny, one);
        let sum = &-&one + &tiny;
        assert_eq!(sum, -&one);
    }

    #[test]
    fn binade_boundary_subtraction() {
        // 1 - 2^-80 at 64 bits: the nearest representable below 1 is
        // 1 - 2^-64, and 1 - 2^-80 is closer to 1 itself.
        let x = &HpFloat::one(64) - &HpFloat::pow2(-80, 64);
        assert_eq!(x, HpFloat::one(64));
        // 1 - 2^-65 is exactly between 1 - 2^-64 and 1; ties-to-even picks 1.
        let y = &HpFloat::one(64) - &HpFloat::pow2(-65, 64);
        assert_eq!(y, HpFloat::one(64));
        // 1 - 3*2^-66 rounds to 1 - 2^-64.
        let z = &HpFloat::one(64)
            - &(&HpFloat::from_i64(3, 64) * &HpFloat::pow2(-66, 64));
        assert_eq!(z.to_rational(), BigRational::one() - q(1, 1) / BigRational::from_integer(BigInt::one() << 64));
    }

    #[test]
    fn sqrt_of_small_integers() {
        let x = HpFloat::from_i64(4, 128).sqrt();
        assert_eq!(x.to_rational(), BigRational::from_integer(BigInt::from(2)));
        let t = HpFloat::from_i64(2, 128).sqrt();
        let r = t.to_rational();
        let u = half_ulp(&t);
        let two = BigRational::from_integer(BigInt::from(2));
        assert!((&r - &u) * (&r - &u) <= two);
        assert!((&r + &u) * (&r + &u) >= two);
    }

    #[test]
    fn decimal_formatting() {
        // -1/216 = -4.6296296296...e-3; the tenth digit rounds up.
        let x = HpFloat::from_rational(&q(-1, 216), 128);
        assert_eq!(x.to_decimal(10), "-4.629629630e-3");
        assert_eq!(HpFloat::zero(64).to_decimal(5), "0");
        assert_eq!(HpFloat::from_i64(1000, 64).to_decimal(4), "1.000e3");
        // Value just below a power of ten exercises the estimate correction.
        assert_eq!(HpFloat::from_rational(&q(9999, 10000), 64).to_decimal(3), "1.00e0");
        assert_eq!(HpFloat::from_i64(1, 64).to_decimal(3), "1.00e0");
    }

    #[test]
    fn ordering_across_magnitudes() {
        let prec = 96;
        let vals = [
            HpFloat::from_rational(&q(-5, 2), prec),
            HpFloat::from_i64(-1, prec),
            HpFloat::zero(prec),
            HpFloat::pow2(-300, prec),
            HpFloat::from_rational(&q(1, 3), prec),
            HpFloat::one(prec),
            HpFloat::from_rational(&q(1000001, 1000000), prec),
            HpFloat::from_i64(7, prec),
        ];
        for i in 0..vals.len() {
            for j in 0..vals.len() {
                assert_eq!(
                    vals[i].cmp(&vals[j]),
                    i.cmp(&j),
                    "order mismatch at {i},{j}"
                );
            }
        }
    }

    #[test]
    fn log2_of_extreme_values() {
        let x = HpFloat::pow2(-100000, 64);
        assert_eq!(x.log2_f64(), -100000.0);
        let y = &HpFloat::from_i64(3, 64) * &HpFloat::pow2(500, 64);
        assert!((y.log2_f64() - (3f64.log2() + 500.0)).abs() < 1e-12);
    }

    #[test]
    fn complex_products_take_real_fast_path() {
        let prec = 128;
        // Inexact real inputs: the product is -1 up to rounding, but the
        // imaginary part must come out exactly zero, not as rounding dust.
        let a = HpComplex::from_re(HpFloat::from_rational(&q(3, 7), prec));
        let b = HpComplex::from_re(HpFloat::from_rational(&q(-7, 3), prec));
        let p = &a * &b;
        assert!((&p.re - &HpFloat::from_i64(-1, prec)).abs() <= HpFloat::pow2(-126, prec));
        assert!(p.im.is_zero());

        // Exactly representable reals multiply exactly.
        let c = HpComplex::from_re(HpFloat::from_rational(&q(3, 2), prec));
        let d = HpComplex::from_re(HpFloat::from_i64(-2, prec));
        let e = &c * &d;
        assert_eq!(e.re.to_rational(), q(-3, 1));
        assert!(e.im.is_zero());

        let i = HpComplex::new(HpFloat::zero(prec), HpFloat::one(prec));
        let isq = &i * &i;
        assert_eq!(isq.re.to_rational(), q(-1, 1));
        assert!(isq.im.is_zero());
    }

    fn arb_value() -> impl Strategy<Value = (i64, i64, u32)> {
        (
            -(1i64 << 48)..(1i64 << 48),
            -120i64..120,
            prop_oneof![Just(64u32), Just(96u32), Just(160u32)],
        )
    }

    fn build(m: i64, e: i64, p: u32) -> (HpFloat, BigRational) {
        let x = HpFloat::make(BigInt::from(m), e, p);
        let exact = {
            let base = BigRational::from_integer(BigInt::from(m));
            let two = BigRational::from_integer(BigInt::from(2));
            let mut scale = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    scale *= &two;
                } else {
                    scale /= &two;
                }
            }
            base * scale
        };
        // Inputs with <= 49 bits are exactly representable at >= 64 bits.
        assert_eq!(x.to_rational(), exact);
        (x, exact)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn add_matches_exact_rational((ma, ea, pa) in arb_value(), (mb, eb, pb) in arb_value()) {
            let (a, qa) = build(ma, ea, pa);
            let (b, qb) = build(mb, eb, pb);
            assert_correctly_rounded(&(&a + &b), &(&qa + &qb));
            assert_correctly_rounded(&(&a - &b), &(&qa - &qb));
        }

        #[test]
        fn mul_matches_exact_rational((ma, ea, pa) in arb_value(), (mb, eb, pb) in arb_value()) {
            let (a, qa) = build(ma, ea, pa);
            let (b, qb) = build(mb, eb, pb);
            assert_correctly_rounded(&(&a * &b), &(qa * qb));
        }

        #[test]
        fn div_matches_exact_rational((ma, ea, pa) in arb_value(), (mb, eb, pb) in arb_value()) {
            prop_assume!(mb != 0);
            let (a, qa) = build(ma, ea, pa);
            let (b, qb) = build(mb, eb, pb);
            assert_correctly_rounded(&(&a / &b), &(qa / qb));
        }

        #[test]
        fn sqrt_is_within_half_ulp((ma, ea, pa) in arb_value()) {
            prop_assume!(ma > 0);
            let (a, qa) = build(ma, ea, pa);
            let r = a.sqrt();
            let rv = r.to_rational();
            let u = half_ulp(&r);
            prop_assert!((&rv - &u) * (&rv - &u) <= qa);
            prop_assert!((&rv + &u) * (&rv + &u) >= qa);
        }

        #[test]
        fn from_rational_round_trips_small_fractions(n in -10000i64..10000, d in 1i64..10000) {
            let qv = q(n, d);
            let x = HpFloat::from_rational(&qv, 256);
            assert_correctly_rounded(&x, &qv);
        }

        #[test]
        fn cmp_agrees_with_rational_order((ma, ea, pa) in arb_value(), (mb, eb, pb) in arb_value()) {
            let (a, qa) = build(ma, ea, pa);
            let (b, qb) = build(mb, eb, pb);
            prop_assert_eq!(a.cmp(&b), qa.cmp(&qb));
        }
    }
}
