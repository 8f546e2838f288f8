//! Exact complex scalars with rational real and imaginary parts.
//!
//! Everything structural — hypocoercivity indices, characteristic polynomials,
//! series determinants, closed-form coefficients — is computed over these
//! scalars, so results are exact and reproducible. The textual form of a
//! rational is `"n"` or `"n/d"`; decimal literals such as `"0.304"` or
//! `"3.04e-1"` are accepted on input and converted exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoreError, Result};

/// A complex number `re + im*i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    /// Real scalar from a rational.
    pub fn from_rational(re: BigRational) -> Self {
        ExactScalar {
            re,
            im: BigRational::zero(),
        }
    }

    /// Real scalar from an integer.
    pub fn int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Real scalar `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real part, or an error if the imaginary part is nonzero.
    pub fn expect_real(&self, what: &str) -> Result<BigRational> {
        if self.is_real() {
            Ok(self.re.clone())
        } else {
            Err(CoreError::Parse(format!(
                "{what} must be real, got nonzero imaginary part {}",
                rational_to_string(&self.im)
            )))
        }
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|^2 = re^2 + im^2`, an exact nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero");
        ExactScalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// Parse a scalar from a rational string (`"n"`, `"n/d"`, or a decimal
    /// literal). Purely real; complex inputs use a `{re, im}` pair instead.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::from_rational(parse_rational(s)?))
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        &self + &rhs
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        &self - &rhs
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.inv()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_to_string(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", rational_to_string(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i",
            rational_to_string(&self.re),
            sign,
            rational_to_string(&self.im.abs())
        )
    }
}

/// Canonical textual form of a rational: `"n"` when the denominator is one,
/// `"n/d"` otherwise (denominator always positive).
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `"n"`, `"n/d"`, or a decimal literal (`"0.304"`, `"-3.04e-1"`) into
/// an exact rational.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    if s.is_empty() {
        return Err(CoreError::Parse("empty rational string".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_bigint(num)?;
        let den = parse_bigint(den)?;
        if den.is_zero() {
            return Err(CoreError::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if s.contains(['.', 'e', 'E']) {
        return parse_decimal(s);
    }
    Ok(BigRational::from_integer(parse_bigint(s)?))
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim())
        .map_err(|_| CoreError::Parse(format!("invalid integer {:?}", s.trim())))
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            i64::from_str(e.trim())
                .map_err(|_| CoreError::Parse(format!("invalid exponent in {s:?}")))?,
        ),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if !frac_part.is_empty() && !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CoreError::Parse(format!("invalid decimal {s:?}")));
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let num = parse_bigint(&digits)?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let scale = ten.pow(shift.unsigned_abs() as u32);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * scale)
    } else {
        BigRational::new(num, scale)
    })
}

impl Serialize for ExactScalar {
    /// Real values serialize as a rational string; complex values as
    /// `{"re": "...", "im": "..."}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_real() {
            serializer.serialize_str(&rational_to_string(&self.re))
        } else {
            use serde::ser::SerializeStruct;
            let mut st = serializer.serialize_struct("ExactScalar", 2)?;
            st.serialize_field("re", &rational_to_string(&self.re))?;
            st.serialize_field("im", &rational_to_string(&self.im))?;
            st.end()
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Text(String),
    Int(i64),
    Pair { re: String, im: String },
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let out = match repr {
            ScalarRepr::Text(s) => ExactScalar::parse(&s),
            ScalarRepr::Int(n) => Ok(ExactScalar::int(n)),
            ScalarRepr::Pair { re, im } => Ok(ExactScalar::new(
                parse_rational(&re).map_err(|e| D::Error::custom(e.to_string()))?,
                parse_rational(&im).map_err(|e| D::Error::custom(e.to_string()))?,
            )),
        };
        out.map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("5").unwrap(), q(5, 1));
        assert_eq!(parse_rational("-1/216").unwrap(), q(-1, 216));
        assert_eq!(parse_rational("1/-4").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("0.304").unwrap(), q(304, 1000));
        assert_eq!(parse_rational("3.04e-1").unwrap(), q(304, 1000));
        assert_eq!(parse_rational("2.5e3").unwrap(), q(2500, 1));
        assert_eq!(parse_rational(" -0.027 ").unwrap(), q(-27, 1000));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("1e").is_err());
    }

    #[test]
    fn complex_arithmetic() {
        let z = ExactScalar::new(q(1, 2), q(-1, 3));
        let w = ExactScalar::new(q(2, 1), q(1, 1));
        let p = &z * &w;
        // (1/2 - i/3)(2 + i) = 1 + 1/3 + i(1/2 - 2/3)
        assert_eq!(p, ExactScalar::new(q(4, 3), q(-1, 6)));
        let back = &p / &w;
        assert_eq!(back, z);
        assert_eq!(z.norm_sqr(), q(13, 36));
        assert_eq!((&z.conj()).im(), &q(1, 3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactScalar::ratio(-1, 216).to_string(), "-1/216");
        assert_eq!(ExactScalar::int(3).to_string(), "3");
        assert_eq!(ExactScalar::new(q(1, 2), q(-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(ExactScalar::i().to_string(), "1i");
    }

    #[test]
    fn serde_round_trip() {
        let real = ExactScalar::ratio(-1, 216);
        let s = serde_json::to_string(&real).unwrap();
        assert_eq!(s, "\"-1/216\"");
        assert_eq!(serde_json::from_str::<ExactScalar>(&s).unwrap(), real);

        let z = ExactScalar::new(q(1, 2), q(-1, 3));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(serde_json::from_str::<ExactScalar>(&s).unwrap(), z);

        assert_eq!(
            serde_json::from_str::<ExactScalar>("7").unwrap(),
            ExactScalar::int(7)
        );
    }
}
