use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Gaussian rational `re + i*im`, the coefficient field of Fourier modes.
pub type GaussianRational = Complex<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gaussian(re: i64, im: i64) -> GaussianRational {
    Complex::new(rat(re), rat(im))
}

/// Canonical decimal form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p"` or `"p/q"`. The denominator must be strictly positive;
/// non-reduced input is accepted and normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            if q.starts_with('+') || q.starts_with('-') {
                return Err(bad());
            }
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() || q.is_negative() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Serde adapter that reads and writes a [`Rational`] as its canonical string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalString(pub Rational);

impl fmt::Display for RationalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(RationalString)
            .map_err(serde::de::Error::custom)
    }
}
