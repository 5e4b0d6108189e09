//! Exact rational scalars.
//!
//! Every weight, count and polynomial coefficient in the crate is a
//! [`Rational`]: an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Parses `"p"`, `"-p"` or `"p/q"` (q nonzero). Whitespace around the parts is allowed.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::invalid("rational", format!("cannot parse {text:?} as p/q"));
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::invalid("rational", format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}

/// Serde helper: rationals travel as strings.
pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format(value))
}

pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
    let raw = RawRational::deserialize(de)?;
    raw.into_rational().map_err(serde::de::Error::custom)
}

/// A rational as it may appear in an input document: a string or a JSON integer.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub(crate) enum RawRational {
    Text(String),
    Int(i64),
}

impl RawRational {
    pub(crate) fn into_rational(self) -> Result<Rational> {
        match self {
            RawRational::Text(s) => parse(&s),
            RawRational::Int(i) => Ok(int(i)),
        }
    }
}
