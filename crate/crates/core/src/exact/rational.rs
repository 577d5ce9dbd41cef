use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let parsed = match trimmed.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::ParseRational(text.into()))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::ParseRational(text.into()))?;
            if q == BigInt::from(0) {
                return Err(Error::ParseRational(text.into()));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            trimmed
                .parse()
                .map_err(|_| Error::ParseRational(text.into()))?,
        ),
    };
    Ok(parsed)
}

/// `"p/q"` in lowest terms, or `"p"` when the denominator is one.
pub fn rational_string(value: &Rational) -> String {
    value.to_string()
}

/// Serde adapter writing rationals as strings.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
