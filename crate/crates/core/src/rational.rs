//! Exact rational helpers used throughout the crate.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"12"`, `"-0.525"`, `"+3.25"` or `"37/5"` without going through
/// floating point.
pub fn parse(literal: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        literal: literal.to_string(),
        reason,
    };
    let text = literal.trim();
    if text.is_empty() {
        return Err(err("empty"));
    }
    if let Some((numer, denom)) = text.split_once('/') {
        let numer: BigInt = numer.trim().parse().map_err(|_| err("bad numerator"))?;
        let denom: BigInt = denom.trim().parse().map_err(|_| err("bad denominator"))?;
        if denom.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(numer, denom));
    }

    let (negative, digits) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err("no digits"));
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err("expected a decimal or p/q fraction"));
    }
    let mantissa: BigInt = format!("{whole}{frac}")
        .parse()
        .map_err(|_| err("bad digits"))?;
    let scale = num::pow(BigInt::from(10), frac.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Renders an exact `p/q` string, or `p` for integers.
pub fn exact(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn approx(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `p/q (≈ d.dddd)` for human-readable output; integers print bare.
pub fn display(value: &Rational) -> String {
    if value.is_integer() {
        exact(value)
    } else {
        format!("{} (≈{:.4})", exact(value), approx(value))
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| {
        num::integer::lcm(acc, v.denom().clone())
    })
}

/// Serde adapter storing a rational as its exact string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exact(pub Rational);

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&exact(&self.0))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&exact(&self.0))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&exact(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
            Float(f64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Exact(int(v))),
            Raw::Text(s) => parse(&s).map(Exact).map_err(serde::de::Error::custom),
            Raw::Float(v) => Err(serde::de::Error::custom(format!(
                "{v} is a float; write it as a string such as \"{v}\" so it is read exactly"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse("0.525").unwrap(), ratio(21, 40));
        assert_eq!(parse("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse("10").unwrap(), int(10));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse("7.").unwrap(), int(7));
        assert_eq!(parse("37/5").unwrap(), ratio(37, 5));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", ".", "1e3", "0x10", "1/0", "a/b", "1.2.3"] {
            assert!(parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn renders_exact_and_decimal() {
        assert_eq!(exact(&ratio(17, 33)), "17/33");
        assert_eq!(exact(&int(-3)), "-3");
        assert_eq!(display(&ratio(37, 5)), "37/5 (≈7.4000)");
    }

    #[test]
    fn exact_serde_round_trip() {
        let v = Exact(ratio(-13, 40));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"-13/40\"");
        let back: Exact = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        let from_int: Exact = serde_json::from_str("4").unwrap();
        assert_eq!(from_int.0, int(4));
    }
}
