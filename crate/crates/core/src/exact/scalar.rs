use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn to_text(s: &Scalar) -> String {
    s.to_string()
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(s: &Scalar) -> Option<Scalar> {
    if s.is_negative() {
        return None;
    }
    let n = s.numer().sqrt();
    let d = s.denom().sqrt();
    if &(&n * &n) == s.numer() && &(&d * &d) == s.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()))
}

/// JSON rendering: rationals travel as strings so no consumer rounds them.
pub fn to_json(s: &Scalar) -> serde_json::Value {
    serde_json::Value::String(to_text(s))
}

/// Uniform rational `n/d` with `|n| <= num_bound` and `1 <= d <= den_bound`.
pub fn random_small(rng: &mut impl rand::Rng, num_bound: i64, den_bound: i64) -> Scalar {
    ratio(rng.gen_range(-num_bound..=num_bound), rng.gen_range(1..=den_bound))
}

/// Scalar that serializes as its text form and deserializes from a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatText(pub Scalar);

impl serde::Serialize for RatText {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(&self.0))
    }
}

impl<'de> serde::Deserialize<'de> for RatText {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(t) => parse_scalar(&t).map(RatText).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(RatText(int(n.as_i64().unwrap()))),
            other => Err(serde::de::Error::custom(format!("expected a rational as \"p/q\" or an integer, got {other}"))),
        }
    }
}

/// Bit size used to rank pivot candidates.
pub fn height(s: &Scalar) -> u64 {
    s.numer().bits() + s.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_scalar("6/4").unwrap(), ratio(3, 2));
        assert_eq!(to_text(&ratio(3, 2)), "3/2");
        assert_eq!(to_text(&int(-7)), "-7");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn sqrt_of_squares_only() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&ratio(2, 1)), None);
        assert_eq!(rational_sqrt(&ratio(-1, 1)), None);
    }
}
