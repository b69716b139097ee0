//! Exact rationals and the textual `p/q` format used throughout the crate.

use std::fmt::Write as _;

use num_rational::Rational64;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = Rational64;

/// Error returned when a rational (or a list of rationals) does not parse.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand constructor, `q(p, d) = p/d`.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// Shorthand for an integral rational.
pub fn qi(value: i64) -> Rational {
    Rational::from_integer(value)
}

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(s.to_string());
    match s.split_once('/') {
        None => s.parse::<i64>().map(qi).map_err(|_| invalid()),
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| invalid())?;
            let den: i64 = den.trim().parse().map_err(|_| invalid())?;
            if den == 0 {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Parses a comma separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, ParseRationalError> {
    s.split(',').map(parse_rational).collect()
}

/// Parses a comma separated list of integers.
pub fn parse_integer_list(s: &str) -> Result<Vec<i64>, ParseRationalError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if t.is_empty() {
                return Err(ParseRationalError::Empty);
            }
            t.parse::<i64>()
                .map_err(|_| ParseRationalError::Invalid(t.to_string()))
        })
        .collect()
}

/// Renders a rational as `p` or `p/q` in lowest terms.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a vector as a comma separated `p/q` list.
pub fn format_rational_list(v: &[Rational]) -> String {
    let mut out = String::new();
    for (i, r) in v.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format_rational(r));
    }
    out
}

/// Compact multiplicity notation, e.g. `(3/2^4, 4/5^10)`.
pub fn format_with_multiplicities(v: &[Rational]) -> String {
    let mut out = String::from("(");
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format_rational(&v[i]));
        if j - i > 1 {
            let _ = write!(out, "^{}", j - i);
        }
        i = j;
    }
    out.push(')');
    out
}

/// Serde adapters rendering rationals as `p/q` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::super::{format_rational, parse_rational, Rational};
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let items = Vec::<String>::deserialize(d)?;
            items
                .iter()
                .map(|t| parse_rational(t).map_err(D::Error::custom))
                .collect()
        }
    }
}
