//! Exact rational scalars and points, plus their fraction-string serialization.
//!
//! Every coordinate in the crate is a [`Rational`]: an arbitrary-precision,
//! always-reduced fraction with a positive denominator. On the wire a rational
//! is a string such as `"3/4"`, `"-2"` or `"0"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};

pub type Rational = BigRational;

/// A point of `R^d` with exact coordinates.
pub type Point = Vec<Rational>;

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn point(coords: &[(i64, i64)]) -> Point {
    coords.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn int_point(coords: &[i64]) -> Point {
    coords.iter().map(|&n| int(n)).collect()
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|e| format!("invalid rational {t:?}: {e}"))?;
    Ok(r)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Convex combination `sum_i w_i p_i`.
pub fn combine(weights: &[Rational], points: &[Point], dim: usize) -> Point {
    let mut out = vec![Rational::zero(); dim];
    for (w, p) in weights.iter().zip(points) {
        if w.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(p) {
            *o += w * c;
        }
    }
    out
}

pub fn is_convex_weights(weights: &[Rational]) -> bool {
    weights.iter().all(|w| *w >= Rational::zero())
        && weights.iter().fold(Rational::zero(), |a, w| a + w) == Rational::one()
}

pub fn format_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(|c| c.to_string()).collect()
}

/// Serde adapters for rationals written as fraction strings.
pub mod serde_frac {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&r.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(de::Error::custom))
                .collect()
        }
    }

    pub mod vec2 {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for row in v {
                seq.serialize_element(&format_point(row))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            let v = Vec::<Vec<String>>::deserialize(d)?;
            v.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_rational(s).map_err(de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = rat(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(r.to_string(), "-3/4");
    }

    #[test]
    fn parses_fraction_strings() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" -2 ").unwrap(), int(-2));
        assert_eq!(parse_rational("10/4").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn no_overflow() {
        let mut acc = int(1);
        for _ in 0..200 {
            acc = &acc * int(1 << 20) + rat(1, 3);
        }
        assert!(acc > int(1));
    }
}
