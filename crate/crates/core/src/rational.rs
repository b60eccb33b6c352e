//! Exact rationals over arbitrary-precision integers.
//!
//! Thin newtype over [`num_rational::BigRational`] that fixes the textual
//! form used everywhere in the crate: `"p/q"` in lowest terms, or a bare `"p"`
//! when the denominator is one. Serde uses the same string form so no float
//! ever enters the I/O layer.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        self.0.numer().div_ceil(self.0.denom())
    }

    /// `Some(n)` iff the value is an integer that fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn floor_i64(&self) -> Option<i64> {
        self.floor().to_i64()
    }

    pub fn ceil_i64(&self) -> Option<i64> {
        self.ceil().to_i64()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let malformed = || ParseRationalError::Malformed(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| malformed())?;
        let denom: BigInt = d.parse().map_err(|_| malformed())?;
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(Rational::from_int(n)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<i64> for Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                Rational(self.0.$method(BigRational::from_integer(BigInt::from(rhs))))
            }
        }
        impl<'a> $trait<i64> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                Rational((&self.0).$method(BigRational::from_integer(BigInt::from(rhs))))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let q = Rational::new(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(8, 4).to_string(), "2");
    }

    #[test]
    fn floor_ceil() {
        let q = Rational::new(-7, 2);
        assert_eq!(q.floor_i64(), Some(-4));
        assert_eq!(q.ceil_i64(), Some(-3));
        assert_eq!(Rational::from_int(5).floor_i64(), Some(5));
        assert_eq!(Rational::from_int(5).ceil_i64(), Some(5));
    }

    #[test]
    fn parse_and_serde() {
        assert_eq!("-4/3".parse::<Rational>().unwrap(), Rational::new(-4, 3));
        assert_eq!(" 12 ".parse::<Rational>().unwrap(), Rational::from_int(12));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!("x".parse::<Rational>().is_err());

        let json = serde_json::to_string(&Rational::new(8, 7)).unwrap();
        assert_eq!(json, "\"8/7\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::new(8, 7));
        let int: Rational = serde_json::from_str("3").unwrap();
        assert_eq!(int, Rational::from_int(3));
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(&a + &b, Rational::new(1, 2));
        assert_eq!(a.clone() * 3, Rational::one());
        assert_eq!(-(a / b), Rational::from_int(-2));
    }
}
