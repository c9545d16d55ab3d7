//! Normalized rationals used for reporting slopes.
//!
//! Every decision in the crate is made on cleared-denominator integers; this
//! type exists so that slopes like `mu = d/n` can be printed and serialized
//! exactly.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRational", into = "RawRational")]
pub struct Rational {
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct RawRational {
    num: i64,
    den: i64,
}

impl TryFrom<RawRational> for Rational {
    type Error = Error;

    fn try_from(raw: RawRational) -> Result<Self> {
        Rational::new(raw.num, raw.den)
    }
}

impl From<Rational> for RawRational {
    fn from(r: Rational) -> Self {
        RawRational {
            num: r.num,
            den: r.den,
        }
    }
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Rational { num, den })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Both denominators are positive, so cross-multiplying preserves order.
        let lhs = i128::from(self.num) * i128::from(other.den);
        let rhs = i128::from(other.num) * i128::from(self.den);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        let z = Rational::new(0, -7).unwrap();
        assert_eq!((z.numer(), z.denom()), (0, 1));
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn json_shape() {
        let r = Rational::new(3, 6).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":1,"den":2}"#);
        let back: Rational = serde_json::from_str(r#"{"num":2,"den":-4}"#).unwrap();
        assert_eq!(back, Rational::new(-1, 2).unwrap());
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":0}"#).is_err());
    }

    proptest! {
        #[test]
        fn order_matches_cross_multiplication(
            a in -1_000_000i64..=1_000_000,
            b in 1i64..=1_000_000,
            c in -1_000_000i64..=1_000_000,
            d in 1i64..=1_000_000,
        ) {
            let x = Rational::new(a, b).unwrap();
            let y = Rational::new(c, d).unwrap();
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            prop_assert_eq!(x == y, a * d == c * b);
        }

        #[test]
        fn normalized_form(a in -1_000_000i64..=1_000_000, b in -1_000_000i64..=1_000_000) {
            prop_assume!(b != 0);
            let r = Rational::new(a, b).unwrap();
            prop_assert!(r.denom() > 0);
            prop_assert_eq!(r.numer().gcd(&r.denom()), 1);
        }
    }
}
