//! Exact rationals and the extended hcf value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Reduced fraction with positive denominator. Always printed as `p/q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn floor(&self) -> i128 {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Accepts `p/q` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("not a rational: {s:?}");
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i128 = n.parse().map_err(|_| bad())?;
        let d: i128 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $f(self, rhs: Rational) -> Rational {
                Rational($tr::$f(self.0, rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::integer(n)
    }
}

/// Highest common factor of the imbalance set: a positive integer, or
/// infinity when every imbalance is zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Hcf {
    Finite(u64),
    Infinite,
}

impl Hcf {
    /// Whether `diff` is an achievable multiple: divisible by the hcf, or
    /// zero when the hcf is infinite.
    pub fn divides(&self, diff: i64) -> bool {
        match *self {
            Hcf::Finite(h) => diff.unsigned_abs().is_multiple_of(h),
            Hcf::Infinite => diff == 0,
        }
    }

    pub fn finite(&self) -> Option<u64> {
        match *self {
            Hcf::Finite(h) => Some(h),
            Hcf::Infinite => None,
        }
    }
}

impl fmt::Display for Hcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hcf::Finite(h) => write!(f, "{h}"),
            Hcf::Infinite => f.write_str("INFINITY"),
        }
    }
}

impl FromStr for Hcf {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "INFINITY" | "infinity" | "inf" | "∞" => Ok(Hcf::Infinite),
            t => t
                .parse::<u64>()
                .ok()
                .filter(|&h| h > 0)
                .map(Hcf::Finite)
                .ok_or_else(|| format!("not an hcf value: {s:?}")),
        }
    }
}

impl Serialize for Hcf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Hcf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for Hcf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hcf {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Hcf::Finite(a), Hcf::Finite(b)) => a.cmp(b),
            (Hcf::Finite(_), Hcf::Infinite) => Ordering::Less,
            (Hcf::Infinite, Hcf::Finite(_)) => Ordering::Greater,
            (Hcf::Infinite, Hcf::Infinite) => Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(Rational::new(10, 6).to_string(), "5/3");
        assert_eq!(Rational::new(4, -2).to_string(), "-2/1");
        assert_eq!("7/14".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::integer(3));
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!("infinity".parse::<Hcf>().unwrap(), Hcf::Infinite);
        assert!("0".parse::<Hcf>().is_err());
    }

    #[test]
    fn hcf_divisibility() {
        assert!(Hcf::Finite(2).divides(-4));
        assert!(!Hcf::Finite(2).divides(1));
        assert!(Hcf::Infinite.divides(0));
        assert!(!Hcf::Infinite.divides(2));
    }

    proptest! {
        #[test]
        fn always_reduced(n in -1000i128..1000, d in 1i128..1000) {
            let r = Rational::new(n, d);
            prop_assert!(r.denom() > 0);
            prop_assert_eq!(num_integer::gcd(r.numer().abs(), r.denom()), 1);
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }

        #[test]
        fn order_matches_cross_multiplication(a in -50i128..50, b in 1i128..50, c in -50i128..50, d in 1i128..50) {
            let lhs = Rational::new(a, b) < Rational::new(c, d);
            prop_assert_eq!(lhs, a * d < c * b);
        }
    }
}
