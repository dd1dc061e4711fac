//! Exact rational probabilities.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use thiserror::Error;

/// An exact rational number, always kept in lowest terms with a positive
/// denominator. Used for head annotations and for every computed mass.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityParseError {
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Probability {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        // BigRational::new reduces and normalizes the sign; it panics on zero.
        Probability(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Probability(BigRational::zero())
    }

    pub fn one() -> Self {
        Probability(BigRational::one())
    }

    pub fn half() -> Self {
        Probability::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Lossy conversion, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Renders the value as a decimal with at most `places` fractional
    /// digits, trailing zeros trimmed. Values that are not finite decimals
    /// are rounded half-up.
    pub fn to_decimal_string(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let rounded = scaled.round().to_integer();
        let neg = rounded.is_negative();
        let abs = rounded.abs();
        let int_part = &abs / &scale;
        let frac_part = &abs % &scale;
        let mut frac = format!("{:0>width$}", frac_part.to_string(), width = places);
        while frac.ends_with('0') {
            frac.pop();
        }
        let sign = if neg { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }

    /// `Some(decimal)` when the value has a finite decimal expansion.
    pub fn exact_decimal(&self) -> Option<String> {
        let mut d = self.0.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let mut twos = 0usize;
        let mut fives = 0usize;
        while (&d % &two).is_zero() {
            d /= &two;
            twos += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            fives += 1;
        }
        if !d.is_one() {
            return None;
        }
        Some(self.to_decimal_string(twos.max(fives)))
    }
}

impl FromStr for Probability {
    type Err = ProbabilityParseError;

    /// Accepts `int`, `int/int` and decimals such as `0.9` or `.25`.
    /// Decimals are converted exactly, never through binary floats.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ProbabilityParseError::Malformed(s.to_string());
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if let Some((n, d)) = s.split_once('/') {
            if !digits(n) || !digits(d) {
                return Err(malformed());
            }
            let n: BigInt = n.parse().map_err(|_| malformed())?;
            let d: BigInt = d.parse().map_err(|_| malformed())?;
            if d.is_zero() {
                return Err(ProbabilityParseError::ZeroDenominator(s.to_string()));
            }
            return Ok(Probability::new(n, d));
        }
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if (int.is_empty() && frac.is_empty())
            || !(int.is_empty() || digits(int))
            || !(frac.is_empty() || digits(frac))
            || (s.contains('.') && frac.is_empty())
        {
            return Err(malformed());
        }
        let all = format!("{int}{frac}");
        let numer: BigInt = all.parse().map_err(|_| malformed())?;
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        Ok(Probability::new(numer, denom))
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Probability {
    type Output = Probability;
    fn add(self, rhs: Probability) -> Probability {
        Probability(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn add(self, rhs: &Probability) -> Probability {
        Probability(&self.0 + &rhs.0)
    }
}

impl Sub for Probability {
    type Output = Probability;
    fn sub(self, rhs: Probability) -> Probability {
        Probability(self.0 - rhs.0)
    }
}

impl Mul for Probability {
    type Output = Probability;
    fn mul(self, rhs: Probability) -> Probability {
        Probability(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn mul(self, rhs: &Probability) -> Probability {
        Probability(&self.0 * &rhs.0)
    }
}

impl Sum for Probability {
    fn sum<I: Iterator<Item = Probability>>(iter: I) -> Self {
        iter.fold(Probability::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Probability> for Probability {
    fn sum<I: Iterator<Item = &'a Probability>>(iter: I) -> Self {
        iter.fold(Probability::zero(), |a, b| &a + b)
    }
}

impl Product for Probability {
    fn product<I: Iterator<Item = Probability>>(iter: I) -> Self {
        iter.fold(Probability::one(), |a, b| a * b)
    }
}

impl From<u32> for Probability {
    fn from(n: u32) -> Self {
        Probability::new(n, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decimal_is_exact() {
        let p: Probability = "0.9".parse().unwrap();
        assert_eq!(p.numer(), &BigInt::from(9));
        assert_eq!(p.denom(), &BigInt::from(10));
        assert_eq!("0.25".parse::<Probability>().unwrap(), Probability::new(1, 4));
        assert_eq!(".5".parse::<Probability>().unwrap(), Probability::half());
        assert_eq!("1".parse::<Probability>().unwrap(), Probability::one());
        assert_eq!("1.0".parse::<Probability>().unwrap(), Probability::one());
    }

    #[test]
    fn fractions_reduce() {
        let p: Probability = "6/8".parse().unwrap();
        assert_eq!(p, Probability::new(3, 4));
        assert_eq!(p.to_string(), "3/4");
    }

    #[test]
    fn malformed_inputs() {
        for s in ["", ".", "1.", "a", "1/0", "1/", "-1", "0.9.1", "1 /2"] {
            assert!(s.parse::<Probability>().is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Probability::new(49, 50).to_decimal_string(6), "0.98");
        assert_eq!(Probability::new(1, 3).to_decimal_string(4), "0.3333");
        assert_eq!(Probability::new(2, 3).to_decimal_string(4), "0.6667");
        assert_eq!(Probability::one().to_decimal_string(6), "1");
        assert_eq!(Probability::zero().to_decimal_string(6), "0");
        assert_eq!(Probability::new(9, 10).exact_decimal().as_deref(), Some("0.9"));
        assert_eq!(Probability::new(1, 8).exact_decimal().as_deref(), Some("0.125"));
        assert_eq!(Probability::new(1, 3).exact_decimal(), None);
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(n in 0u64..10_000, d in 1u64..10_000) {
            let p = Probability::new(n, d);
            let again = Probability::new(p.numer().clone(), p.denom().clone());
            prop_assert_eq!(&p, &again);
            prop_assert!(p.denom().is_positive());
            let reparsed: Probability = p.to_string().parse().unwrap();
            prop_assert_eq!(p, reparsed);
        }
    }
}
