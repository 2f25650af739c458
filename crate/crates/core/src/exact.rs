//! Nonnegative exact rationals.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative rational number in lowest terms.
///
/// Every probability in the crate is an `ExactProb`; floating point only
/// appears once a logarithm has to be taken.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn zero() -> Self {
        ExactProb(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactProb(BigRational::one())
    }

    pub fn half() -> Self {
        Self::from_u64(1, 2)
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn from_u64(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactProb(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Range("zero denominator".into()));
        }
        Ok(Self::from_u64(num, den))
    }

    /// `1 / 2^k`.
    pub fn inv_pow2(k: u32) -> Self {
        ExactProb(BigRational::new(BigInt::one(), BigInt::one() << k as usize))
    }

    pub fn from_biguint(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        ExactProb(BigRational::new(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        ))
    }

    pub fn from_ratio(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Range(format!("negative probability {r}")));
        }
        Ok(ExactProb(r))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    /// Numerator and denominator as machine integers, when both fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.0.numer().to_u64()?, self.0.denom().to_u64()?))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &ExactProb) -> Option<ExactProb> {
        let d = &self.0 - &rhs.0;
        (!d.is_negative()).then_some(ExactProb(d))
    }

    /// `1 - self`, or `None` when `self > 1`.
    pub fn complement(&self) -> Option<ExactProb> {
        ExactProb::one().checked_sub(self)
    }

    pub fn pow(&self, e: u32) -> ExactProb {
        ExactProb(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn mul_u64(&self, k: u64) -> ExactProb {
        ExactProb(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    pub fn div_u64(&self, k: u64) -> ExactProb {
        assert!(k != 0, "division by zero");
        ExactProb(&self.0 / BigRational::from_integer(BigInt::from(k)))
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Default for ExactProb {
    fn default() -> Self {
        ExactProb::zero()
    }
}

impl Add for &ExactProb {
    type Output = ExactProb;
    fn add(self, rhs: &ExactProb) -> ExactProb {
        ExactProb(&self.0 + &rhs.0)
    }
}

impl Add for ExactProb {
    type Output = ExactProb;
    fn add(self, rhs: ExactProb) -> ExactProb {
        ExactProb(self.0 + rhs.0)
    }
}

impl Mul for &ExactProb {
    type Output = ExactProb;
    fn mul(self, rhs: &ExactProb) -> ExactProb {
        ExactProb(&self.0 * &rhs.0)
    }
}

impl Mul for ExactProb {
    type Output = ExactProb;
    fn mul(self, rhs: ExactProb) -> ExactProb {
        ExactProb(self.0 * rhs.0)
    }
}

impl Sum for ExactProb {
    fn sum<I: Iterator<Item = ExactProb>>(iter: I) -> Self {
        iter.fold(ExactProb::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactProb> for ExactProb {
    fn sum<I: Iterator<Item = &'a ExactProb>>(iter: I) -> Self {
        iter.fold(ExactProb::zero(), |acc, x| &acc + x)
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts `"3/8"`, `"0"`, `"1"` and finite decimals such as `"0.125"`.
impl FromStr for ExactProb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a nonnegative rational: {s:?}"));
        let r = if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            BigRational::new(num, den)
        } else if let Some((int, frac)) = s.split_once('.') {
            if !frac.chars().all(|c| c.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
                return Err(bad());
            }
            let int: BigInt = if int.is_empty() {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac_val: BigInt = if frac.is_empty() {
                BigInt::zero()
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let scale = num_traits::pow(BigInt::from(10u32), frac.len());
            BigRational::new(int * &scale + frac_val, scale)
        } else {
            BigRational::from_integer(s.parse().map_err(|_| bad())?)
        };
        ExactProb::from_ratio(r).map_err(|_| bad())
    }
}

impl Serialize for ExactProb {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactProb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The default grid `k / den` for `k = 0..=den/2`, always including both
/// endpoints when `den` is even.
pub fn p_grid(den: u64) -> Vec<ExactProb> {
    assert!(den > 0);
    (0..=den / 2).map(|k| ExactProb::from_u64(k, den)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("3/8".parse::<ExactProb>().unwrap(), ExactProb::from_u64(3, 8));
        assert_eq!("6/16".parse::<ExactProb>().unwrap(), ExactProb::from_u64(3, 8));
        assert_eq!("0.125".parse::<ExactProb>().unwrap(), ExactProb::from_u64(1, 8));
        assert_eq!("1".parse::<ExactProb>().unwrap(), ExactProb::one());
        assert!("-1/2".parse::<ExactProb>().is_err());
        assert!("1/0".parse::<ExactProb>().is_err());
        assert!("abc".parse::<ExactProb>().is_err());
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(ExactProb::from_u64(4, 32).to_string(), "1/8");
        assert_eq!(ExactProb::zero().to_string(), "0");
        assert_eq!(ExactProb::one().to_string(), "1");
    }

    #[test]
    fn checked_sub_refuses_negative() {
        let a = ExactProb::from_u64(1, 4);
        let b = ExactProb::from_u64(1, 3);
        assert!(a.checked_sub(&b).is_none());
        assert_eq!(b.checked_sub(&a).unwrap(), ExactProb::from_u64(1, 12));
        assert_eq!(a.complement().unwrap(), ExactProb::from_u64(3, 4));
    }

    #[test]
    fn grid_has_33_points() {
        let g = p_grid(64);
        assert_eq!(g.len(), 33);
        assert_eq!(g[0], ExactProb::zero());
        assert_eq!(g[32], ExactProb::half());
    }
}
