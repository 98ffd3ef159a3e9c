//! Exact non-negative rational distances.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A non-negative rational number held in lowest terms.
///
/// Comparison and equality are exact. The textual form is `p` for integers
/// and `p/q` otherwise, always reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Dist(BigRational);

impl Dist {
    pub fn zero() -> Self {
        Dist(BigRational::zero())
    }

    pub fn one() -> Self {
        Dist(BigRational::one())
    }

    pub fn from_integer(n: u64) -> Self {
        Dist(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num / den`, reducing to lowest terms.
    pub fn ratio(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        Ok(Dist(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// Wraps an arbitrary rational, rejecting negative values.
    pub fn from_rational(r: BigRational) -> Result<Self, Error> {
        if r.is_negative() {
            return Err(Error::Input(format!("negative distance {r}")));
        }
        Ok(Dist(r))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// `|self - other|`, which is again a distance.
    pub fn abs_diff(&self, other: &Dist) -> Dist {
        Dist((&self.0 - &other.0).abs())
    }

    /// `self - other` if it is non-negative.
    pub fn checked_sub(&self, other: &Dist) -> Option<Dist> {
        let d = &self.0 - &other.0;
        (!d.is_negative()).then_some(Dist(d))
    }

    pub fn mul_ratio(&self, num: u64, den: u64) -> Dist {
        assert!(den > 0, "zero denominator");
        Dist(&self.0 * BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Add for Dist {
    type Output = Dist;
    fn add(self, rhs: Dist) -> Dist {
        Dist(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Dist> for &'a Dist {
    type Output = Dist;
    fn add(self, rhs: &'a Dist) -> Dist {
        Dist(&self.0 + &rhs.0)
    }
}

impl From<u64> for Dist {
    fn from(n: u64) -> Self {
        Dist::from_integer(n)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, what: &str, literal: &str) -> Result<BigUint, Error> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Input(format!("bad {what} in distance literal {literal:?}")));
    }
    BigUint::from_str(s).map_err(|e| Error::Input(format!("{literal:?}: {e}")))
}

/// Accepts `p` or `p/q` with decimal digits only; `q` must be nonzero.
/// Fractions need not be reduced on input.
impl FromStr for Dist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (parse_digits(p, "numerator", s)?, parse_digits(q, "denominator", s)?),
            None => (parse_digits(s, "integer", s)?, BigUint::one()),
        };
        if den.is_zero() {
            return Err(Error::Input(format!("zero denominator in {s:?}")));
        }
        Ok(Dist(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }
}
