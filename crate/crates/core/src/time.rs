use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// An exact rational timestamp, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalTime(Rational64);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TimeParseError {
    #[error("malformed rational `{0}`: expected `num/den` or an integer")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl RationalTime {
    pub const ZERO: RationalTime = RationalTime(Rational64::new_raw(0, 1));

    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        RationalTime(Rational64::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        RationalTime(Rational64::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_ratio(&self) -> Rational64 {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn checked_add(&self, other: RationalTime) -> Option<RationalTime> {
        num_traits::CheckedAdd::checked_add(&self.0, &other.0).map(RationalTime)
    }
}

impl From<Rational64> for RationalTime {
    fn from(r: Rational64) -> Self {
        RationalTime(r)
    }
}

impl Add for RationalTime {
    type Output = RationalTime;
    fn add(self, rhs: RationalTime) -> RationalTime {
        RationalTime(self.0 + rhs.0)
    }
}

impl Sub for RationalTime {
    type Output = RationalTime;
    fn sub(self, rhs: RationalTime) -> RationalTime {
        RationalTime(self.0 - rhs.0)
    }
}

/// Always `num/den`, integers included (`3/1`).
impl fmt::Display for RationalTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for RationalTime {
    type Err = TimeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let malformed = || TimeParseError::Malformed(s.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| malformed())?,
                d.trim().parse::<i64>().map_err(|_| malformed())?,
            ),
            None => (text.parse::<i64>().map_err(|_| malformed())?, 1),
        };
        if den == 0 {
            return Err(TimeParseError::ZeroDenominator(s.to_string()));
        }
        Ok(RationalTime::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let t = RationalTime::new(4, -6);
        assert_eq!((t.numer(), t.denom()), (-2, 3));
        assert_eq!(t.to_string(), "-2/3");
        assert_eq!(RationalTime::integer(3).to_string(), "3/1");
    }

    #[test]
    fn parse() {
        assert_eq!(
            "1/2".parse::<RationalTime>().unwrap(),
            RationalTime::new(1, 2)
        );
        assert_eq!(
            "6/4".parse::<RationalTime>().unwrap(),
            RationalTime::new(3, 2)
        );
        assert_eq!(
            "7".parse::<RationalTime>().unwrap(),
            RationalTime::integer(7)
        );
        assert!(matches!(
            "1/0".parse::<RationalTime>(),
            Err(TimeParseError::ZeroDenominator(_))
        ));
        assert!(matches!(
            "x/2".parse::<RationalTime>(),
            Err(TimeParseError::Malformed(_))
        ));
        assert!(matches!(
            "".parse::<RationalTime>(),
            Err(TimeParseError::Malformed(_))
        ));
    }
}
