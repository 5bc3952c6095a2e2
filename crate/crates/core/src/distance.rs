//! Symbolic distances.
//!
//! Every shipped instance measures distance as `2^-x` where `x` is the depth
//! of the first disagreement (an index, a timestamp or a level). Only the
//! exponent is stored: `Level(x) ≤ Level(y)` iff `x ≥ y`, so comparisons stay
//! exact and no floating-point value is ever formed.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::time::RationalTime;

/// Depth of the first disagreement between two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    /// A natural index (sequence position or Herbrand level).
    Index(u64),
    /// An exact, nonnegative timestamp.
    Time(RationalTime),
}

/// An element of the pointed distance set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Zero,
    Level(Level),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistanceError {
    #[error("cannot compare {0} with {1}: distances from different families")]
    IncompatibleFamilies(Distance, Distance),
}

impl Distance {
    pub fn index(n: u64) -> Self {
        Distance::Level(Level::Index(n))
    }

    pub fn time(t: RationalTime) -> Self {
        Distance::Level(Level::Time(t))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Distance::Zero)
    }

    /// Order comparison in the distance order (`Zero` is least).
    pub fn cmp_distance(&self, other: &Distance) -> Result<Ordering, DistanceError> {
        use Distance::*;
        match (self, other) {
            (Zero, Zero) => Ok(Ordering::Equal),
            (Zero, Level(_)) => Ok(Ordering::Less),
            (Level(_), Zero) => Ok(Ordering::Greater),
            // deeper agreement is a smaller distance
            (Level(crate::Level::Index(x)), Level(crate::Level::Index(y))) => Ok(y.cmp(x)),
            (Level(crate::Level::Time(x)), Level(crate::Level::Time(y))) => Ok(y.cmp(x)),
            _ => Err(DistanceError::IncompatibleFamilies(*self, *other)),
        }
    }

    pub fn leq(&self, other: &Distance) -> Result<bool, DistanceError> {
        Ok(self.cmp_distance(other)? != Ordering::Greater)
    }

    pub fn lt(&self, other: &Distance) -> Result<bool, DistanceError> {
        Ok(self.cmp_distance(other)? == Ordering::Less)
    }
}

/// `d1 ≤ d2` in the distance order.
pub fn distance_leq(d1: &Distance, d2: &Distance) -> Result<bool, DistanceError> {
    d1.leq(d2)
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Index(n) => write!(f, "{n}"),
            Level::Time(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Zero => f.write_str("0"),
            Distance::Level(l) => write!(f, "2^-({l})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Numeric value of the distance under the 2^-x reading, used as an oracle.
    fn numeric(d: &Distance) -> f64 {
        match d {
            Distance::Zero => 0.0,
            Distance::Level(Level::Index(n)) => 2f64.powi(-(*n as i32)),
            Distance::Level(Level::Time(t)) => 2f64.powf(-t.to_f64()),
        }
    }

    #[test]
    fn zero_is_least() {
        assert!(distance_leq(&Distance::Zero, &Distance::index(3)).unwrap());
        assert!(!distance_leq(&Distance::index(3), &Distance::Zero).unwrap());
        assert!(distance_leq(&Distance::Zero, &Distance::time(RationalTime::new(1, 2))).unwrap());
    }

    #[test]
    fn reverse_order_matches_powers_of_two() {
        let (a, b) = (Distance::index(5), Distance::index(2));
        assert!(distance_leq(&a, &b).unwrap());
        assert!(numeric(&a) <= numeric(&b));
        assert!(!distance_leq(&b, &a).unwrap());
        for x in 0..12u64 {
            for y in 0..12u64 {
                let (dx, dy) = (Distance::index(x), Distance::index(y));
                assert_eq!(dx.leq(&dy).unwrap(), numeric(&dx) <= numeric(&dy));
            }
        }
        let grid: Vec<_> = (0..10)
            .map(|k| Distance::time(RationalTime::new(k, 3)))
            .collect();
        for dx in &grid {
            for dy in &grid {
                assert_eq!(dx.leq(dy).unwrap(), numeric(dx) <= numeric(dy));
            }
        }
    }

    #[test]
    fn reflexive() {
        assert!(distance_leq(&Distance::index(2), &Distance::index(2)).unwrap());
        assert!(!Distance::index(2).lt(&Distance::index(2)).unwrap());
    }

    #[test]
    fn incompatible_families() {
        let err = distance_leq(
            &Distance::index(1),
            &Distance::time(RationalTime::integer(1)),
        );
        assert!(matches!(err, Err(DistanceError::IncompatibleFamilies(..))));
    }
}
