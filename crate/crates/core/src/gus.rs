//! The generalized ultrametric semilattice interface.

use std::fmt::Debug;

use rand::RngCore;
use thiserror::Error;

use crate::distance::Distance;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("empty chain has no supremum in this carrier")]
    Empty,
    #[error("not an ascending chain: element {index} is not below element {}", index + 1)]
    NotAChain { index: usize },
}

/// A realization of the two-sorted signature: a carrier with a meet, a
/// distance into a pointed ordered set, and the order on that set.
///
/// Elements are compared by structural equality of their canonical forms,
/// so every implementation must keep its element type canonical.
pub trait UltrametricSemilattice {
    type Elem: Clone + Eq + Debug;

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> Distance;

    /// The order on the distance set.
    ///
    /// # Panics
    ///
    /// The default implementation panics when handed distances from two
    /// different families, which a well-formed instance never produces.
    fn distance_leq(&self, d1: &Distance, d2: &Distance) -> bool {
        d1.leq(d2)
            .expect("instance produced distances from two families")
    }

    fn distance_lt(&self, d1: &Distance, d2: &Distance) -> bool {
        self.distance_leq(d1, d2) && d1 != d2
    }

    /// The least element of the distance set.
    fn zero(&self) -> Distance {
        Distance::Zero
    }

    /// Draws a carrier element.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// The designated bottom-most element, used as the default solver seed.
    fn bottom(&self) -> Self::Elem;

    /// Whether `a` is a member of the (possibly truncated) carrier.
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    /// Canonical one-line rendering.
    fn render(&self, a: &Self::Elem) -> String;

    /// Least upper bound of a finite ascending chain: its last element, once
    /// every adjacent pair has been checked against the derived order.
    fn sup_chain(&self, chain: &[Self::Elem]) -> Result<Self::Elem, ChainError> {
        for (index, pair) in chain.windows(2).enumerate() {
            if !derived_order(self, &pair[0], &pair[1]) {
                return Err(ChainError::NotAChain { index });
            }
        }
        chain.last().cloned().ok_or(ChainError::Empty)
    }
}

/// `a1 ⊑ a2`, recovered from the meet: `a1 ⊓ a2 = a1`.
pub fn derived_order<S>(space: &S, a1: &S::Elem, a2: &S::Elem) -> bool
where
    S: UltrametricSemilattice + ?Sized,
{
    space.meet(a1, a2) == *a1
}

/// Strict part of [`derived_order`].
pub fn derived_lt<S>(space: &S, a1: &S::Elem, a2: &S::Elem) -> bool
where
    S: UltrametricSemilattice + ?Sized,
{
    a1 != a2 && derived_order(space, a1, a2)
}
