//! Finite sequences over a finite alphabet: longest-common-prefix meet and
//! the Baire-style distance `2^-n`, `n` the first index of disagreement.

use std::fmt;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::distance::Distance;
use crate::gus::{ChainError, UltrametricSemilattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Seq(Vec<char>);

impl Seq {
    pub fn new(items: Vec<char>) -> Self {
        Seq(items)
    }

    pub fn empty() -> Self {
        Seq(Vec::new())
    }

    pub fn items(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Seq) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<&str> for Seq {
    fn from(s: &str) -> Self {
        Seq(s.chars().collect())
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        f.write_str("\"")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("the alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(char),
    #[error("length {len} exceeds the depth cap {cap}")]
    DepthCapExceeded { len: usize, cap: usize },
}

fn common_prefix_len(s1: &Seq, s2: &Seq) -> usize {
    s1.0.iter().zip(&s2.0).take_while(|(a, b)| a == b).count()
}

/// Longest common prefix.
pub fn seq_meet(s1: &Seq, s2: &Seq) -> Seq {
    Seq(s1.0[..common_prefix_len(s1, s2)].to_vec())
}

/// `Zero` if equal; otherwise `Level(n)` with `n` the least index where the
/// sequences differ, a missing position counting as a difference.
pub fn seq_distance(s1: &Seq, s2: &Seq) -> Distance {
    if s1 == s2 {
        Distance::Zero
    } else {
        Distance::index(common_prefix_len(s1, s2) as u64)
    }
}

/// Maximum of a finite prefix chain.
pub fn seq_sup_chain(chain: &[Seq]) -> Result<Seq, ChainError> {
    for (index, w) in chain.windows(2).enumerate() {
        if !w[0].is_prefix_of(&w[1]) {
            return Err(ChainError::NotAChain { index });
        }
    }
    chain.last().cloned().ok_or(ChainError::Empty)
}

/// The carrier of sequences of length at most `depth_cap` over `alphabet`.
#[derive(Clone, Debug)]
pub struct SeqSpace {
    alphabet: Vec<char>,
    depth_cap: usize,
}

impl SeqSpace {
    pub fn new(alphabet: &[char], depth_cap: usize) -> Result<Self, SeqError> {
        if alphabet.is_empty() {
            return Err(SeqError::EmptyAlphabet);
        }
        let mut alphabet = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        Ok(SeqSpace {
            alphabet,
            depth_cap,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    /// A validated carrier element.
    pub fn seq(&self, text: &str) -> Result<Seq, SeqError> {
        let s = Seq::from(text);
        if let Some(&c) = s.0.iter().find(|c| !self.alphabet.contains(c)) {
            return Err(SeqError::UnknownSymbol(c));
        }
        if s.len() > self.depth_cap {
            return Err(SeqError::DepthCapExceeded {
                len: s.len(),
                cap: self.depth_cap,
            });
        }
        Ok(s)
    }

    /// Every sequence in the carrier, shortest first.
    pub fn enumerate(&self) -> Vec<Seq> {
        let mut all = vec![Seq::empty()];
        let mut frontier = vec![Seq::empty()];
        for _ in 0..self.depth_cap {
            let mut next = Vec::new();
            for s in &frontier {
                for &c in &self.alphabet {
                    let mut items = s.0.clone();
                    items.push(c);
                    next.push(Seq(items));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

impl UltrametricSemilattice for SeqSpace {
    type Elem = Seq;

    fn meet(&self, a: &Seq, b: &Seq) -> Seq {
        seq_meet(a, b)
    }

    fn distance(&self, a: &Seq, b: &Seq) -> Distance {
        seq_distance(a, b)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Seq {
        let len = rng.random_range(0..=self.depth_cap);
        Seq((0..len)
            .map(|_| self.alphabet[rng.random_range(0..self.alphabet.len())])
            .collect())
    }

    fn bottom(&self) -> Seq {
        Seq::empty()
    }

    fn contains(&self, a: &Seq) -> bool {
        a.len() <= self.depth_cap && a.0.iter().all(|c| self.alphabet.contains(c))
    }

    fn render(&self, a: &Seq) -> String {
        a.to_string()
    }

    fn sup_chain(&self, chain: &[Seq]) -> Result<Seq, ChainError> {
        seq_sup_chain(chain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{audit_exhaustive, derived_order_violations};
    use crate::gus::derived_order;

    fn s(text: &str) -> Seq {
        Seq::from(text)
    }

    #[test]
    fn meet_examples() {
        assert_eq!(seq_meet(&s("abc"), &s("abd")), s("ab"));
        assert_eq!(seq_meet(&s("abc"), &s("abc")), s("abc"));
        assert_eq!(seq_meet(&s(""), &s("abc")), s(""));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(seq_distance(&s("abc"), &s("abd")), Distance::index(2));
        assert_eq!(seq_distance(&s("ab"), &s("ab")), Distance::Zero);
        assert_eq!(seq_distance(&s("ab"), &s("abz")), Distance::index(2));
        assert_eq!(seq_distance(&s(""), &s("a")), Distance::index(0));
    }

    #[test]
    fn sup_chain_examples() {
        assert_eq!(seq_sup_chain(&[s(""), s("a"), s("ab")]), Ok(s("ab")));
        assert_eq!(seq_sup_chain(&[s("a")]), Ok(s("a")));
        assert_eq!(
            seq_sup_chain(&[s("a"), s("b")]),
            Err(ChainError::NotAChain { index: 0 })
        );
        assert_eq!(seq_sup_chain(&[]), Err(ChainError::Empty));
    }

    #[test]
    fn derived_order_is_prefix() {
        let space = SeqSpace::new(&['a', 'b', 'c'], 3).unwrap();
        assert!(derived_order(&space, &s("ab"), &s("abc")));
        assert!(!derived_order(&space, &s("abc"), &s("ab")));
        assert!(derived_order(&space, &s("abc"), &s("abc")));
    }

    #[test]
    fn validation() {
        let space = SeqSpace::new(&['a', 'b'], 2).unwrap();
        assert_eq!(space.seq("ab"), Ok(s("ab")));
        assert_eq!(space.seq("ax"), Err(SeqError::UnknownSymbol('x')));
        assert_eq!(
            space.seq("aba"),
            Err(SeqError::DepthCapExceeded { len: 3, cap: 2 })
        );
        assert_eq!(SeqSpace::new(&[], 2).unwrap_err(), SeqError::EmptyAlphabet);
        assert!(!space.contains(&s("aaa")));
    }

    #[test]
    fn enumeration_size() {
        let space = SeqSpace::new(&['a', 'b'], 3).unwrap();
        // 1 + 2 + 4 + 8
        assert_eq!(space.enumerate().len(), 15);
    }

    #[test]
    fn exhaustive_axioms_length_three_binary() {
        let space = SeqSpace::new(&['a', 'b'], 3).unwrap();
        let all = space.enumerate();
        let report = audit_exhaustive(&space, &all);
        assert_eq!(report.samples_tested, 15 * 15 * 15);
        assert!(report.is_clean(), "{}", report.render(&space));
        assert!(derived_order_violations(&space, &all).is_empty());
    }
}
