//! Herbrand interpretations over a finite base under a level mapping.
//!
//! Two interpretations are at distance `2^-λ` (stored as `Level(λ)`) when
//! `λ` is the least level at which their membership differs. The meet keeps
//! the common atoms lying strictly below that level.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::distance::Distance;
use crate::gus::{ChainError, UltrametricSemilattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HerbrandError {
    #[error("interpretation is over a different Herbrand base")]
    BaseMismatch,
    #[error("atom `{0}` is not in the Herbrand base")]
    UnknownAtom(String),
    #[error("atom `{0}` appears twice in the level mapping")]
    DuplicateAtom(String),
    #[error("level mapping covers {levels} atoms but the base has {atoms}")]
    LevelCount { atoms: usize, levels: usize },
    #[error("base of {0} atoms is too large to enumerate")]
    BaseTooLarge(usize),
    #[error("not an ascending chain: element {index} is not below element {}", index + 1)]
    NotAChain { index: usize },
    #[error("empty chain")]
    EmptyChain,
}

/// A finite Herbrand base. Atoms are kept sorted by name, so iteration over
/// atom ids follows name order.
#[derive(Debug, PartialEq, Eq)]
pub struct Base {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
    fingerprint: u64,
}

fn fingerprint(names: &[String]) -> u64 {
    // FNV-1a
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for name in names {
        for byte in name.bytes().chain(std::iter::once(0xff)) {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    }
    hash
}

impl Base {
    pub fn new<I, S>(names: I) -> Arc<Base>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        let names: Vec<String> = set.into_iter().collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), AtomId(i as u32)))
            .collect();
        let fingerprint = fingerprint(&names);
        Arc::new(Base {
            names,
            index,
            fingerprint,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.0 as usize]
    }

    pub fn id(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> {
        (0..self.names.len() as u32).map(AtomId)
    }

    pub fn empty_interpretation(&self) -> Interpretation {
        Interpretation {
            base: self.fingerprint,
            atoms: BTreeSet::new(),
        }
    }

    pub fn interpretation<S: AsRef<str>>(
        &self,
        names: &[S],
    ) -> Result<Interpretation, HerbrandError> {
        let atoms = names
            .iter()
            .map(|n| {
                self.id(n.as_ref())
                    .ok_or_else(|| HerbrandError::UnknownAtom(n.as_ref().into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Interpretation {
            base: self.fingerprint,
            atoms,
        })
    }

    pub fn interpretation_from_ids(&self, ids: impl IntoIterator<Item = AtomId>) -> Interpretation {
        let atoms: BTreeSet<AtomId> = ids.into_iter().collect();
        debug_assert!(atoms.iter().all(|a| (a.0 as usize) < self.len()));
        Interpretation {
            base: self.fingerprint,
            atoms,
        }
    }

    /// Interpretation whose members are the set bits of `mask`.
    pub fn interpretation_from_mask(&self, mask: u64) -> Interpretation {
        self.interpretation_from_ids(self.ids().filter(|id| mask >> id.0 & 1 == 1))
    }

    /// All `2^n` subsets of the base, for `n ≤ 20`.
    pub fn all_interpretations(&self) -> Result<Vec<Interpretation>, HerbrandError> {
        if self.len() > 20 {
            return Err(HerbrandError::BaseTooLarge(self.len()));
        }
        Ok((0..1u64 << self.len())
            .map(|m| self.interpretation_from_mask(m))
            .collect())
    }

    pub fn owns(&self, i: &Interpretation) -> bool {
        i.base == self.fingerprint
    }
}

/// A set of ground atoms of one base, in canonical (sorted) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    base: u64,
    atoms: BTreeSet<AtomId>,
}

impl Interpretation {
    pub fn atoms(&self) -> &BTreeSet<AtomId> {
        &self.atoms
    }

    pub fn contains(&self, id: AtomId) -> bool {
        self.atoms.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Sorted atom names.
    pub fn names<'a>(&'a self, base: &'a Base) -> Vec<&'a str> {
        self.atoms.iter().map(|&id| base.name(id)).collect()
    }

    pub fn render(&self, base: &Base) -> String {
        format!("{{{}}}", self.names(base).join(", "))
    }
}

/// Level of every base atom; `alpha = 1 + max level` (at least 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    base: Arc<Base>,
    levels: Vec<u32>,
    alpha: u32,
}

impl LevelMap {
    pub fn new<S: Into<String>>(
        pairs: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<LevelMap, HerbrandError> {
        let pairs: Vec<(String, u32)> = pairs.into_iter().map(|(n, l)| (n.into(), l)).collect();
        let mut seen = BTreeSet::new();
        for (name, _) in &pairs {
            if !seen.insert(name.clone()) {
                return Err(HerbrandError::DuplicateAtom(name.clone()));
            }
        }
        let base = Base::new(pairs.iter().map(|(n, _)| n.clone()));
        let mut levels = vec![0; base.len()];
        for (name, level) in &pairs {
            levels[base.id(name).expect("name was inserted").0 as usize] = *level;
        }
        LevelMap::from_base(base, levels)
    }

    /// `levels[i]` is the level of atom `AtomId(i)`.
    pub fn from_base(base: Arc<Base>, levels: Vec<u32>) -> Result<LevelMap, HerbrandError> {
        if levels.len() != base.len() {
            return Err(HerbrandError::LevelCount {
                atoms: base.len(),
                levels: levels.len(),
            });
        }
        let alpha = levels.iter().max().map_or(1, |m| m + 1);
        Ok(LevelMap {
            base,
            levels,
            alpha,
        })
    }

    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }

    pub fn level(&self, id: AtomId) -> u32 {
        self.levels[id.0 as usize]
    }

    pub fn level_of(&self, name: &str) -> Option<u32> {
        self.base.id(name).map(|id| self.level(id))
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    fn check(&self, i: &Interpretation) -> Result<(), HerbrandError> {
        if self.base.owns(i) {
            Ok(())
        } else {
            Err(HerbrandError::BaseMismatch)
        }
    }

    /// Least level at which membership differs; `None` when equal.
    fn first_disagreement(&self, i1: &Interpretation, i2: &Interpretation) -> Option<u32> {
        i1.atoms
            .symmetric_difference(&i2.atoms)
            .map(|&id| self.level(id))
            .min()
    }
}

/// Common atoms `A` such that the two interpretations agree on every atom of
/// level at most `l(A)`.
pub fn herb_meet(
    levels: &LevelMap,
    i1: &Interpretation,
    i2: &Interpretation,
) -> Result<Interpretation, HerbrandError> {
    levels.check(i1)?;
    levels.check(i2)?;
    let atoms = match levels.first_disagreement(i1, i2) {
        None => i1.atoms.clone(),
        Some(cut) => i1
            .atoms
            .intersection(&i2.atoms)
            .filter(|&&id| levels.level(id) < cut)
            .copied()
            .collect(),
    };
    Ok(Interpretation {
        base: i1.base,
        atoms,
    })
}

/// `Zero` (the ordinal `alpha`) when equal, otherwise `Level(λ)` with `λ`
/// the least level of disagreement.
pub fn herb_distance(
    levels: &LevelMap,
    i1: &Interpretation,
    i2: &Interpretation,
) -> Result<Distance, HerbrandError> {
    levels.check(i1)?;
    levels.check(i2)?;
    Ok(match levels.first_disagreement(i1, i2) {
        None => Distance::Zero,
        Some(l) => Distance::index(l as u64),
    })
}

/// Maximum of a finite ascending chain.
pub fn herb_sup_chain(
    levels: &LevelMap,
    chain: &[Interpretation],
) -> Result<Interpretation, HerbrandError> {
    for (index, w) in chain.windows(2).enumerate() {
        if herb_meet(levels, &w[0], &w[1])? != w[0] {
            return Err(HerbrandError::NotAChain { index });
        }
    }
    chain.last().cloned().ok_or(HerbrandError::EmptyChain)
}

#[derive(Clone, Debug)]
pub struct HerbrandSpace {
    levels: LevelMap,
}

impl HerbrandSpace {
    pub fn new(levels: LevelMap) -> Self {
        HerbrandSpace { levels }
    }

    pub fn levels(&self) -> &LevelMap {
        &self.levels
    }

    pub fn base(&self) -> &Arc<Base> {
        self.levels.base()
    }
}

impl UltrametricSemilattice for HerbrandSpace {
    type Elem = Interpretation;

    /// # Panics
    ///
    /// On interpretations over a different base.
    fn meet(&self, a: &Interpretation, b: &Interpretation) -> Interpretation {
        herb_meet(&self.levels, a, b).expect("interpretations over this base")
    }

    fn distance(&self, a: &Interpretation, b: &Interpretation) -> Distance {
        herb_distance(&self.levels, a, b).expect("interpretations over this base")
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Interpretation {
        let base = self.base();
        base.interpretation_from_ids(base.ids().filter(|_| rng.random_bool(0.5)))
    }

    fn bottom(&self) -> Interpretation {
        self.base().empty_interpretation()
    }

    fn contains(&self, a: &Interpretation) -> bool {
        self.base().owns(a)
    }

    fn render(&self, a: &Interpretation) -> String {
        a.render(self.base())
    }

    fn sup_chain(&self, chain: &[Interpretation]) -> Result<Interpretation, ChainError> {
        herb_sup_chain(&self.levels, chain).map_err(|e| match e {
            HerbrandError::NotAChain { index } => ChainError::NotAChain { index },
            _ => ChainError::Empty,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::audit_exhaustive;

    fn qp() -> LevelMap {
        LevelMap::new([("q", 0), ("p", 1)]).unwrap()
    }

    fn interp(levels: &LevelMap, names: &[&str]) -> Interpretation {
        levels.base().interpretation(names).unwrap()
    }

    // Direct transcription of the set-builder definitions, used as an oracle.
    fn meet_by_definition(
        l: &LevelMap,
        i1: &Interpretation,
        i2: &Interpretation,
    ) -> Interpretation {
        let base = l.base();
        let agree_to = |lvl: u32| {
            base.ids()
                .filter(|&a| l.level(a) <= lvl)
                .all(|a| i1.contains(a) == i2.contains(a))
        };
        base.interpretation_from_ids(
            base.ids()
                .filter(|&a| i1.contains(a) && i2.contains(a) && agree_to(l.level(a))),
        )
    }

    fn distance_by_definition(l: &LevelMap, i1: &Interpretation, i2: &Interpretation) -> Distance {
        let base = l.base();
        // d = {β < α : agreement on every atom of level ≤ β}; its order type
        let d = (0..l.alpha())
            .filter(|&beta| {
                base.ids()
                    .filter(|&a| l.level(a) <= beta)
                    .all(|a| i1.contains(a) == i2.contains(a))
            })
            .count() as u32;
        if d == l.alpha() {
            Distance::Zero
        } else {
            Distance::index(d as u64)
        }
    }

    #[test]
    fn meet_examples() {
        let l = qp();
        let qp_ = interp(&l, &["q", "p"]);
        let q = interp(&l, &["q"]);
        assert_eq!(herb_meet(&l, &qp_, &q).unwrap(), q);
        assert_eq!(herb_meet(&l, &qp_, &qp_).unwrap(), qp_);
        let p = interp(&l, &["p"]);
        assert_eq!(herb_meet(&l, &p, &q).unwrap(), interp(&l, &[]));
    }

    #[test]
    fn distance_examples() {
        let l = qp();
        let qp_ = interp(&l, &["q", "p"]);
        let q = interp(&l, &["q"]);
        assert_eq!(herb_distance(&l, &qp_, &q).unwrap(), Distance::index(1));
        assert_eq!(herb_distance(&l, &q, &q).unwrap(), Distance::Zero);
        assert_eq!(
            herb_distance(&l, &q, &interp(&l, &[])).unwrap(),
            Distance::index(0)
        );
    }

    #[test]
    fn sup_chain_examples() {
        let l = qp();
        let chain = [interp(&l, &[]), interp(&l, &["q"]), interp(&l, &["q", "p"])];
        for w in chain.windows(2) {
            assert_eq!(herb_meet(&l, &w[0], &w[1]).unwrap(), w[0]);
        }
        assert_eq!(herb_sup_chain(&l, &chain).unwrap(), chain[2]);
        assert_eq!(herb_sup_chain(&l, &chain[1..2]).unwrap(), chain[1]);

        let flat = LevelMap::new([("q", 0), ("p", 0)]).unwrap();
        let bad = [interp(&flat, &["q"]), interp(&flat, &["p"])];
        assert_eq!(
            herb_meet(&flat, &bad[0], &bad[1]).unwrap(),
            interp(&flat, &[])
        );
        assert_eq!(
            herb_sup_chain(&flat, &bad),
            Err(HerbrandError::NotAChain { index: 0 })
        );
    }

    #[test]
    fn base_mismatch() {
        let l = qp();
        let other = Base::new(["r"]).empty_interpretation();
        let q = interp(&l, &["q"]);
        assert_eq!(herb_meet(&l, &q, &other), Err(HerbrandError::BaseMismatch));
        assert_eq!(
            herb_distance(&l, &other, &q),
            Err(HerbrandError::BaseMismatch)
        );
        assert_eq!(
            l.base().interpretation(&["r"]),
            Err(HerbrandError::UnknownAtom("r".into()))
        );
    }

    #[test]
    fn level_map_construction() {
        let l = qp();
        assert_eq!(l.alpha(), 2);
        assert_eq!(l.level_of("p"), Some(1));
        assert_eq!(l.base().names(), ["p", "q"]);
        assert!(matches!(
            LevelMap::new([("q", 0), ("q", 1)]),
            Err(HerbrandError::DuplicateAtom(_))
        ));
        assert_eq!(
            LevelMap::new(Vec::<(String, u32)>::new()).unwrap().alpha(),
            1
        );
    }

    fn all_level_maps(n: usize) -> Vec<LevelMap> {
        let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let mut maps = Vec::new();
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            let levels: Vec<(String, u32)> = names
                .iter()
                .map(|name| {
                    let l = (c % 3) as u32;
                    c /= 3;
                    (name.clone(), l)
                })
                .collect();
            maps.push(LevelMap::new(levels).unwrap());
        }
        maps
    }

    #[test]
    fn operations_match_set_builder_definitions() {
        for n in 0..=3 {
            for l in all_level_maps(n) {
                let all = l.base().all_interpretations().unwrap();
                for a in &all {
                    for b in &all {
                        assert_eq!(herb_meet(&l, a, b).unwrap(), meet_by_definition(&l, a, b));
                        assert_eq!(
                            herb_distance(&l, a, b).unwrap(),
                            distance_by_definition(&l, a, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exhaustive_axioms_small_bases() {
        for n in 0..=3 {
            for l in all_level_maps(n) {
                let space = HerbrandSpace::new(l);
                let all = space.base().all_interpretations().unwrap();
                let report = audit_exhaustive(&space, &all);
                assert!(report.is_clean(), "{}", report.render(&space));
            }
        }
    }

    #[test]
    fn render_is_sorted() {
        let l = qp();
        let i = interp(&l, &["q", "p"]);
        assert_eq!(i.render(l.base()), "{p, q}");
    }
}
