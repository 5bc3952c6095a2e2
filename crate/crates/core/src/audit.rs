//! Randomized and exhaustive audits of the generalized ultrametric
//! semilattice axioms.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::distance::Distance;
use crate::gus::{derived_order, UltrametricSemilattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    Associativity,
    Commutativity,
    Idempotence,
    /// Reflexivity, antisymmetry and transitivity of the distance order on
    /// the pairwise distances of the witness.
    DistanceOrder,
    /// The zero distance lies below every pairwise distance of the witness.
    Pointedness,
    IdentityOfIndiscernibles,
    Symmetry,
    UltrametricInequality,
    /// `d(a1,a2) ≤ d(a1,a3)` implies `(a1 ⊓ a3) ⊓ (a1 ⊓ a2) = a1 ⊓ a3`.
    CoordinationMeet,
    /// `d(a1 ⊓ a2, a1 ⊓ a3) ≤ d(a2, a3)`.
    CoordinationDistance,
}

impl AxiomId {
    pub fn name(&self) -> &'static str {
        match self {
            AxiomId::Associativity => "associativity",
            AxiomId::Commutativity => "commutativity",
            AxiomId::Idempotence => "idempotence",
            AxiomId::DistanceOrder => "distance-order",
            AxiomId::Pointedness => "pointedness",
            AxiomId::IdentityOfIndiscernibles => "identity-of-indiscernibles",
            AxiomId::Symmetry => "symmetry",
            AxiomId::UltrametricInequality => "ultrametric-inequality",
            AxiomId::CoordinationMeet => "coordination-4a",
            AxiomId::CoordinationDistance => "coordination-4b",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed axiom instance. `witness` holds one to three elements depending
/// on the arity of the axiom; `pivot` is the distance `p` for the
/// ultrametric inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<E> {
    pub axiom: AxiomId,
    pub witness: Vec<E>,
    pub pivot: Option<Distance>,
}

impl<E: Clone> Violation<E> {
    /// Re-evaluates the axiom on the recorded witness; `true` means it still
    /// fails.
    pub fn replay<S>(&self, space: &S) -> bool
    where
        S: UltrametricSemilattice<Elem = E> + ?Sized,
    {
        !holds(space, self.axiom, &self.witness, self.pivot.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport<E> {
    pub samples_tested: usize,
    pub violations: Vec<Violation<E>>,
}

impl<E> AxiomReport<E> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: AxiomReport<E>) -> AxiomReport<E> {
        self.samples_tested += other.samples_tested;
        self.violations.extend(other.violations);
        self
    }

    pub fn render<S>(&self, space: &S) -> String
    where
        S: UltrametricSemilattice<Elem = E> + ?Sized,
    {
        let mut out = format!(
            "samples {}\nviolations {}\n",
            self.samples_tested,
            self.violations.len()
        );
        for v in &self.violations {
            out.push_str("violation ");
            out.push_str(v.axiom.name());
            for w in &v.witness {
                out.push(' ');
                out.push_str(&space.render(w));
            }
            if let Some(p) = &v.pivot {
                out.push_str(&format!(" p={p}"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AuditError {
    #[error("an audit needs at least one sample")]
    NoSamples,
}

/// Evaluates one axiom on a witness.
pub fn holds<S>(space: &S, axiom: AxiomId, witness: &[S::Elem], pivot: Option<&Distance>) -> bool
where
    S: UltrametricSemilattice + ?Sized,
{
    let m = |x: &S::Elem, y: &S::Elem| space.meet(x, y);
    let d = |x: &S::Elem, y: &S::Elem| space.distance(x, y);
    let leq = |x: &Distance, y: &Distance| space.distance_leq(x, y);
    let at = |i: usize| &witness[i.min(witness.len() - 1)];
    match axiom {
        AxiomId::Associativity => {
            let (a1, a2, a3) = (at(0), at(1), at(2));
            m(&m(a1, a2), a3) == m(a1, &m(a2, a3))
        }
        AxiomId::Commutativity => m(at(0), at(1)) == m(at(1), at(0)),
        AxiomId::Idempotence => m(at(0), at(0)) == *at(0),
        AxiomId::DistanceOrder => {
            let ds = [d(at(0), at(1)), d(at(1), at(2)), d(at(0), at(2))];
            ds.iter().all(|x| leq(x, x))
                && ds
                    .iter()
                    .all(|x| ds.iter().all(|y| !(leq(x, y) && leq(y, x)) || x == y))
                && ds.iter().all(|x| {
                    ds.iter()
                        .all(|y| ds.iter().all(|z| !(leq(x, y) && leq(y, z)) || leq(x, z)))
                })
        }
        AxiomId::Pointedness => {
            let zero = space.zero();
            [d(at(0), at(1)), d(at(1), at(2)), d(at(0), at(2))]
                .iter()
                .all(|x| leq(&zero, x))
        }
        AxiomId::IdentityOfIndiscernibles => (d(at(0), at(1)) == space.zero()) == (at(0) == at(1)),
        AxiomId::Symmetry => d(at(0), at(1)) == d(at(1), at(0)),
        AxiomId::UltrametricInequality => {
            let (a1, a2, a3) = (at(0), at(1), at(2));
            let p = match pivot {
                Some(p) => *p,
                None => d(a1, a3),
            };
            !(leq(&d(a1, a2), &p) && leq(&d(a2, a3), &p)) || leq(&d(a1, a3), &p)
        }
        AxiomId::CoordinationMeet => {
            let (a1, a2, a3) = (at(0), at(1), at(2));
            let m13 = m(a1, a3);
            !leq(&d(a1, a2), &d(a1, a3)) || m(&m13, &m(a1, a2)) == m13
        }
        AxiomId::CoordinationDistance => {
            let (a1, a2, a3) = (at(0), at(1), at(2));
            leq(&d(&m(a1, a2), &m(a1, a3)), &d(a2, a3))
        }
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Checks every axiom on one triple and appends the failures to `out`.
///
/// With `permute`, the ternary axioms are checked under all six orderings of
/// the triple; exhaustive audits enumerate every ordering anyway and skip it.
pub fn audit_triple<S>(
    space: &S,
    triple: [&S::Elem; 3],
    permute: bool,
    out: &mut Vec<Violation<S::Elem>>,
) where
    S: UltrametricSemilattice + ?Sized,
{
    let mut push = |axiom: AxiomId, witness: Vec<S::Elem>, pivot: Option<Distance>| {
        if !holds(space, axiom, &witness, pivot.as_ref()) {
            let v = Violation {
                axiom,
                witness,
                pivot,
            };
            if !out.contains(&v) {
                out.push(v);
            }
        }
    };
    let orders: &[[usize; 3]] = if permute {
        &PERMUTATIONS
    } else {
        &PERMUTATIONS[..1]
    };
    for order in orders {
        let t = [triple[order[0]], triple[order[1]], triple[order[2]]];
        let w = || vec![t[0].clone(), t[1].clone(), t[2].clone()];
        push(AxiomId::Idempotence, vec![t[0].clone()], None);
        push(
            AxiomId::Commutativity,
            vec![t[0].clone(), t[1].clone()],
            None,
        );
        push(AxiomId::Symmetry, vec![t[0].clone(), t[1].clone()], None);
        push(
            AxiomId::IdentityOfIndiscernibles,
            vec![t[0].clone(), t[1].clone()],
            None,
        );
        push(AxiomId::Associativity, w(), None);
        push(AxiomId::CoordinationMeet, w(), None);
        push(AxiomId::CoordinationDistance, w(), None);
        let ds = [
            space.distance(t[0], t[1]),
            space.distance(t[1], t[2]),
            space.distance(t[0], t[2]),
        ];
        for p in ds {
            push(AxiomId::UltrametricInequality, w(), Some(p));
        }
    }
    let w = vec![triple[0].clone(), triple[1].clone(), triple[2].clone()];
    push(AxiomId::DistanceOrder, w.clone(), None);
    push(AxiomId::Pointedness, w, None);
}

/// Draws `n_samples` triples from the instance sampler and checks every
/// axiom on each. Deterministic for a given seed.
pub fn audit_axioms<S>(
    space: &S,
    n_samples: usize,
    seed: u64,
) -> Result<AxiomReport<S::Elem>, AuditError>
where
    S: UltrametricSemilattice + ?Sized,
{
    if n_samples == 0 {
        return Err(AuditError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..n_samples {
        let a1 = space.sample(&mut rng);
        let a2 = space.sample(&mut rng);
        let a3 = space.sample(&mut rng);
        audit_triple(space, [&a1, &a2, &a3], true, &mut violations);
    }
    Ok(AxiomReport {
        samples_tested: n_samples,
        violations,
    })
}

/// Checks every ordered triple drawn from `elements`.
pub fn audit_exhaustive<S>(space: &S, elements: &[S::Elem]) -> AxiomReport<S::Elem>
where
    S: UltrametricSemilattice + ?Sized,
{
    let mut violations = Vec::new();
    let mut tested = 0;
    for a1 in elements {
        for a2 in elements {
            for a3 in elements {
                audit_triple(space, [a1, a2, a3], false, &mut violations);
                tested += 1;
            }
        }
    }
    AxiomReport {
        samples_tested: tested,
        violations,
    }
}

/// Checks that the derived order is a partial order on the given elements.
/// Returns the offending pairs or triples.
pub fn derived_order_violations<S>(space: &S, elements: &[S::Elem]) -> Vec<Vec<S::Elem>>
where
    S: UltrametricSemilattice + ?Sized,
{
    let le = |x: &S::Elem, y: &S::Elem| derived_order(space, x, y);
    let mut bad = Vec::new();
    for a in elements {
        if !le(a, a) {
            bad.push(vec![a.clone()]);
        }
        for b in elements {
            if le(a, b) && le(b, a) && a != b {
                bad.push(vec![a.clone(), b.clone()]);
            }
            for c in elements {
                if le(a, b) && le(b, c) && !le(a, c) {
                    bad.push(vec![a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    bad
}
