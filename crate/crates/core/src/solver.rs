//! Constructive fixed points of strictly contracting functions.
//!
//! The solver iterates `Φ F = λa. F(a) ⊓ F(F(a))` from the post-fixed point
//! `Φ F (seed)`. Successive iterates form an ascending chain in the derived
//! order; a limit stage takes the supremum of the chain built so far. The
//! ordinal height of the carrier is replaced by an explicit stage budget.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::distance::Distance;
use crate::gus::{derived_order, ChainError, UltrametricSemilattice};

/// A named total function on a carrier.
pub struct Endofunction<E> {
    name: String,
    apply: Arc<dyn Fn(&E) -> E + Send + Sync>,
}

impl<E> Clone for Endofunction<E> {
    fn clone(&self) -> Self {
        Endofunction {
            name: self.name.clone(),
            apply: Arc::clone(&self.apply),
        }
    }
}

impl<E> fmt::Debug for Endofunction<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Endofunction")
            .field("name", &self.name)
            .finish()
    }
}

impl<E: 'static> Endofunction<E> {
    pub fn new(name: impl Into<String>, apply: impl Fn(&E) -> E + Send + Sync + 'static) -> Self {
        Endofunction {
            name: name.into(),
            apply: Arc::new(apply),
        }
    }

    pub fn identity() -> Self
    where
        E: Clone,
    {
        Endofunction::new("identity", |a: &E| a.clone())
    }

    pub fn constant(value: E) -> Self
    where
        E: Clone + Send + Sync,
    {
        Endofunction::new("constant", move |_: &E| value.clone())
    }
}

impl<E> Endofunction<E> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, a: &E) -> E {
        (self.apply)(a)
    }
}

/// `(Φ F)(a) = F(a) ⊓ F(F(a))`.
pub fn phi<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    a: &S::Elem,
) -> S::Elem {
    let fa = f.apply(a);
    let ffa = f.apply(&fa);
    space.meet(&fa, &ffa)
}

/// `a ⊑ F(a)`.
pub fn is_post_fixed<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    a: &S::Elem,
) -> bool {
    derived_order(space, a, &f.apply(a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageLabel {
    Successor(usize),
    Limit,
}

impl fmt::Display for StageLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageLabel::Successor(n) => write!(f, "{n}"),
            StageLabel::Limit => f.write_str("limit"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage<E> {
    pub label: StageLabel,
    pub element: E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    BudgetExhausted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Converged => "Converged",
            Verdict::BudgetExhausted => "BudgetExhausted",
        })
    }
}

/// Why an iteration stopped without converging.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    /// The stage budget ran out.
    StageBudget,
    /// `F` produced an element outside the representable carrier (for
    /// example a sequence longer than the depth cap).
    Unrepresentable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationTrace<E> {
    pub stages: Vec<Stage<E>>,
    pub verdict: Verdict,
    pub fixed_point: Option<E>,
    pub exhaustion: Option<Exhaustion>,
}

impl<E: Clone + Eq> IterationTrace<E> {
    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.stages.iter().map(|s| &s.element)
    }

    /// Whether consecutive stages ascend in the derived order.
    pub fn is_ascending<S>(&self, space: &S) -> bool
    where
        S: UltrametricSemilattice<Elem = E> + ?Sized,
    {
        self.stages
            .windows(2)
            .all(|w| derived_order(space, &w[0].element, &w[1].element))
    }

    /// One line per stage, `stage <n|limit> <element>`, then
    /// `verdict <Converged|BudgetExhausted>`.
    pub fn render<S>(&self, space: &S) -> String
    where
        S: UltrametricSemilattice<Elem = E> + ?Sized,
    {
        let mut out = String::new();
        for stage in &self.stages {
            out.push_str(&format!(
                "stage {} {}\n",
                stage.label,
                space.render(&stage.element)
            ));
        }
        out.push_str(&format!("verdict {}\n", self.verdict));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixResult<E> {
    pub fixed_point: E,
    pub trace: IterationTrace<E>,
    /// `F(fixed_point) = fixed_point`. False only when `F` stutters at a
    /// fixed point of `Φ F`, which a function strictly contracting on orbits
    /// never does.
    pub f_fixed_check: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError<E: fmt::Debug> {
    #[error("stage budget must be at least 1")]
    ZeroBudget,
    #[error("no convergence within the stage budget ({reason:?})")]
    BudgetExhausted {
        trace: IterationTrace<E>,
        reason: Exhaustion,
    },
    #[error("the instance cannot take the required limit: {source}")]
    ChainSupremumUnavailable {
        trace: IterationTrace<E>,
        source: ChainError,
    },
    #[error("the set of post-fixed points is not directed")]
    NotDirected,
    #[error("the induction witness does not satisfy the property")]
    WitnessOutsideProperty,
}

impl<E: fmt::Debug> SolveError<E> {
    /// The partial trace, where the failure produced one.
    pub fn trace(&self) -> Option<&IterationTrace<E>> {
        match self {
            SolveError::BudgetExhausted { trace, .. }
            | SolveError::ChainSupremumUnavailable { trace, .. } => Some(trace),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// Maximum number of recorded stages, limit stages included.
    pub budget: usize,
    /// Insert a limit stage after this many successor stages without
    /// convergence.
    pub limit_every: Option<usize>,
}

impl SolveConfig {
    pub fn with_budget(budget: usize) -> Self {
        SolveConfig {
            budget,
            limit_every: None,
        }
    }

    pub fn limit_every(mut self, successors: usize) -> Self {
        self.limit_every = Some(successors.max(1));
        self
    }
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig::with_budget(1024)
    }
}

/// Builds `fix F` from `seed`.
///
/// `F` is expected to be contracting and strictly contracting on orbits;
/// this is not checked. A function violating the hypotheses shows up as
/// [`SolveError::BudgetExhausted`] or as `f_fixed_check == false`.
pub fn solve_fixed_point<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    seed: &S::Elem,
    config: SolveConfig,
) -> Result<FixResult<S::Elem>, SolveError<S::Elem>> {
    if config.budget == 0 {
        return Err(SolveError::ZeroBudget);
    }
    let mut stages: Vec<Stage<S::Elem>> = Vec::new();
    let exhausted = |stages: Vec<Stage<S::Elem>>, reason| SolveError::BudgetExhausted {
        trace: IterationTrace {
            stages,
            verdict: Verdict::BudgetExhausted,
            fixed_point: None,
            exhaustion: Some(reason),
        },
        reason,
    };

    // One Φ step; None when F leaves the representable carrier.
    let step = |a: &S::Elem| -> Option<(S::Elem, S::Elem)> {
        let fa = f.apply(a);
        if !space.contains(&fa) {
            return None;
        }
        let ffa = f.apply(&fa);
        if !space.contains(&ffa) {
            return None;
        }
        Some((space.meet(&fa, &ffa), fa))
    };

    let Some((mut current, _)) = step(seed) else {
        return Err(exhausted(stages, Exhaustion::Unrepresentable));
    };
    stages.push(Stage {
        label: StageLabel::Successor(0),
        element: current.clone(),
    });
    let mut since_limit = 0usize;

    loop {
        let Some((next, f_current)) = step(&current) else {
            return Err(exhausted(stages, Exhaustion::Unrepresentable));
        };
        if next == current {
            let f_fixed_check = f_current == current;
            let trace = IterationTrace {
                stages,
                verdict: Verdict::Converged,
                fixed_point: Some(current.clone()),
                exhaustion: None,
            };
            return Ok(FixResult {
                fixed_point: current,
                trace,
                f_fixed_check,
            });
        }
        if stages.len() >= config.budget {
            return Err(exhausted(stages, Exhaustion::StageBudget));
        }
        stages.push(Stage {
            label: StageLabel::Successor(stages.len()),
            element: next.clone(),
        });
        current = next;
        since_limit += 1;

        if config.limit_every.is_some_and(|k| since_limit >= k) {
            if stages.len() >= config.budget {
                return Err(exhausted(stages, Exhaustion::StageBudget));
            }
            let chain: Vec<S::Elem> = stages.iter().map(|s| s.element.clone()).collect();
            match space.sup_chain(&chain) {
                Ok(sup) => {
                    stages.push(Stage {
                        label: StageLabel::Limit,
                        element: sup.clone(),
                    });
                    current = sup;
                    since_limit = 0;
                }
                Err(source) => {
                    let trace = IterationTrace {
                        stages,
                        verdict: Verdict::BudgetExhausted,
                        fixed_point: None,
                        exhaustion: None,
                    };
                    return Err(SolveError::ChainSupremumUnavailable { trace, source });
                }
            }
        }
    }
}

/// `fix F` as the least upper bound of all post-fixed points, computed by
/// enumerating a finite carrier. For a finite directed set this is its
/// maximum.
pub fn fix_via_postfixed_supremum<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    carrier: &[S::Elem],
) -> Result<S::Elem, SolveError<S::Elem>> {
    let post: Vec<&S::Elem> = carrier
        .iter()
        .filter(|a| is_post_fixed(space, f, a))
        .collect();
    // If a greatest element exists the sweep lands on it; the second pass
    // rejects every other outcome.
    let mut top = *post.first().ok_or(SolveError::NotDirected)?;
    for p in &post[1..] {
        if derived_order(space, top, p) {
            top = p;
        }
    }
    if post.iter().all(|p| derived_order(space, p, top)) {
        Ok(top.clone())
    } else {
        Err(SolveError::NotDirected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionViolation<E> {
    pub a1: E,
    pub a2: E,
    /// `d(a1, a2)`.
    pub before: Distance,
    /// `d(F(a1), F(a2))`.
    pub after: Distance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport<E> {
    pub pairs_tested: usize,
    pub violations: Vec<ContractionViolation<E>>,
}

impl<E> ContractionReport<E> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CheckError {
    #[error("the sample is empty")]
    EmptySample,
    #[error("orbit budget must be at least 1")]
    ZeroBudget,
}

fn check_pairs<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    pairs: &[(S::Elem, S::Elem)],
    strict: bool,
) -> Result<ContractionReport<S::Elem>, CheckError> {
    if pairs.is_empty() {
        return Err(CheckError::EmptySample);
    }
    let mut violations = Vec::new();
    for (a1, a2) in pairs {
        if strict && a1 == a2 {
            continue;
        }
        let before = space.distance(a1, a2);
        let after = space.distance(&f.apply(a1), &f.apply(a2));
        let ok = if strict {
            space.distance_lt(&after, &before)
        } else {
            space.distance_leq(&after, &before)
        };
        if !ok {
            violations.push(ContractionViolation {
                a1: a1.clone(),
                a2: a2.clone(),
                before,
                after,
            });
        }
    }
    Ok(ContractionReport {
        pairs_tested: pairs.len(),
        violations,
    })
}

/// Pairs with `d(F(a1), F(a2)) ≰ d(a1, a2)`.
pub fn check_contracting<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    pairs: &[(S::Elem, S::Elem)],
) -> Result<ContractionReport<S::Elem>, CheckError> {
    check_pairs(space, f, pairs, false)
}

/// Pairs `a1 ≠ a2` with `d(F(a1), F(a2)) ≮ d(a1, a2)`.
pub fn check_strictly_contracting<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    pairs: &[(S::Elem, S::Elem)],
) -> Result<ContractionReport<S::Elem>, CheckError> {
    check_pairs(space, f, pairs, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitViolation<E> {
    pub seed: E,
    /// Number of applications of `F` from the seed to `point`.
    pub step: usize,
    pub point: E,
    /// `d(a, F(a))`.
    pub before: Distance,
    /// `d(F(a), F(F(a)))`.
    pub after: Distance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport<E> {
    pub seeds_tested: usize,
    pub violations: Vec<OrbitViolation<E>>,
}

impl<E> OrbitReport<E> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Walks each orbit `a, F(a), F(F(a)), …` for up to `budget` steps and
/// requires `d(F(a), F(F(a))) < d(a, F(a))` whenever `a ≠ F(a)`.
pub fn check_strictly_contracting_on_orbits<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    seeds: &[S::Elem],
    budget: usize,
) -> Result<OrbitReport<S::Elem>, CheckError> {
    if budget == 0 {
        return Err(CheckError::ZeroBudget);
    }
    let mut violations = Vec::new();
    for seed in seeds {
        let mut point = seed.clone();
        let mut image = f.apply(&point);
        for step in 0..budget {
            if point == image {
                break;
            }
            let next = f.apply(&image);
            let before = space.distance(&point, &image);
            let after = space.distance(&image, &next);
            if !space.distance_lt(&after, &before) {
                violations.push(OrbitViolation {
                    seed: seed.clone(),
                    step,
                    point: point.clone(),
                    before,
                    after,
                });
                break;
            }
            point = image;
            image = next;
        }
    }
    Ok(OrbitReport {
        seeds_tested: seeds.len(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InductionVerdict<E> {
    /// The property held at every stage, the fixed point included.
    Holds { fixed_point: E },
    /// First stage outside the property. Stage 0 is the witness; stage `k`
    /// is the `k`-th recorded iterate after it.
    FailsAt {
        stage: usize,
        label: StageLabel,
        element: E,
    },
}

/// Runs the iteration from `witness` and checks the property at every stage,
/// limit stages included, ending with `fix F` itself.
pub fn check_induction_principle<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    f: &Endofunction<S::Elem>,
    property: &dyn Fn(&S::Elem) -> bool,
    witness: &S::Elem,
    config: SolveConfig,
) -> Result<InductionVerdict<S::Elem>, SolveError<S::Elem>> {
    if !property(witness) {
        return Err(SolveError::WitnessOutsideProperty);
    }
    let result = solve_fixed_point(space, f, witness, config)?;
    for (i, stage) in result.trace.stages.iter().enumerate() {
        if !property(&stage.element) {
            return Ok(InductionVerdict::FailsAt {
                stage: i + 1,
                label: stage.label,
                element: stage.element.clone(),
            });
        }
    }
    Ok(InductionVerdict::Holds {
        fixed_point: result.fixed_point,
    })
}

/// All unordered pairs (diagonal included) of a finite sample.
pub fn all_pairs<E: Clone>(elements: &[E]) -> Vec<(E, E)> {
    let mut pairs = Vec::with_capacity(elements.len() * (elements.len() + 1) / 2);
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i..] {
            pairs.push((a.clone(), b.clone()));
        }
    }
    pairs
}

/// `n` seeded random pairs from the instance sampler.
pub fn sample_pairs<S: UltrametricSemilattice + ?Sized>(
    space: &S,
    n: usize,
    seed: u64,
) -> Vec<(S::Elem, S::Elem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (space.sample(&mut rng), space.sample(&mut rng)))
        .collect()
}

/// Every fixed point of `F` in a finite carrier.
pub fn exhaustive_fixed_points<E: Clone + Eq + 'static>(
    f: &Endofunction<E>,
    carrier: &[E],
) -> Vec<E> {
    carrier
        .iter()
        .filter(|a| f.apply(a) == **a)
        .cloned()
        .collect()
}
