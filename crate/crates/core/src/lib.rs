//! Generalized ultrametric semilattices and the constructive fixed-point
//! theory of strictly contracting functions on them.
//!
//! The crate is organised around the [`UltrametricSemilattice`] trait. Three
//! instances ship with it:
//!
//! * [`seqspace`]: finite sequences with the longest-common-prefix meet and
//!   the Baire-style distance;
//! * [`designal`]: discrete-event signals with exact rational timestamps on a
//!   bounded horizon;
//! * [`herbrand`]: Herbrand interpretations of a finite base under a level
//!   mapping.
//!
//! [`solver`] builds fixed points by iterating `a ↦ F(a) ⊓ F(F(a))` and
//! provides the contraction checkers and the fixed-point induction harness.
//! [`lpfront`] and [`defeedback`] are the two applications: supported models
//! of locally hierarchical normal logic programs, and strictly causal
//! discrete-event components closed in feedback.

pub mod audit;
pub mod defeedback;
pub mod designal;
pub mod distance;
pub mod gus;
pub mod herbrand;
pub mod lpfront;
pub mod seqspace;
pub mod solver;
pub mod time;

pub use audit::{audit_axioms, audit_exhaustive, AxiomId, AxiomReport, Violation};
pub use distance::{distance_leq, Distance, DistanceError, Level};
pub use gus::{derived_order, ChainError, UltrametricSemilattice};
pub use solver::{
    phi, solve_fixed_point, Endofunction, FixResult, IterationTrace, SolveConfig, SolveError,
    StageLabel, Verdict,
};
pub use time::RationalTime;
