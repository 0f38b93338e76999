//! Symbolic flow complexes on compact surfaces: extended orbits, the
//! recurrence hierarchy built on them, and checks of the structural theorems.

pub mod classify;
pub mod dot;
pub mod error;
pub mod extended;
pub mod format;
pub mod gallery;
pub mod model;
pub mod random;
pub mod saddle_set;
pub mod theorems;
pub mod validate;

pub use classify::{classify, ClassificationReport, Classifier, DichotomyCase, Verdict, Witness};
pub use error::{ModelError, SaddleSetFailure};
pub use extended::{
    extended_limit_cycles, extended_orbit, generalized_extended_orbit, is_extended_periodic,
    Direction, ExtendedLimitCycle, ExtendedOrbitSet, FlowIndex, Provenance,
};
pub use model::*;
pub use saddle_set::{is_isolated, is_saddle_set, validate_isolated_saddle_set};
pub use validate::{validate, ValidationReport, Violation};
