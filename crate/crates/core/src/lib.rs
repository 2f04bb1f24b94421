//! Fair division of indivisible items under arbitrary set-function utilities.
//!
//! Utilities may be non-monotone, non-additive and non-identical. The crate
//! provides exact checkers for EF, EF1 and the four EFX variants, the
//! constructive allocation procedures that are known to work in restricted
//! settings, an exhaustive search oracle, and a seeded instance generator.
//!
//! Everything is generic over a [`Scalar`] value type. The exact rational
//! instantiation ([`Rational`]) is the one the command-line front end uses;
//! `f64` and `i64` instantiations are available for experiments where exact
//! arithmetic is not required.

pub mod algorithms;
pub mod envy;
pub mod error;
pub mod fairness;
pub mod generators;
pub mod instance;
pub mod items;
pub mod oracle;
pub mod scalar;
pub mod utility;

pub use error::{Error, Result};
pub use fairness::{check_allocation, classify_envy, Criterion, EnvyKind, Verdict, Violation, Witness};
pub use instance::{Allocation, Instance, InstanceFlags};
pub use items::ItemSet;
pub use scalar::Scalar;
pub use utility::{ItemClassification, UtilityClass, UtilityFunction};

/// Exact, arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type RationalUtility = UtilityFunction<Rational>;
pub type RationalInstance = Instance<Rational>;
pub type RationalVerdict = Verdict<Rational>;
pub type RationalSolveResult = algorithms::SolveResult<Rational>;

pub type FloatUtility = UtilityFunction<f64>;
pub type FloatInstance = Instance<f64>;

pub type IntUtility = UtilityFunction<i64>;
pub type IntInstance = Instance<i64>;
