//! Exact generalized Drazin inverses over the Gaussian rationals.
//!
//! [`drazin`] is the ground truth. The additive formulas ([`additive`]), the
//! 2x2 block constructions ([`block`]) and the Schur-condition perturbation
//! results ([`perturbation`]) all compute the same inverse along a different
//! route, checking each intermediate identity as they go. [`generate`] builds
//! seeded instances for every hypothesis set and [`suite`] compares the
//! routes against the oracle.

pub mod additive;
pub mod block;
pub mod case;
pub mod drazin;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod matrix;
pub mod perturbation;
pub mod report;
pub mod scalar;
pub mod suite;

pub use additive::DerivationTrace;
pub use block::BlockSpec;
pub use case::{Case, Family};
pub use drazin::{drazin, drazin_inverse, index, is_nilpotent, verify_axioms, DrazinTriple};
pub use error::{Error, Result};
pub use generate::{GenRecipe, Instance, InstanceBundle, Nontriviality, SplitMix64};
pub use matrix::Matrix;
pub use perturbation::SchurSpec;
pub use report::{Condition, ConditionReport};
pub use scalar::GaussianRational;
