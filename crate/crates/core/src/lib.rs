//! Groupoid cardinality with signs: finite parity groupoids, simplified
//! spans between them, and the determinant computed as the homotopy
//! cardinality of a fiber of an exterior-power span.

pub mod action;
pub mod cardinality;
pub mod determinant;
pub mod document;
pub mod exterior;
pub mod group;
pub mod groupoid;
pub mod permutation;
pub mod random;
pub mod rational;
pub mod scalar;
pub mod sign;
pub mod span;

pub use group::FiniteGroup;
pub use groupoid::{Axiom, BuildError, Component, Groupoid, GroupoidBuilder, ParityGroupoid, ValidationReport};
pub use permutation::Permutation;
pub use rational::Rational;
pub use sign::Sign;
