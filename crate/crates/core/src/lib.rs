//! Exact symbolic verification engine for star-product deformations of
//! group crossed products.
//!
//! The engine constructs crossed products of polynomial algebras with finite
//! diagonal abelian groups, twisted by a multiplicative two-cocycle, acts on
//! them with a q-deformed Hopf algebra of skew derivations, and mechanically
//! checks every algebraic identity involved: Hopf axioms, module-algebra
//! axioms, universal-deformation-formula identities, associativity of the
//! resulting star products, Hochschild cocycle conditions, chain-map
//! identities, and cohomological nontriviality certificates. All arithmetic
//! is exact, over cyclotomic fields Q(zeta_N) or the rational-function field
//! Q(q).

pub mod action;
pub mod check;
pub mod cli;
pub mod cohomology;
pub mod config;
pub mod crossed;
pub mod deform;
pub mod findim;
pub mod group;
pub mod hopf;
mod poly;
pub mod qcalc;
pub mod scalar;

pub use check::{CheckResult, Counterexample};
pub use scalar::{MulOrder, Scalar, ScalarField};
