//! Exact computational algebra for finite hypervector spaces and the bipolar
//! fuzzy soft sets defined over them.
//!
//! Everything is table driven: a [`HyperVectorSpace`] is an abelian group
//! table, a finite field and an external hyperoperation table sending each
//! (scalar, vector) pair to a non-empty set of vectors. Membership grades are
//! exact [`Rational`]s, so every sup/inf, containment and equivalence check
//! is decided without tolerance.
//!
//! Module map:
//!
//! - [`hyper`]: fields, spaces, axiom checking, subhyperspaces and spans.
//! - [`bfs`]: bipolar fuzzy soft sets, their operation calculus and the five
//!   equivalent characterizations of a bfs-hvs.
//! - [`construct`]: characteristic sets, level promotion, the generated
//!   bfs-hvs and the two normalizations.
//! - [`dsl`]: the `.hvs` text format.
//! - [`oracle`]: seeded generation, the brute-force minimality oracle and
//!   the equivalence suite.

pub mod bfs;
pub mod construct;
pub mod dsl;
mod error;
pub mod hyper;
pub mod oracle;
mod rational;

pub use bfs::{BipolarFuzzySet, BipolarFuzzySoftSet, LevelSoftSet};
pub use error::{Error, Result};
pub use hyper::{AxiomReport, FiniteField, HyperVectorSpace, VectorSubset};
pub use rational::{format_rational, parse_rational, Rational};
