//! Good integers and the hulls of abelian codes.
//!
//! For coprime nonzero integers `a` and `b`, a positive integer `ℓ` is *good*
//! when it divides `a^k + b^k` for some `k >= 1`. This crate classifies
//! integers as bad, oddly-good or evenly-good ([`goodness`]), models finite
//! abelian groups and their cyclotomic classes ([`abelian`]), counts the
//! self-paired part of those classes in closed form ([`counting`]), and uses
//! the counts to compute the exact average dimension of Euclidean and
//! Hermitian hulls of abelian codes ([`hull`]).
//!
//! Every closed form has an enumeration-based counterpart, and [`verify`]
//! sweeps them against each other.
//!
//! ```
//! use goodint::{avg_hull, AbelianGroup, InnerProduct};
//!
//! let z3: AbelianGroup = "3".parse().unwrap();
//! let summary = avg_hull(&z3, 2, 1, 1, InnerProduct::Euclidean).unwrap();
//! assert_eq!(summary.average, goodint::Rational::from_integer(1));
//! ```

pub mod abelian;
pub mod arith;
pub mod counting;
mod error;
pub mod goodness;
pub mod hull;
pub mod verify;

pub use abelian::{AbelianGroup, ClassPairing, CycClass, GroupElement, InnerProduct, Pairing};
pub use arith::{Factorization, TwoAdicSplit};
pub use counting::{Bounds, Classifier, PartitionShape, SemigroupDecomposition};
pub use error::{Error, Result};
pub use goodness::{GoodnessClass, GoodnessQuery, GoodnessVerdict, NecessaryProfile, Parity};
pub use hull::{avg_hull, avg_hull_bruteforce, hull_dim, CodeProfile, HullSummary, Rational};
