//! Exact symbolic computation in representation rings of connected reductive
//! groups, at desk scale.
//!
//! The crate models a group combinatorially by its root datum, its character
//! ring `R(T)` by Laurent polynomials with cyclotomic coefficients, and
//! completions of representation rings at torsion points by truncated jets.
//! On top of that it implements twisted induction between equal-rank
//! subgroups, the Atiyah-Bott fixed-point pushforward on `G/P`, twisting by
//! a central element, and the Chern-character map into truncated invariant
//! rings, together with verification suites that machine-check the relevant
//! identities exactly.

pub mod completion;
pub mod cyclotomic;
pub mod error;
pub mod induction;
pub mod laurent;
pub mod linalg;
pub mod rep;
pub mod report;
pub mod root_datum;
pub mod suites;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, RationalFn};
pub use rep::{VirtualCharacter, WeightMultiset};
pub use report::{CaseResult, GradedReport, VerificationReport};
pub use root_datum::{RootDatum, SubDatum, SubKind, TorsionPoint, WeylElement};
pub use completion::TruncatedSeries;
