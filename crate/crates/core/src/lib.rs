//! Exact invariants of Seifert rational homology spheres with negative
//! orbifold Euler number: Casson-Walker invariant, `K^2 + #V`, the
//! Dolgachev-Pinkham invariant, Reidemeister-Turaev torsion for every
//! spin^c structure and the modified Seiberg-Witten invariant.
//!
//! All arithmetic is exact. Torsion values come from Fourier sums over the
//! character group evaluated in cyclotomic fields, and are checked against a
//! closed form built from Dedekind sums.

pub mod arith;
pub mod batch;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod plumbing;
pub mod seifert;
pub mod torsion;

pub use arith::Rational;
pub use error::{Error, Result};
pub use exec::ExecMode;
pub use group::{build_group, AbelianGroup, Character, GroupElement};
pub use invariants::{compute_report, verify_identity, IdentityCheck, InvariantReport};
pub use seifert::{normalize, SeifertData, UnnormalizedSeifert};
pub use torsion::SpincStructure;
