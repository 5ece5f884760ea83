//! Exact computer-algebra engine for multivariate meromorphic germs with
//! linear poles, built around partial (locality) algebraic structures.
//!
//! The crate has four public layers:
//!
//! * [`locality`] — finite partial-product structures and exhaustive checkers
//!   for the semigroup axiom hierarchy (locality, strong, refined, partial,
//!   transitive, selective-with-one-object).
//! * [`germs`] — the exact algebra of meromorphic germs at zero whose poles
//!   are products of linear forms, the orthogonal projection onto holomorphic
//!   germs, and the evaluation-at-zero renormalisation scheme.
//! * [`cones`] — lattice cones with Minkowski product, unimodular stellar
//!   subdivision, germ-valued exponential sums and integrals, and renormalised
//!   conical zeta values.
//! * [`forests`] — decorated rooted forests, the universal lift of an operated
//!   map to the forest algebra, and the exact germ-valued toy-model integrals
//!   with their renormalised values.
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals and the
//! only inexactness is jet truncation, which is tracked degree-by-degree and
//! turned into a hard error when a computation would need untrusted data.

pub mod coefficient;
pub mod cones;
pub mod forests;
pub mod germs;
pub mod inner_product;
pub mod jet;
pub mod linalg;
pub mod linear_form;
pub mod locality;

pub use coefficient::Coefficient;
pub use germs::{Germ, GermError};
pub use inner_product::InnerProduct;
pub use jet::{Jet, JetOrder};
pub use linalg::Rat;
pub use linear_form::LinearForm;
