//! Exact computations with bound quiver categories, their Galois coverings and
//! the calculus of finitely presented functors.
//!
//! The crate is organised around a handful of layers:
//!
//! * [`field`] and [`matrix`] — dense exact linear algebra over `F_p` and `Q`,
//!   the substrate everything else computes on.
//! * [`quiver`] — quivers, path words, relations and bound presentations with
//!   certified admissibility, plus hom-space bases of the presented category.
//! * [`periodic`] — translation-periodic presentations of infinite covers,
//!   finite convex windows and the orbit-category construction.
//! * [`rep`], [`decomp`], [`strings`] — finite-dimensional representations,
//!   Krull–Schmidt decomposition over prime fields and string/band
//!   combinatorics for special biserial presentations.
//! * [`artheory`] — minimal projective presentations, the translate `D Tr`,
//!   Auslander–Reiten quivers, mesh presentations and translation covers.
//! * [`covering`] — push-down and pull-up along a covering, dimension
//!   identities, periodic lines, band modules and first/second kind
//!   classification.
//! * [`functor`] — cokernel presentations of functors, their hom spaces, the
//!   induced push-down on functor categories and composition length.
//! * [`parse`] — the line-oriented text format used for fixtures and
//!   serialized representations.
//!
//! Hom-space conventions are fixed once, in [`quiver`], and every other module
//! documents directions against that single choice.

pub mod artheory;
pub mod covering;
pub mod decomp;
pub mod error;
pub mod field;
pub mod functor;
pub mod matrix;
pub mod parse;
pub mod periodic;
pub mod quiver;
pub mod rep;
pub mod rng;
pub mod strings;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
