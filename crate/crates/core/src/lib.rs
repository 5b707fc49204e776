//! Rational homotopy invariants of spaces of fibrewise self-equivalences,
//! computed exactly from a relative Sullivan model `(∧V,d) → (∧V⊗∧W,D)`.
//!
//! The pipeline is:
//!
//! - [`algebra`]: free graded-commutative algebras over Q;
//! - [`sullivan`]: relative models, validation, the split `W = W₀ ⊕ W₁`, DG morphisms;
//! - [`derivations`]: the derivation complexes and their Lie structure;
//! - [`homology`]: exact homology of those complexes, with induced brackets;
//! - [`esharp`]: the degree-zero ♯-derivation group with its BCH product;
//! - [`invariants`]: nilpotency bounds and structural cross-checks;
//! - [`catalog`]: built-in models; [`io`] and [`report`]: file formats and output.

pub mod algebra;
pub mod catalog;
pub mod derivations;
pub mod error;
pub mod esharp;
pub mod homology;
pub mod invariants;
pub mod io;
pub mod linalg;
mod leibniz;
mod parse;
pub mod report;
pub mod sullivan;

pub use algebra::{Algebra, Generator, Monomial, Polynomial, Rational};
pub use derivations::{Derivation, DerivationComplex, DerivationSpace};
pub use error::{Error, Result};
pub use esharp::{ESharpElement, H0Sharp, SharpAutomorphism};
pub use homology::{DegreeWindow, HomologyReport};
pub use sullivan::{DGMorphism, RelativeModel, SullivanAlgebra, ValidationReport, WSplit};
