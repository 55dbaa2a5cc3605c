//! Finite-dimensional analysis of commuting row contractions.
//!
//! A [`RowTuple`] is a `d`-tuple of commuting square matrices with
//! `sum_k T_k T_k^* <= I`. The crate computes polynomial annihilators,
//! quotient algebras and model spaces, decides cyclicity and separation,
//! builds quasi-affine intertwiners into model tuples, and checks rigidity
//! and decomposition statements for invariant subspaces.

pub mod error;
pub mod fixtures;
pub mod fock;
pub mod ideals;
pub mod linalg;
pub mod random;
pub mod subspaces;
pub mod sweep;
pub mod tuples;
pub mod vectors;

pub mod cli;

pub use error::{Error, Result};
pub use fock::{MultiIndex, Polynomial, TruncatedDA, TruncatedFock, Word};
pub use ideals::{AnnihilatorBasis, ModelSpace, QuotientAlgebra};
pub use linalg::{ComplexMatrix, ComplexVector, ToleranceConfig};
pub use subspaces::{IntertwinerSpace, SubspaceBasis, Verdict};
pub use tuples::{RowTuple, TupleReport};
pub use vectors::GramReport;
