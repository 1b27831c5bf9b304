//! Exact rational linear algebra and matrix Lie algebra primitives.

pub mod lie;
pub mod matrix;
pub mod rational;
pub mod subspace;

pub use lie::{
    ad_nilpotent, ad_nilpotent_fast, jacobi_holds, nilpotent_subalgebra_test, to_matrix, weight_decomposition, MatrixLieAlgebra,
    NilpotencyReport,
};
pub use matrix::{bracket, Matrix};
pub use rational::Rational;
pub use subspace::Subspace;

/// Spec-facing alias: elements of the matrix realizations.
pub type MatrixElement = Matrix;
