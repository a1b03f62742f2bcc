//! Fixed-size complex arithmetic: scalars, 2×2 and 4×4 matrices, a Jacobi
//! Hermitian eigensolver and 2×2 Schur triangularization.

mod complex;
mod eig;
mod matrix;
pub mod random;
mod schur;

pub use complex::{sqrt_principal, Complex, I, ONE, ZERO};
pub use eig::{hermitian_eig, hermitian_eig4, hermitian_eigenvalues, HermEig, HermEig4};
pub use matrix::{field_value, inner, vec_norm, CMat, CMat2, CMat4, CVec};
pub use schur::{schur_upper_2x2, Schur2};
