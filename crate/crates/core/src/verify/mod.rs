//! Independent oracles: characteristic polynomials, hull comparison,
//! factorization residuals, the commutant test and the envelope/conic fit.

pub mod charpoly;
mod commutant;
mod conic;
mod factor;
mod hull;

pub use commutant::{commutant_dim, commutant_singular_values, NULL_TOL};
pub use conic::{envelope_points, fit_ellipse, ENVELOPE_DELTA};
pub use factor::{factorization_residual, FactorizationResidual};
pub use hull::{compare_with_oracle, diameter, hausdorff, hull_boundary, hull_support_value, HullComparison};
