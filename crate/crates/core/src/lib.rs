//! Classification of 4×4 block matrices `[[αI, C], [D, βI]]` whose numerical
//! range is the convex hull of two ellipses with distinct centers.
//!
//! The closed-form criteria live in [`criteria`]; [`nr`] holds the Kippenhahn
//! side (spectra, the generating polynomial, the support-function boundary
//! oracle) and [`verify`] the independent geometric cross-checks.

pub mod cli;
pub mod construct;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod nr;
pub mod search;
pub mod structured;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{CMat2, CMat4, Complex};
