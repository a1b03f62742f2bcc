//! Closed-form bi-ellipticity criteria and ellipse extraction.
//!
//! Every threshold is relative. Structural tests (normality, the unitary
//! condition, pairing) run on matrices normalized to `‖A‖_F = 1`, where
//! `scale = 1 + ‖A‖_F = 2`, and compare degree-`k` quantities against
//! `τ · scaleᵏ`. Criterion equalities compare the two sides against the
//! magnitude of their own terms.

mod ellipse;
mod general;
mod reciprocal;
mod special;

use serde::Serialize;

use crate::linalg::Complex;

pub use ellipse::{ellipse_geometry, Ellipse, EllipsePairParams};
pub use general::{check_general, check_general_with, find_theta, GenDiagnostics, ThetaFit, THETA_GRID};
pub use reciprocal::{reciprocal_classify, reciprocal_classify_with, ReciprocalClass};
pub use special::{
    check_imag, check_imag_with, check_real, check_real_with, check_special, check_special_with, criterion_t,
    ellipse_params, flat_translation, solve_b, CriterionData,
};

/// `scale` of a matrix normalized to unit Frobenius norm.
pub const NORMALIZED_SCALE: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Criterion equalities (`T = 0`, the general-case equation, reciprocal relations).
    pub criterion: f64,
    /// Normality tests.
    pub normal: f64,
    /// Scalar-multiple-of-unitary test.
    pub unitary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { criterion: 1e-9, normal: 1e-10, unitary: 1e-9 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    BiElliptical,
    NotBiElliptical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    /// The triangularized `B` is normal (`b = 0`).
    BNormal,
    /// The squared criterion `T` (or its general-case form) does not vanish.
    TNonzero,
    /// No `θ` makes `e^{−iθ}C − e^{iθ}D*` a scalar multiple of a unitary.
    NoTheta,
    /// `(e^{−iθ}C − e^{iθ}D*)D` is normal.
    ProductNormal,
    /// The scalar multiple vanishes.
    ZeroMultiple,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub theta: Option<f64>,
    pub mu: Option<f64>,
    /// `|T|` of the special form over the magnitude of its monomial terms.
    pub t_normalized: Option<f64>,
    pub t: Option<Complex>,
    /// `min_± |(1+v²)(σ₁ ± σ₂)² − (β₁ − β₂)²| / ‖A_special‖_F⁴`.
    pub spco_residual: Option<f64>,
    pub factorization_residual: Option<f64>,
    pub general: Option<GenDiagnostics>,
    /// Whether a second, distinct `θ` mod π passed the unitary test.
    pub second_theta: Option<bool>,
    /// Agreement of the general and the reduced special verdicts.
    pub consistent: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: Kind,
    pub reason: Option<Reason>,
    pub params: Option<EllipsePairParams>,
    /// `(E, −E)` in the coordinates of the input matrix.
    pub ellipses: Option<(Ellipse, Ellipse)>,
    pub diagnostics: Diagnostics,
}

impl Verdict {
    pub fn is_bi_elliptical(&self) -> bool {
        self.kind == Kind::BiElliptical
    }

    fn negative(reason: Reason, diagnostics: Diagnostics) -> Self {
        Verdict { kind: Kind::NotBiElliptical, reason: Some(reason), params: None, ellipses: None, diagnostics }
    }
}
