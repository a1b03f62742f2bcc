use serde::Serialize;

use super::special::check_special_with;
use super::{Diagnostics, Kind, Reason, Tolerances, Verdict, NORMALIZED_SCALE};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, Complex};
use crate::nr::{pencil_gram, spectrum};
use crate::search::{cyclic_local_minima, golden_section_min};
use crate::structured::{reduce_to_special_with, BlockForm, Frame};

/// Grid over `[0, π)` scanned for the unitary condition.
pub const THETA_GRID: usize = 4096;
/// Accepted angles closer than this (mod π) are the same root.
const SAME_ROOT: f64 = 1e-6;
/// Within-pair spread of `Im((e^{−iθ}A)²)` eigenvalues, relative to `scale²`.
const PAIR_TOL: f64 = 1e-8;

/// A root of the unitary condition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaFit {
    /// Representative in `[0, π)`.
    pub theta: f64,
    /// `μ` with `M(θ)*M(θ) = μI`.
    pub mu: f64,
    /// `d(θ)` at the returned angle.
    pub defect: f64,
    /// Another accepted angle, distinct mod π, if one exists.
    pub second: Option<f64>,
}

/// Values entering `4√det(Im(e^{−iθ}A))(σ₁+σ₂)² = (s₁−s₂)²`, in the units of
/// the input matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenDiagnostics {
    /// `σ₁ ± σ₂` for the sign with the smaller residual, `Re ≥ 0`.
    pub sigma_sum: Complex,
    pub s_diff: f64,
    pub sqrt_det: f64,
    pub lhs: Complex,
    pub rhs: f64,
    /// `|lhs − rhs|` after normalization to `‖A‖_F = 1`.
    pub residual: f64,
    /// `|lhs − rhs| / max(|lhs|, |rhs|)`.
    pub relative: f64,
}

/// `d(θ) = ‖M*M − (tr M*M / 2) I‖_F / (‖C‖_F² + ‖D‖_F²)` for
/// `M = e^{−iθ}C − e^{iθ}D*`.
fn unitary_defect(bf: &BlockForm, denom: f64, theta: f64) -> f64 {
    let g = pencil_gram(bf, theta);
    let half = (g[(0, 0)].re + g[(1, 1)].re) * 0.5;
    let a = g[(0, 0)].re - half;
    (2.0 * a * a + 2.0 * g[(0, 1)].norm_sqr()).sqrt() / denom
}

/// Angle at which `e^{−iθ}C − e^{iθ}D*` is a scalar multiple of a unitary.
///
/// Every local minimum of `d` on the grid is refined by golden-section search,
/// so a second root mod π is detected rather than assumed away.
pub fn find_theta(bf: &BlockForm) -> Option<ThetaFit> {
    find_theta_with(bf, Tolerances::default().unitary)
}

pub(crate) fn find_theta_with(bf: &BlockForm, tol: f64) -> Option<ThetaFit> {
    let denom = bf.c.frobenius_sqr() + bf.d.frobenius_sqr();
    let pi = std::f64::consts::PI;
    if denom == 0.0 {
        return Some(ThetaFit { theta: 0.0, mu: 0.0, defect: 0.0, second: None });
    }
    let step = pi / THETA_GRID as f64;
    let values: Vec<f64> = (0..THETA_GRID).map(|k| unitary_defect(bf, denom, k as f64 * step)).collect();

    let mut roots: Vec<(f64, f64)> = Vec::new();
    for k in cyclic_local_minima(&values) {
        let centre = k as f64 * step;
        let (theta, d) = golden_section_min(|t| unitary_defect(bf, denom, t), centre - step, centre + step, 1e-13);
        if d > tol {
            continue;
        }
        let theta = theta.rem_euclid(pi);
        if let Some(r) = roots.iter_mut().find(|r| mod_pi_distance(r.0, theta) < SAME_ROOT) {
            if d < r.1 {
                *r = (theta, d);
            }
        } else {
            roots.push((theta, d));
        }
    }
    roots.sort_by(|a, b| a.1.total_cmp(&b.1));
    let &(theta, defect) = roots.first()?;
    let g = pencil_gram(bf, theta);
    Some(ThetaFit { theta, mu: 0.5 * (g[(0, 0)].re + g[(1, 1)].re), defect, second: roots.get(1).map(|r| r.0) })
}

fn mod_pi_distance(a: f64, b: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let d = (a - b).rem_euclid(pi);
    d.min(pi - d)
}

/// Evaluates both sides of the general-case equation at `θ` for a block form
/// normalized to `‖A‖_F = 1`.
fn gen_terms(nb: &BlockForm, theta: f64) -> Result<GenDiagnostics> {
    let rot = nb.scaled(Complex::cis(-theta));
    let r = rot.centered();
    let spec = spectrum(&rot);
    let sqrt_det = r.im_part().det().re.max(0.0).sqrt();
    let e = hermitian_eigenvalues(&(r * r).im_part())?;
    let spread = (e[1] - e[0]).max(e[3] - e[2]);
    if spread > PAIR_TOL * NORMALIZED_SCALE.powi(2) {
        return Err(Error::Unpaired { spread });
    }
    let s_diff = 0.5 * (e[2] + e[3]) - 0.5 * (e[0] + e[1]);
    let rhs = s_diff * s_diff;
    let (sigma_sum, lhs, residual) = [spec.sigma1 + spec.sigma2, spec.sigma1 - spec.sigma2]
        .into_iter()
        .map(|s| {
            let lhs = s * s * (4.0 * sqrt_det);
            (s, lhs, (lhs - Complex::real(rhs)).abs())
        })
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .expect("two sign choices");
    let sigma_sum =
        if sigma_sum.re < 0.0 || (sigma_sum.re == 0.0 && sigma_sum.im < 0.0) { -sigma_sum } else { sigma_sum };
    let relative = residual / lhs.abs().max(rhs).max(f64::MIN_POSITIVE);
    Ok(GenDiagnostics { sigma_sum, s_diff, sqrt_det, lhs, rhs, residual, relative })
}

/// General-case criterion on any block form: a `θ` making
/// `e^{−iθ}C − e^{iθ}D*` a nonzero scalar multiple of a unitary, a non-normal
/// `(e^{−iθ}C − e^{iθ}D*)D`, and the equation
/// `4√det(Im(e^{−iθ}A))(σ₁+σ₂)² = (s₁−s₂)²`.
///
/// The reduction to the special form is always run alongside; its verdict is
/// recorded in `diagnostics.consistent` and supplies the ellipses.
pub fn check_general(bf: &BlockForm) -> Result<Verdict> {
    check_general_with(bf, &Tolerances::default())
}

pub fn check_general_with(bf: &BlockForm, tol: &Tolerances) -> Result<Verdict> {
    if !(bf.c.is_finite() && bf.d.is_finite() && bf.alpha.is_finite() && bf.shift.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (nb, factor) = bf.normalized();
    let mut diag = Diagnostics::default();
    let Some(fit) = find_theta_with(&nb, tol.unitary) else {
        return Ok(Verdict::negative(Reason::NoTheta, diag));
    };
    diag.theta = Some(fit.theta);
    diag.mu = Some(fit.mu * factor * factor);
    diag.second_theta = Some(fit.second.is_some());

    let product = nb.pencil(fit.theta) * nb.d;
    if product.self_commutator().frobenius() <= tol.normal * NORMALIZED_SCALE.powi(2) {
        return Ok(Verdict::negative(Reason::ProductNormal, diag));
    }
    if fit.mu <= tol.unitary * (nb.c.frobenius_sqr() + nb.d.frobenius_sqr()) {
        return Ok(Verdict::negative(Reason::ZeroMultiple, diag));
    }

    let g = gen_terms(&nb, fit.theta)?;
    // relative to the sides, as `‖A‖⁴` outgrows both when the reduced `b` is large
    let accepted = g.residual <= tol.criterion * (g.lhs.abs() + g.rhs).max(tol.criterion * NORMALIZED_SCALE.powi(4));
    let f2 = factor * factor;
    diag.general = Some(GenDiagnostics {
        sigma_sum: g.sigma_sum * factor,
        s_diff: g.s_diff * f2,
        sqrt_det: g.sqrt_det * f2,
        lhs: g.lhs * (f2 * f2),
        rhs: g.rhs * f2 * f2,
        ..g
    });
    let kind = if accepted { Kind::BiElliptical } else { Kind::NotBiElliptical };

    let mut verdict = Verdict {
        kind,
        reason: (!accepted).then_some(Reason::TNonzero),
        params: None,
        ellipses: None,
        diagnostics: diag,
    };
    match reduce_to_special_with(&nb, fit.theta, tol.unitary) {
        Ok((sf, frame)) => {
            let sv = check_special_with(&sf, tol);
            let back = Frame { shift: bf.shift, scale: frame.scale / factor, similarity: frame.similarity };
            verdict.diagnostics.consistent = Some(sv.kind == kind);
            verdict.diagnostics.t = sv.diagnostics.t;
            verdict.diagnostics.t_normalized = sv.diagnostics.t_normalized;
            verdict.diagnostics.spco_residual = sv.diagnostics.spco_residual;
            verdict.diagnostics.factorization_residual = sv.diagnostics.factorization_residual;
            if accepted {
                verdict.params = sv.params;
                verdict.ellipses = sv.ellipses.map(|(e, f)| (e.mapped(&back), f.mapped(&back)));
            }
        }
        Err(_) => verdict.diagnostics.consistent = Some(false),
    }
    Ok(verdict)
}
