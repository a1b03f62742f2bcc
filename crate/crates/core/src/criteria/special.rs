use serde::Serialize;

use super::{Diagnostics, Ellipse, EllipsePairParams, Kind, Reason, Tolerances, Verdict, NORMALIZED_SCALE};
use crate::error::{Error, Result};
use crate::linalg::{Complex, ZERO};
use crate::nr::spectrum;
use crate::structured::SpecialForm;
use crate::verify::factorization_residual;

/// `|v|` (resp. `|u|`) below which `α` counts as real (resp. imaginary).
const AXIS_TOL: f64 = 1e-14;
/// θ grid used for the factorization residual attached to positive verdicts.
const FACTOR_GRID: usize = 64;

/// The squared criterion `T = Re T + i Im T` of a special form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriterionData {
    /// `2p = √(((η₁−η₂)² + b²)/(1+v²))`.
    pub p: f64,
    pub re_t: f64,
    pub im_t: f64,
    /// `16p⁴ − (8 Tr Z + 16α²)p² + (Tr Z)² − 4 det Z` from the assembled blocks.
    pub matrix_t: Complex,
    /// `|T_entries − T_matrix| / (1 + ‖A‖_F⁴)`.
    pub cross_residual: f64,
    /// Sum of the magnitudes of the monomial groups of `T`; `|T|` is judged
    /// against this rather than `‖A‖⁴`, which outgrows `T` like `b²` as
    /// `b → ∞` and would accept any sufficiently non-normal `B`.
    pub term_scale: f64,
}

impl CriterionData {
    pub fn t(&self) -> Complex {
        Complex::new(self.re_t, self.im_t)
    }

    /// `|T| / term_scale`, zero when `T` vanishes identically.
    pub fn relative(&self) -> f64 {
        let t = self.t().abs();
        if t == 0.0 {
            0.0
        } else {
            t / self.term_scale
        }
    }
}

/// `T` from the entries of `B`, cross-checked against the matrix-level formula.
pub fn criterion_t(sf: &SpecialForm) -> CriterionData {
    let (u, v, b) = (sf.u, sf.v, sf.b);
    let (xi1, xi2, eta1, eta2) = (sf.xi1(), sf.xi2(), sf.eta1(), sf.eta2());
    let d_eta = eta1 - eta2;
    let p2 = 0.25 * (d_eta * d_eta + b * b) / (1.0 + v * v);
    let (m1, m2) = (sf.b1.norm_sqr(), sf.b2.norm_sqr());
    let q = 1.0 + v * v;
    // 4p² − (b² + |b₁|² + |b₂|²) with the b² cancelled by hand
    let lead = d_eta * d_eta / q - m1 - m2 - v * v * b * b / q;
    let lead_mag = d_eta * d_eta / q + m1 + m2 + v * v * b * b / q;
    let re_t = lead * lead - 16.0 * u * u * p2 - 4.0 * m1 * m2;
    let im_t = 16.0 * v * (v * (eta1 + eta2) - 2.0 * u) * p2 + 4.0 * (xi1 * xi1 - xi2 * xi2) * d_eta;
    let term_scale = lead_mag * lead_mag
        + 16.0 * u * u * p2
        + 4.0 * m1 * m2
        + 16.0 * (v * v * (eta1 + eta2)).abs() * p2
        + 32.0 * (u * v).abs() * p2
        + 4.0 * ((xi1 * xi1 - xi2 * xi2) * d_eta).abs();

    let bf = sf.to_block_form();
    let tr_z = bf.z.trace();
    let alpha = sf.alpha();
    let matrix_t =
        Complex::real(16.0 * p2 * p2) - (tr_z * 8.0 + alpha * alpha * 16.0) * p2 + tr_z * tr_z - bf.z.det2() * 4.0;
    let cross_residual = (matrix_t - Complex::new(re_t, im_t)).abs() / (1.0 + bf.norm().powi(4));
    CriterionData { p: p2.sqrt(), re_t, im_t, matrix_t, cross_residual, term_scale }
}

/// Quadratic-factor parameters `(p, x, y, z)` in terms of the entries of `B`.
pub fn ellipse_params(sf: &SpecialForm) -> EllipsePairParams {
    let (v, b) = (sf.v, sf.b);
    let alpha = sf.alpha();
    let a2 = alpha * alpha;
    let d_eta = sf.eta1() - sf.eta2();
    let fro = b * b + sf.b1.norm_sqr() + sf.b2.norm_sqr();
    let p2 = 0.25 * (d_eta * d_eta + b * b) / (1.0 + v * v);
    let common = 0.5 * p2;
    EllipsePairParams {
        p: p2.sqrt(),
        x: 0.25 * (fro - 2.0) + 0.5 * a2.re - common,
        y: 0.5 * (sf.eta1() + sf.eta2()) + 0.5 * a2.im,
        z: 0.25 * (fro + 2.0) + 0.5 * alpha.norm_sqr() - common,
    }
}

/// `min_± |(1+v²)(σ₁ ± σ₂)² − (β₁ − β₂)²|`, `β_j` the eigenvalues of `Im B`,
/// with the minimizing `σ₁ ± σ₂` normalized to `Re ≥ 0`.
fn spco(sf: &SpecialForm) -> (f64, Complex) {
    let s = spectrum(&sf.to_block_form());
    let (b1, b2) = sf.b_matrix().im_part().hermitian_eigenvalues();
    let rhs = (b1 - b2) * (b1 - b2);
    let q = 1.0 + sf.v * sf.v;
    let (r, t) = s
        .pair_sums()
        .into_iter()
        .map(|t| ((t * t * q - Complex::real(rhs)).abs(), t))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("two sign choices");
    (r, if t.re < 0.0 || (t.re == 0.0 && t.im < 0.0) { -t } else { t })
}

/// The translation `σ₁ ± σ₂` between the two ellipse centers, with the sign
/// that satisfies `(1+v²)(σ₁ ± σ₂)² = (β₁ − β₂)²`. On a bi-elliptical special
/// form it equals `2p` and spans each flat portion of the boundary.
pub fn flat_translation(sf: &SpecialForm) -> Complex {
    spco(sf).1
}

fn b_is_normal(sf: &SpecialForm, tol: &Tolerances) -> bool {
    sf.b <= tol.normal * (1.0 + sf.b1.abs() + sf.b2.abs())
}

fn base_diagnostics(sf: &SpecialForm) -> (Diagnostics, f64) {
    let n4 = sf.to_block_form().norm().powi(4);
    let cd = criterion_t(sf);
    let diag = Diagnostics {
        theta: Some(0.0),
        t: Some(cd.t()),
        t_normalized: Some(cd.relative()),
        spco_residual: Some(spco(sf).0 / n4),
        ..Diagnostics::default()
    };
    (diag, cd.relative())
}

/// `|lhs − rhs| ≤ τ (|lhs| + |rhs|)`; an identity between two vanishing sides holds.
fn rel_eq(lhs: f64, rhs: f64, tol: f64) -> bool {
    (lhs - rhs).abs() <= tol * (lhs.abs() + rhs.abs())
}

fn positive(sf: &SpecialForm, mut diag: Diagnostics) -> Verdict {
    let params = ellipse_params(sf);
    diag.factorization_residual = Some(factorization_residual(&sf.to_block_form(), &params, FACTOR_GRID).residual);
    let e = Ellipse::from_shape(Complex::real(params.p), params.x, params.y, params.z);
    Verdict {
        kind: Kind::BiElliptical,
        reason: None,
        params: Some(params),
        ellipses: Some((e, e.reflected(ZERO))),
        diagnostics: diag,
    }
}

/// Bi-elliptical iff `b ≠ 0` and `T = 0`; ellipses are given in the frame of
/// the special form itself.
pub fn check_special(sf: &SpecialForm) -> Verdict {
    check_special_with(sf, &Tolerances::default())
}

pub fn check_special_with(sf: &SpecialForm, tol: &Tolerances) -> Verdict {
    let (diag, t_norm) = base_diagnostics(sf);
    if b_is_normal(sf, tol) {
        return Verdict::negative(Reason::BNormal, diag);
    }
    if !(t_norm <= tol.criterion) {
        return Verdict::negative(Reason::TNonzero, diag);
    }
    positive(sf, diag)
}

/// Real `α`: `b ≠ 0` and either `η₁ = η₂, 4b²u² = (ξ₁² − ξ₂²)²` or `u = ξ₁ = ξ₂ = 0`.
pub fn check_real(sf: &SpecialForm) -> Result<Verdict> {
    check_real_with(sf, &Tolerances::default())
}

pub fn check_real_with(sf: &SpecialForm, tol: &Tolerances) -> Result<Verdict> {
    if sf.v.abs() > AXIS_TOL {
        return Err(Error::NotRealAlpha { v: sf.v });
    }
    let (diag, _) = base_diagnostics(sf);
    if b_is_normal(sf, tol) {
        return Ok(Verdict::negative(Reason::BNormal, diag));
    }
    let s = sf.to_block_form().norm();
    let lin = tol.criterion * NORMALIZED_SCALE * s;
    let (xi1, xi2) = (sf.xi1(), sf.xi2());
    let shared_eta = rel_eq(sf.eta1(), sf.eta2(), tol.criterion)
        && rel_eq(4.0 * (sf.b * sf.u).powi(2), (xi1 * xi1 - xi2 * xi2).powi(2), tol.criterion);
    let zero_real_parts = sf.u.abs() <= lin && xi1.abs() <= lin && xi2.abs() <= lin;
    Ok(if shared_eta || zero_real_parts { positive(sf, diag) } else { Verdict::negative(Reason::TNonzero, diag) })
}

/// Imaginary `α = iv ≠ 0`: `b ≠ 0`, `|b₁| = |b₂|` and `v²b² = (η₁ − η₂)²`.
pub fn check_imag(sf: &SpecialForm) -> Result<Verdict> {
    check_imag_with(sf, &Tolerances::default())
}

pub fn check_imag_with(sf: &SpecialForm, tol: &Tolerances) -> Result<Verdict> {
    if sf.u.abs() > AXIS_TOL || sf.v.abs() <= AXIS_TOL {
        return Err(Error::NotImagAlpha { u: sf.u, v: sf.v });
    }
    let (diag, _) = base_diagnostics(sf);
    if b_is_normal(sf, tol) {
        return Ok(Verdict::negative(Reason::BNormal, diag));
    }
    let d_eta = sf.eta1() - sf.eta2();
    let ok =
        rel_eq(sf.b1.abs(), sf.b2.abs(), tol.criterion) && rel_eq((sf.v * sf.b).powi(2), d_eta * d_eta, tol.criterion);
    Ok(if ok { positive(sf, diag) } else { Verdict::negative(Reason::TNonzero, diag) })
}

/// The unique `b > 0` making the special form bi-elliptical, if any.
///
/// `Re T = 0` is quadratic in `b²`; each positive root is confirmed with
/// [`check_special`], which also requires `Im T = 0`.
pub fn solve_b(u: f64, v: f64, b1: Complex, b2: Complex) -> Result<Option<f64>> {
    if u == 0.0 && v == 0.0 {
        return Err(Error::AlphaZero);
    }
    let accept = |b: f64| b > 0.0 && check_special(&SpecialForm::new(u, v, b1, b2, b)).is_bi_elliptical();
    if v.abs() <= AXIS_TOL {
        let scale = 1.0 + b1.abs() + b2.abs();
        if (b1.im - b2.im).abs() > Tolerances::default().criterion * scale {
            return Ok(None);
        }
        let b = (b1.re * b1.re - b2.re * b2.re).abs() / (2.0 * u.abs());
        return Ok(accept(b).then_some(b));
    }
    let q = 1.0 + v * v;
    let d_eta = b1.im - b2.im;
    let (m1, m2) = (b1.norm_sqr(), b2.norm_sqr());
    let g = d_eta * d_eta / q - (m1 + m2);
    let h = -v * v / q;
    let a2 = h * h;
    let a1 = 2.0 * g * h - 4.0 * u * u / q;
    let a0 = g * g - 4.0 * u * u * d_eta * d_eta / q - 4.0 * m1 * m2;
    Ok(quadratic_roots(a2, a1, a0).into_iter().filter(|s| *s > 0.0).map(f64::sqrt).find(|&b| accept(b)))
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let big = a.abs().max(b.abs()).max(c.abs());
    if big == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-300 {
        return if b != 0.0 { vec![-c / b] } else { Vec::new() };
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc < -1e-12 * (b * b + (4.0 * a * c).abs()) {
            return Vec::new();
        }
        disc = 0.0;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn real_instance() -> SpecialForm {
        SpecialForm::new(0.1, 0.0, c(0.6, -0.2), c(0.4, -0.2), 1.0)
    }

    fn imag_instance() -> SpecialForm {
        SpecialForm::new(0.0, 0.1, c(0.3, 0.4), c(0.4, 0.3), 1.0)
    }

    #[test]
    fn known_instances_have_zero_t() {
        for sf in [real_instance(), imag_instance()] {
            let cd = criterion_t(&sf);
            assert!((4.0 * cd.p * cd.p - 1.0).abs() < 1e-15);
            assert!(cd.t().abs() < 1e-15, "{:?}", cd);
            assert!(cd.matrix_t.abs() < 1e-14);
            assert!(cd.cross_residual < 1e-15);
        }
    }

    #[test]
    fn known_instances_are_bi_elliptical() {
        for sf in [real_instance(), imag_instance()] {
            let v = check_special(&sf);
            assert!(v.is_bi_elliptical());
            assert!(v.diagnostics.factorization_residual.unwrap() < 1e-13);
            assert!(v.diagnostics.spco_residual.unwrap() < 1e-13);
        }
        assert!(check_real(&real_instance()).unwrap().is_bi_elliptical());
        assert!(check_imag(&imag_instance()).unwrap().is_bi_elliptical());
    }

    #[test]
    fn normal_b_rejected() {
        let sf = SpecialForm::new(1.0, 0.0, ZERO, ZERO, 0.0);
        let cd = criterion_t(&sf);
        assert_eq!(cd.p, 0.0);
        // Z = −I: (Tr Z)² − 4 det Z = 0 even though B is normal
        assert!(cd.matrix_t.abs() < 1e-15);
        assert_eq!(check_special(&sf).reason, Some(Reason::BNormal));
        assert_eq!(check_real(&sf).unwrap().reason, Some(Reason::BNormal));
    }

    #[test]
    fn wrong_b_rejected() {
        let sf = SpecialForm { b: 2.0, ..real_instance() };
        assert_eq!(check_special(&sf).reason, Some(Reason::TNonzero));
        assert_eq!(check_real(&sf).unwrap().reason, Some(Reason::TNonzero));
    }

    #[test]
    fn real_zero_branch_and_zero_diagonal() {
        let sf = SpecialForm::new(0.0, 0.0, c(0.0, 0.5), c(0.0, -1.0 / 3.0), 1.0);
        assert!(check_real(&sf).unwrap().is_bi_elliptical());
        assert!(check_special(&sf).is_bi_elliptical());
        let sf = SpecialForm::new(0.0, 0.0, c(0.3, 0.4), c(-0.3, 0.4), 0.7);
        assert!(check_real(&sf).unwrap().is_bi_elliptical());
        assert!(check_special(&sf).is_bi_elliptical());
    }

    #[test]
    fn imaginary_violations() {
        let sf = SpecialForm { b2: c(0.5, 0.3), ..imag_instance() };
        assert!(!check_imag(&sf).unwrap().is_bi_elliptical());
        assert!(!check_special(&sf).is_bi_elliptical());
        let sf = SpecialForm { b: 0.5, ..imag_instance() };
        assert!(!check_imag(&sf).unwrap().is_bi_elliptical());
        assert!(!check_special(&sf).is_bi_elliptical());
    }

    #[test]
    fn axis_preconditions() {
        assert_eq!(check_real(&imag_instance()).unwrap_err(), Error::NotRealAlpha { v: 0.1 });
        assert!(matches!(check_imag(&real_instance()), Err(Error::NotImagAlpha { .. })));
    }

    #[test]
    fn z_identity_and_positivity() {
        for sf in [real_instance(), imag_instance()] {
            let prm = ellipse_params(&sf);
            assert!((prm.z - prm.x - (1.0 + sf.v * sf.v)).abs() < 1e-15);
            assert!(prm.z * prm.z - prm.x * prm.x - prm.y * prm.y > 0.0);
        }
    }

    #[test]
    fn solve_b_examples() {
        let l = real_instance();
        assert!((solve_b(l.u, l.v, l.b1, l.b2).unwrap().unwrap() - 1.0).abs() < 1e-14);
        let r = imag_instance();
        assert!((solve_b(r.u, r.v, r.b1, r.b2).unwrap().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(solve_b(1.0, 0.0, c(0.5, 0.0), c(0.5, 0.0)).unwrap(), None);
        assert_eq!(solve_b(0.0, 0.0, l.b1, l.b2), Err(Error::AlphaZero));
    }

    #[test]
    fn quadratic_helper() {
        let mut r = quadratic_roots(1.0, -3.0, 2.0);
        r.sort_by(f64::total_cmp);
        assert_eq!(r, vec![1.0, 2.0]);
        assert_eq!(quadratic_roots(0.0, 2.0, -4.0), vec![2.0]);
        assert!(quadratic_roots(1.0, 0.0, 1.0).is_empty());
    }
}
