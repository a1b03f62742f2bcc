//! The structured report behind `check`, `reciprocal` and `verify`.

use std::fmt::Write as _;

use serde::Serialize;

use super::input::Resolved;
use crate::criteria::{
    check_general_with, check_special_with, reciprocal_classify_with, Diagnostics, Ellipse, EllipsePairParams,
    GenDiagnostics, Kind, Reason, ReciprocalClass, Tolerances, Verdict,
};
use crate::linalg::Complex;
use crate::nr::{boundary_support_parallel, flat_portions, spectrum, BoundarySample, FlatPortion, FLAT_GAP_TOL};
use crate::verify::{commutant_dim, compare_with_oracle, diameter};

/// Largest hull-vs-oracle Hausdorff distance, relative to the diameter of
/// `W(A)`, that still counts as agreement.
pub const HULL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub samples: usize,
    pub tol: Tolerances,
    pub workers: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub form: &'static str,
    pub verdict: Kind,
    pub reason: Option<Reason>,
    pub reciprocal_class: Option<ReciprocalClass>,
    pub theta: Option<f64>,
    pub t_abs: Option<f64>,
    pub t_relative: Option<f64>,
    pub general: Option<GenDiagnostics>,
    pub params: Option<EllipsePairParams>,
    pub ellipses: Option<[Ellipse; 2]>,
    pub eigenvalues: [Complex; 4],
    pub flats: Vec<FlatPortion>,
    pub commutant_dim: usize,
    pub diameter: f64,
    pub hausdorff: Option<f64>,
    pub hausdorff_relative: Option<f64>,
    pub diagnostics: Diagnostics,
    /// Oracle disagreements; any entry is a bug signal (exit code 3).
    pub failures: Vec<String>,
    #[serde(skip)]
    pub samples: Vec<BoundarySample>,
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        if !self.failures.is_empty() {
            3
        } else if self.verdict == Kind::BiElliptical {
            0
        } else {
            1
        }
    }
}

/// Runs the criterion for the form at hand, the boundary oracle, flat-portion
/// detection and the commutant test. `Err` means the input cannot be
/// classified (exit code 2).
pub fn build_check(res: &Resolved, settings: &Settings) -> Result<CheckReport, String> {
    let Some(bf) = res.block else {
        let why = res.block_error.as_ref().map(|e| e.to_string()).unwrap_or_default();
        return Err(format!("not block-structured ({why}); only `boundary` applies"));
    };
    let tol = &settings.tol;
    let mut failures = Vec::new();

    let verdict: Verdict = match res.special {
        Some(sf) => {
            let v = check_special_with(&sf, tol);
            match check_general_with(&bf, tol) {
                Ok(g) if g.kind != v.kind => failures.push(format!(
                    "general criterion gives {:?} on the assembled matrix, special criterion {:?}",
                    g.kind, v.kind
                )),
                Ok(_) => {}
                Err(e) => failures.push(format!("general criterion failed: {e}")),
            }
            v
        }
        None => check_general_with(&bf, tol).map_err(|e| e.to_string())?,
    };
    if verdict.diagnostics.consistent == Some(false) {
        failures.push("general criterion and the reduced special form disagree".into());
    }

    let reciprocal_class = match res.reciprocal {
        Some(r) => {
            let class = reciprocal_classify_with(&r, tol).map_err(|e| e.to_string())?;
            if (class == ReciprocalClass::BiElliptical) != verdict.is_bi_elliptical() {
                failures.push(format!("reciprocal classification {class:?} contradicts {:?}", verdict.kind));
            }
            Some(class)
        }
        None => None,
    };

    let m = res.matrix;
    let samples = boundary_support_parallel(&m, settings.samples, settings.workers).map_err(|e| e.to_string())?;
    let points: Vec<Complex> = samples.iter().map(|s| s.point).collect();
    let diam = diameter(&points);
    let flats = flat_portions(&m, &samples, FLAT_GAP_TOL).map_err(|e| e.to_string())?;
    let cdim = commutant_dim(&m);
    let eigenvalues = spectrum(&bf).eigenvalues().map(|z| z + bf.shift);

    let ellipses = verdict.ellipses.map(|(a, b)| [a, b]);
    let (mut hausdorff, mut hausdorff_relative) = (None, None);
    if let Some([e1, e2]) = ellipses {
        let cmp = compare_with_oracle(&e1, &e2, &samples).map_err(|e| e.to_string())?;
        let relative = if diam > 0.0 { cmp.hausdorff / diam } else { cmp.hausdorff };
        hausdorff = Some(cmp.hausdorff);
        hausdorff_relative = Some(relative);
        if relative > HULL_TOL {
            failures.push(format!("criterion hull deviates from the boundary oracle by {relative:.3e}·diam"));
        }
    }
    if verdict.is_bi_elliptical() {
        if flats.len() != 2 {
            failures.push(format!("bi-elliptical boundary should have 2 flat portions, found {}", flats.len()));
        }
        if cdim != 1 {
            failures.push(format!("bi-elliptical matrix should be unitarily irreducible, commutant dimension {cdim}"));
        }
    }

    let d = verdict.diagnostics;
    Ok(CheckReport {
        form: res.spec.form(),
        verdict: verdict.kind,
        reason: verdict.reason,
        reciprocal_class,
        theta: d.theta,
        t_abs: d.t.map(|t| t.abs()),
        t_relative: d.t_normalized,
        general: d.general,
        params: verdict.params,
        ellipses,
        eigenvalues,
        flats,
        commutant_dim: cdim,
        diameter: diam,
        hausdorff,
        hausdorff_relative,
        diagnostics: d,
        failures,
        samples,
    })
}

fn cplx(z: Complex) -> String {
    if z.im < 0.0 {
        format!("{} − {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}

/// Human-readable rendering.
pub fn render_text(r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "form: {}", r.form);
    let _ = writeln!(s, "verdict: {:?}", r.verdict);
    if let Some(reason) = r.reason {
        let _ = writeln!(s, "reason: {reason:?}");
    }
    if let Some(class) = r.reciprocal_class {
        let _ = writeln!(s, "reciprocal class: {class:?}");
    }
    if let Some(theta) = r.theta {
        let second = r.diagnostics.second_theta.unwrap_or(false);
        let _ = writeln!(s, "theta: {theta}{}", if second { " (a second root exists mod π)" } else { "" });
    }
    if let (Some(t), Some(rel)) = (r.t_abs, r.t_relative) {
        let _ = writeln!(s, "|T|: {t:e} (relative {rel:.3e})");
    }
    if let Some(g) = r.general {
        let _ = writeln!(s, "σ1 ± σ2: {}", cplx(g.sigma_sum));
        let _ = writeln!(s, "s1 − s2: {}", g.s_diff);
        let _ = writeln!(s, "√det Im(e^(-iθ)A): {}", g.sqrt_det);
        let _ =
            writeln!(s, "4√det·(σ1 ± σ2)²: {}  (s1 − s2)²: {}  relative gap {:.3e}", cplx(g.lhs), g.rhs, g.relative);
    }
    if let Some(p) = r.params {
        let _ = writeln!(s, "params: p = {}, x = {}, y = {}, z = {}", p.p, p.x, p.y, p.z);
    }
    if let Some(es) = r.ellipses {
        for (k, e) in es.iter().enumerate() {
            let _ = writeln!(
                s,
                "ellipse {}: center {}, semi-axes {} / {}, tilt {}",
                k + 1,
                cplx(e.center),
                e.semi_major,
                e.semi_minor,
                e.tilt
            );
        }
    }
    let eig: Vec<String> = r.eigenvalues.iter().map(|z| cplx(*z)).collect();
    let _ = writeln!(s, "eigenvalues: {}", eig.join(", "));
    let _ = writeln!(s, "flat portions: {}", r.flats.len());
    for f in &r.flats {
        let _ = writeln!(
            s,
            "  normal {:.12}, length {}, from {} to {}",
            f.normal_theta,
            f.length,
            cplx(f.endpoints.0),
            cplx(f.endpoints.1)
        );
    }
    let _ = writeln!(s, "commutant dimension: {}", r.commutant_dim);
    if let (Some(h), Some(rel)) = (r.hausdorff, r.hausdorff_relative) {
        let _ = writeln!(s, "oracle Hausdorff: {h:e} ({rel:.3e} of diameter {})", r.diameter);
    }
    for f in &r.failures {
        let _ = writeln!(s, "VERIFICATION FAILURE: {f}");
    }
    s
}
