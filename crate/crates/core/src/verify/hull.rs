//! Sampled boundaries of convex hulls and distances between them.

use serde::Serialize;

use crate::criteria::Ellipse;
use crate::error::{Error, Result};
use crate::linalg::Complex;
use crate::nr::BoundarySample;

/// Outcome of comparing a criterion hull with the boundary oracle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HullComparison {
    pub hausdorff: f64,
    /// Largest distance between points sampled at the same direction.
    pub max_pointwise: f64,
    /// Largest difference of support values over the sampled directions.
    pub support_gap: f64,
    pub samples: usize,
}

/// Boundary of `conv(E₁ ∪ E₂)` at the outer normals `e^{iθ_k}`, `θ_k = 2πk/n`.
///
/// When both ellipses support the same line the counterclockwise end of the
/// common tangent segment is returned, as in the matrix oracle.
pub fn hull_boundary(e1: &Ellipse, e2: &Ellipse, n: usize) -> Result<Vec<Complex>> {
    if n < 64 {
        return Err(Error::TooFew { what: "hull samples", min: 64, got: n });
    }
    let scale = 1.0 + e1.center.abs().max(e2.center.abs()) + e1.semi_major.max(e2.semi_major);
    Ok((0..n)
        .map(|k| {
            let phi = std::f64::consts::TAU * k as f64 / n as f64;
            hull_support_point(e1, e2, phi, 1e-11 * scale)
        })
        .collect())
}

fn hull_support_point(e1: &Ellipse, e2: &Ellipse, phi: f64, tie: f64) -> Complex {
    let (h1, h2) = (e1.support_value(phi), e2.support_value(phi));
    let (p1, p2) = (e1.support_point(phi), e2.support_point(phi));
    if (h1 - h2).abs() <= tie {
        let rot = Complex::cis(-phi);
        if (rot * p1).im >= (rot * p2).im {
            p1
        } else {
            p2
        }
    } else if h1 > h2 {
        p1
    } else {
        p2
    }
}

/// Support value of `conv(E₁ ∪ E₂)` in direction `e^{iφ}`.
pub fn hull_support_value(e1: &Ellipse, e2: &Ellipse, phi: f64) -> f64 {
    e1.support_value(phi).max(e2.support_value(phi))
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Complex], b: &[Complex]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(directed(a, b).max(directed(b, a)))
}

fn directed(a: &[Complex], b: &[Complex]) -> f64 {
    a.iter().map(|p| b.iter().map(|q| (*p - *q).norm_sqr()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max).sqrt()
}

/// Compares `conv(E₁ ∪ E₂)` with the support-function samples of a matrix,
/// direction by direction.
pub fn compare_with_oracle(e1: &Ellipse, e2: &Ellipse, oracle: &[BoundarySample]) -> Result<HullComparison> {
    let n = oracle.len();
    let hull = hull_boundary(e1, e2, n)?;
    let pts: Vec<Complex> = oracle.iter().map(|s| s.point).collect();
    let max_pointwise = hull.iter().zip(&pts).map(|(a, b)| (*a - *b).abs()).fold(0.0, f64::max);
    let support_gap =
        oracle.iter().map(|s| (hull_support_value(e1, e2, s.theta) - s.support_value).abs()).fold(0.0, f64::max);
    Ok(HullComparison { hausdorff: hausdorff(&hull, &pts)?, max_pointwise, support_gap, samples: n })
}

/// Largest distance between two points of a sampled boundary.
pub fn diameter(points: &[Complex]) -> f64 {
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max((*p - *q).norm_sqr());
        }
    }
    best.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn identical_circles() {
        let c = Ellipse::circle(Complex::real(0.0), 1.0);
        let pts = hull_boundary(&c, &c, 256).unwrap();
        for (k, p) in pts.iter().enumerate() {
            assert!((*p - Complex::cis(TAU * k as f64 / 256.0)).abs() < 1e-15);
        }
        assert_eq!(hausdorff(&pts, &pts).unwrap(), 0.0);
    }

    #[test]
    fn stadium() {
        let a = Ellipse::circle(Complex::real(1.0), 1.0);
        let b = Ellipse::circle(Complex::real(-1.0), 1.0);
        let pts = hull_boundary(&a, &b, 256).unwrap();
        // outer normal +i: counterclockwise end of the top segment is −1 + i
        assert!((pts[64] - Complex::new(-1.0, 1.0)).abs() < 1e-15);
        assert!((pts[192] - Complex::new(1.0, -1.0)).abs() < 1e-15);
        assert!((hull_support_value(&a, &b, 0.5 * PI) - 1.0).abs() < 1e-15);
        assert!((diameter(&pts) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_of_concentric_circles() {
        let n = 512;
        let a: Vec<Complex> = (0..n).map(|k| Complex::cis(TAU * k as f64 / n as f64)).collect();
        let b: Vec<Complex> = a.iter().map(|p| *p * 1.1).collect();
        assert!((hausdorff(&a, &b).unwrap() - 0.1).abs() < 1e-12);
        assert_eq!(hausdorff(&a, &[]), Err(Error::EmptyInput));
    }

    #[test]
    fn too_few_samples() {
        let c = Ellipse::circle(Complex::real(0.0), 1.0);
        assert!(matches!(hull_boundary(&c, &c, 10), Err(Error::TooFew { .. })));
    }
}
