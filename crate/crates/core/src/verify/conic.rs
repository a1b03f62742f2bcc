//! Envelope-and-fit oracle for the ellipse of a quadratic factor: boundary
//! points as intersections of neighbouring tangent lines, then a least-squares
//! conic through them.

use crate::criteria::{Ellipse, EllipsePairParams};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, CMat, Complex};

/// Default half-spacing of the tangent lines that are intersected.
pub const ENVELOPE_DELTA: f64 = 1e-5;

/// Points of the ellipse centered at `+p` traced as the envelope of
/// `{w : Im(e^{−iθ}w) = −p sinθ + √(−Ω(θ))}`, intersecting lines at `θ ± δ`.
pub fn envelope_points(params: &EllipsePairParams, n: usize, delta: f64) -> Vec<Complex> {
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64;
            let (t1, t2) = (theta - delta, theta + delta);
            // Im(e^{−it}(a+ib)) = −a sin t + b cos t
            let (s1, c1) = t1.sin_cos();
            let (s2, c2) = t2.sin_cos();
            let (h1, h2) = (params.tangent_offset(t1), params.tangent_offset(t2));
            let det = -s1 * c2 + s2 * c1;
            let a = (h1 * c2 - h2 * c1) / det;
            let b = (-s1 * h2 + s2 * h1) / det;
            Complex::new(a, b)
        })
        .collect()
}

/// Least-squares conic `Ax² + Bxy + Cy² + Dx + Ey + F = 0` through the points,
/// converted to center, semi-axes and tilt.
pub fn fit_ellipse(points: &[Complex]) -> Result<Ellipse> {
    if points.len() < 5 {
        return Err(Error::TooFew { what: "conic points", min: 5, got: points.len() });
    }
    let centroid = points.iter().copied().sum::<Complex>() / points.len() as f64;
    let spread = points.iter().map(|p| (*p - centroid).abs()).fold(0.0, f64::max);
    if !(spread > 0.0) {
        return Err(Error::DegenerateEllipse { z: 0.0, r: 0.0 });
    }
    let mut gram = CMat::<6>::zeros();
    for p in points {
        let q = (*p - centroid) / spread;
        let row = [q.re * q.re, q.re * q.im, q.im * q.im, q.re, q.im, 1.0];
        for i in 0..6 {
            for j in 0..6 {
                gram[(i, j)].re += row[i] * row[j];
            }
        }
    }
    let eig = hermitian_eig(&gram)?;
    // a second near-null direction means the points do not pin down one conic
    if eig.values[1] <= 1e-12 * eig.max() {
        return Err(Error::DegenerateEllipse { z: eig.values[1], r: eig.max() });
    }
    let v = eig.vectors[0].map(|z| z.re);
    let (a, b, c, d, e, f) = (v[0], v[1], v[2], v[3], v[4], v[5]);

    let det = 4.0 * a * c - b * b;
    if !(det > 1e-12 * (a * a + b * b + c * c)) {
        return Err(Error::DegenerateEllipse { z: det, r: 0.0 });
    }
    let x0 = (b * e - 2.0 * c * d) / det;
    let y0 = (b * d - 2.0 * a * e) / det;
    let mut f0 = f + 0.5 * (d * x0 + e * y0);
    let (mut a, mut b, mut c) = (a, b, c);
    if f0 > 0.0 {
        (a, b, c, f0) = (-a, -b, -c, -f0);
    }
    // quadratic form [[a, b/2], [b/2, c]]; its larger eigenvalue sets the minor axis
    let mean = 0.5 * (a + c);
    let rad = (0.5 * (a - c)).hypot(0.5 * b);
    let (lo, hi) = (mean - rad, mean + rad);
    if !(lo > 0.0) {
        return Err(Error::DegenerateEllipse { z: lo, r: hi });
    }
    let minor_dir = 0.5 * b.atan2(a - c);
    let tilt = minor_dir + 0.5 * std::f64::consts::PI;
    let tilt = tilt - std::f64::consts::PI * (tilt / std::f64::consts::PI).round();
    Ok(Ellipse {
        center: centroid + Complex::new(x0, y0) * spread,
        semi_major: (-f0 / lo).sqrt() * spread,
        semi_minor: (-f0 / hi).sqrt() * spread,
        tilt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structured::Frame;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fit_recovers_sampled_ellipse() {
        let e = Ellipse { center: Complex::new(0.4, -1.0), semi_major: 3.0, semi_minor: 0.7, tilt: -0.9 };
        let pts: Vec<Complex> = (0..40).map(|k| e.point_at(0.3 + 0.157 * k as f64)).collect();
        let f = fit_ellipse(&pts).unwrap();
        assert!(f.approx_eq(&e, 1e-9), "{f:?}");
    }

    #[test]
    fn rejects_line() {
        let pts: Vec<Complex> = (0..10).map(|k| Complex::new(k as f64, 2.0 * k as f64)).collect();
        assert!(fit_ellipse(&pts).is_err());
    }

    #[test]
    fn envelope_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let z = x.hypot(y) + rng.gen_range(0.05..2.0);
            let prm = EllipsePairParams { p: rng.gen_range(0.0..2.0), x, y, z };
            let fitted = fit_ellipse(&envelope_points(&prm, 64, ENVELOPE_DELTA)).unwrap();
            let (closed, _) = crate::criteria::ellipse_geometry(&prm, &Frame::identity()).unwrap();
            assert!((fitted.semi_major - closed.semi_major).abs() < 1e-8 * closed.semi_major);
            assert!((fitted.semi_minor - closed.semi_minor).abs() < 1e-8 * closed.semi_major);
            assert!(fitted.approx_eq(&closed, 1e-7), "{fitted:?} vs {closed:?}");
        }
    }
}
