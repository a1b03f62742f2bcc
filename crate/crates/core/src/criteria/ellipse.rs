use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{CMat2, Complex};
use crate::structured::Frame;

/// A filled ellipse `center + e^{i·tilt}(a cos s + i b sin s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Ellipse {
    pub center: Complex,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Direction of the major axis, in `(−π/2, π/2]`.
    pub tilt: f64,
}

/// Quadratic-factor parameters of the generating polynomial
/// `((λ + p sinθ)² + Ω)((λ − p sinθ)² + Ω)`, `Ω = x cos2θ + y sin2θ − z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipsePairParams {
    pub p: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl EllipsePairParams {
    pub fn omega(&self, theta: f64) -> f64 {
        let (s, c) = (2.0 * theta).sin_cos();
        self.x * c + self.y * s - self.z
    }

    /// `max_{w∈E} Im(e^{−iθ}w)` for the ellipse `E` centered at `+p`.
    pub fn tangent_offset(&self, theta: f64) -> f64 {
        -self.p * theta.sin() + (-self.omega(theta)).max(0.0).sqrt()
    }

    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl Ellipse {
    pub fn circle(center: Complex, radius: f64) -> Self {
        Ellipse { center, semi_major: radius, semi_minor: radius, tilt: 0.0 }
    }

    /// Ellipse whose support function in the outer normal direction
    /// `e^{iφ}` is `√(nᵀ S n)` with `S = [[z+x, y], [y, z−x]]`.
    pub fn from_shape(center: Complex, x: f64, y: f64, z: f64) -> Self {
        let r = x.hypot(y);
        let tilt = normalize_tilt(0.5 * y.atan2(x));
        Ellipse { center, semi_major: (z + r).max(0.0).sqrt(), semi_minor: (z - r).max(0.0).sqrt(), tilt }
    }

    /// `W(T)` of a 2×2 matrix: foci at the eigenvalues, minor axis
    /// `√(‖T‖_F² − |λ₁|² − |λ₂|²)`.
    pub fn numerical_range_2x2(t: &CMat2) -> Self {
        let (l1, l2) = t.eigenvalues();
        let minor2 = (t.frobenius_sqr() - l1.norm_sqr() - l2.norm_sqr()).max(0.0);
        let semi_minor = 0.5 * minor2.sqrt();
        let half_focal = 0.5 * (l1 - l2).abs();
        let tilt = if half_focal > 0.0 { normalize_tilt((l1 - l2).arg()) } else { 0.0 };
        Ellipse { center: (l1 + l2) * 0.5, semi_major: semi_minor.hypot(half_focal), semi_minor, tilt }
    }

    pub fn point_at(&self, s: f64) -> Complex {
        let (sn, cs) = s.sin_cos();
        self.center + Complex::cis(self.tilt) * Complex::new(self.semi_major * cs, self.semi_minor * sn)
    }

    /// `max_{w∈E} Re(e^{−iφ} w)`.
    pub fn support_value(&self, phi: f64) -> f64 {
        let (s, c) = (phi - self.tilt).sin_cos();
        (Complex::cis(-phi) * self.center).re
            + (self.semi_major * self.semi_major * c * c + self.semi_minor * self.semi_minor * s * s).sqrt()
    }

    /// The boundary point with outer normal `e^{iφ}`.
    pub fn support_point(&self, phi: f64) -> Complex {
        let (s, c) = (phi - self.tilt).sin_cos();
        let (a2, b2) = (self.semi_major * self.semi_major, self.semi_minor * self.semi_minor);
        let h = (a2 * c * c + b2 * s * s).sqrt();
        if h == 0.0 {
            return self.center;
        }
        self.center + Complex::cis(self.tilt) * Complex::new(a2 * c / h, b2 * s / h)
    }

    /// Image under `w ↦ shift + w/scale`.
    pub fn mapped(&self, frame: &Frame) -> Self {
        let m = frame.magnification();
        Ellipse {
            center: frame.to_original(self.center),
            semi_major: self.semi_major * m,
            semi_minor: self.semi_minor * m,
            tilt: normalize_tilt(self.tilt + frame.rotation()),
        }
    }

    /// Point reflection through `about`.
    pub fn reflected(&self, about: Complex) -> Self {
        Ellipse { center: about * 2.0 - self.center, ..*self }
    }

    pub fn foci(&self) -> (Complex, Complex) {
        let c = (self.semi_major * self.semi_major - self.semi_minor * self.semi_minor).max(0.0).sqrt();
        let d = Complex::cis(self.tilt) * c;
        (self.center + d, self.center - d)
    }

    /// Whether two ellipses coincide up to `tol` in every parameter,
    /// treating the tilt of a circle as arbitrary.
    pub fn approx_eq(&self, other: &Ellipse, tol: f64) -> bool {
        let round = (self.semi_major - self.semi_minor).abs() <= tol;
        let dt = (self.tilt - other.tilt).rem_euclid(std::f64::consts::PI);
        let dt = dt.min(std::f64::consts::PI - dt);
        (self.center - other.center).abs() <= tol
            && (self.semi_major - other.semi_major).abs() <= tol
            && (self.semi_minor - other.semi_minor).abs() <= tol
            && (round || dt <= tol.sqrt())
    }
}

fn normalize_tilt(t: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let r = t.rem_euclid(pi);
    if r > 0.5 * pi {
        r - pi
    } else {
        r
    }
}

/// The two congruent ellipses `E` (centered at `+p`) and `−E` of the reduced
/// frame, mapped through `frame`.
///
/// In the reduced frame the support of `E` in outer normal `e^{iφ}` is
/// `p cos φ + √(z + x cos2φ + y sin2φ)`, so its shape matrix is
/// `[[z+x, y], [y, z−x]]`: semi-axes `√(z ± r)`, major axis at `atan2(y, x)/2`.
pub fn ellipse_geometry(params: &EllipsePairParams, frame: &Frame) -> Result<(Ellipse, Ellipse)> {
    let r = params.radius();
    let z = params.z;
    if !(z - r > 4.0 * f64::EPSILON * (1.0 + z.abs())) {
        return Err(Error::DegenerateEllipse { z, r });
    }
    let e = Ellipse::from_shape(Complex::real(params.p), params.x, params.y, z);
    let minus = e.reflected(Complex::real(0.0));
    Ok((e.mapped(frame), minus.mapped(frame)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::random_cmat;
    use crate::linalg::ZERO;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn zero_xy_gives_circles() {
        let prm = EllipsePairParams { p: 0.7, x: 0.0, y: 0.0, z: 2.0 };
        let (e, f) = ellipse_geometry(&prm, &Frame::identity()).unwrap();
        assert!((e.semi_major - 2f64.sqrt()).abs() < 1e-15 && (e.semi_minor - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(e.center, Complex::real(0.7));
        assert_eq!(f.center, Complex::real(-0.7));
    }

    #[test]
    fn degenerate_factor_rejected() {
        let prm = EllipsePairParams { p: 1.0, x: 3.0, y: 4.0, z: 5.0 };
        assert!(matches!(ellipse_geometry(&prm, &Frame::identity()), Err(Error::DegenerateEllipse { .. })));
        let prm = EllipsePairParams { p: 1.0, x: 3.0, y: 4.0, z: 4.0 };
        assert!(ellipse_geometry(&prm, &Frame::identity()).is_err());
    }

    #[test]
    fn tangent_law_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..500 {
            let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let z = x.hypot(y) + rng.gen_range(0.01..2.0);
            let prm = EllipsePairParams { p: rng.gen_range(0.0..2.0), x, y, z };
            let (e, _) = ellipse_geometry(&prm, &Frame::identity()).unwrap();
            for k in 0..64 {
                let theta = TAU * k as f64 / 64.0;
                // Im(e^{−iθ}w) = Re(e^{−i(θ+π/2)}w)
                let h = e.support_value(theta + 0.5 * PI);
                assert!((h - prm.tangent_offset(theta)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn support_point_attains_support() {
        let e = Ellipse { center: Complex::new(0.3, -0.2), semi_major: 2.0, semi_minor: 0.5, tilt: 0.4 };
        for k in 0..100 {
            let phi = TAU * k as f64 / 100.0;
            let w = e.support_point(phi);
            assert!(((Complex::cis(-phi) * w).re - e.support_value(phi)).abs() < 1e-13);
            let best = (0..4000)
                .map(|j| (Complex::cis(-phi) * e.point_at(TAU * j as f64 / 4000.0)).re)
                .fold(f64::MIN, f64::max);
            assert!(best <= e.support_value(phi) + 1e-13);
            assert!(best >= e.support_value(phi) - 1e-5);
        }
    }

    #[test]
    fn frame_mapping_is_affine() {
        let e = Ellipse { center: Complex::new(1.0, 0.0), semi_major: 2.0, semi_minor: 1.0, tilt: 0.0 };
        let frame = Frame { shift: Complex::new(0.0, 1.0), scale: Complex::new(0.0, 0.5), ..Frame::identity() };
        let m = e.mapped(&frame);
        for k in 0..32 {
            let s = TAU * k as f64 / 32.0;
            let want = frame.to_original(e.point_at(s));
            let d = (0..4000).map(|j| (m.point_at(TAU * j as f64 / 4000.0) - want).abs()).fold(f64::MAX, f64::min);
            assert!(d < 1e-2);
        }
        assert!((m.semi_major - 4.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_range() {
        // nilpotent: circle of radius 1/2
        let n = CMat2::new(ZERO, Complex::real(1.0), ZERO, ZERO);
        let e = Ellipse::numerical_range_2x2(&n);
        assert!((e.semi_major - 0.5).abs() < 1e-15 && (e.semi_minor - 0.5).abs() < 1e-15);
        // normal: degenerate segment between eigenvalues
        let d = CMat2::new(Complex::real(1.0), ZERO, ZERO, Complex::real(-1.0));
        let e = Ellipse::numerical_range_2x2(&d);
        assert!(e.semi_minor.abs() < 1e-15 && (e.semi_major - 1.0).abs() < 1e-15);
        assert_eq!(e.foci(), (Complex::real(1.0), Complex::real(-1.0)));
    }

    #[test]
    fn two_by_two_support_matches_hermitian_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let t: CMat2 = random_cmat(&mut rng);
            let e = Ellipse::numerical_range_2x2(&t);
            for k in 0..32 {
                let phi = TAU * k as f64 / 32.0;
                let (top, _) = t.scale(Complex::cis(-phi)).re_part().hermitian_eigenvalues();
                assert!((e.support_value(phi) - top).abs() < 1e-12);
            }
        }
    }
}
