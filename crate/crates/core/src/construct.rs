//! Seeded constructions: generic special forms, special forms that satisfy the
//! criterion by construction, frame disguises, and negative controls.

use rand::Rng;

use crate::linalg::random::{random_cmat, random_complex, random_unitary2};
use crate::linalg::{CMat2, CMat4, Complex};
use crate::structured::{BlockForm, SpecialForm};

/// `u, v ∈ [−1, 1)`, `b₁, b₂` with components in `[−1, 1)`, `b ∈ (0, 2)`.
pub fn random_special<R: Rng + ?Sized>(rng: &mut R) -> SpecialForm {
    SpecialForm::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        random_complex(rng),
        random_complex(rng),
        rng.gen_range(1e-3..2.0),
    )
}

/// Real `α`, `η₁ = η₂`, `b = |ξ₁² − ξ₂²| / (2|u|)`.
pub fn bi_elliptical_real_shared_eta<R: Rng + ?Sized>(rng: &mut R) -> SpecialForm {
    loop {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let eta: f64 = rng.gen_range(-1.0..1.0);
        let (xi1, xi2): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = (xi1 * xi1 - xi2 * xi2).abs() / (2.0 * u.abs());
        if u.abs() > 0.05 && (0.05..5.0).contains(&b) {
            return SpecialForm::new(u, 0.0, Complex::new(xi1, eta), Complex::new(xi2, eta), b);
        }
    }
}

/// `u = ξ₁ = ξ₂ = 0`, any `η₁, η₂` and `b > 0`.
pub fn bi_elliptical_real_zero<R: Rng + ?Sized>(rng: &mut R) -> SpecialForm {
    SpecialForm::new(
        0.0,
        0.0,
        Complex::new(0.0, rng.gen_range(-1.0..1.0)),
        Complex::new(0.0, rng.gen_range(-1.0..1.0)),
        rng.gen_range(0.05..2.0),
    )
}

/// `α = iv`, `|b₁| = |b₂|`, `b = |η₁ − η₂| / |v|`.
pub fn bi_elliptical_imag<R: Rng + ?Sized>(rng: &mut R) -> SpecialForm {
    loop {
        let v: f64 = rng.gen_range(-1.0..1.0);
        let r: f64 = rng.gen_range(0.0..1.0);
        let (t1, t2): (f64, f64) =
            (rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(0.0..std::f64::consts::TAU));
        let (b1, b2) = (Complex::from_polar(r, t1), Complex::from_polar(r, t2));
        let b = (b1.im - b2.im).abs() / v.abs();
        if v.abs() > 0.05 && (0.05..5.0).contains(&b) {
            return SpecialForm::new(0.0, v, b1, b2, b);
        }
    }
}

/// Generic `α` with `u ≠ 0 ≠ v`. Given `v, b₁, b₂`, `Im T = 0` fixes
/// `u = c₀ + K/w` with `w = (η₁−η₂)² + b²`, and `w·Re T` becomes a cubic in `w`
/// whose roots beyond `(η₁−η₂)²` are located by bracketing and bisection.
pub fn bi_elliptical_general<R: Rng + ?Sized>(rng: &mut R) -> SpecialForm {
    loop {
        let v: f64 = rng.gen_range(-1.0..1.0);
        let (b1, b2) = (random_complex(rng), random_complex(rng));
        if v.abs() < 0.05 {
            continue;
        }
        let q = 1.0 + v * v;
        let d_eta = b1.im - b2.im;
        let w0 = d_eta * d_eta;
        let (m1, m2) = (b1.norm_sqr(), b2.norm_sqr());
        let c0 = 0.5 * v * (b1.im + b2.im);
        let k = (b1.re * b1.re - b2.re * b2.re) * d_eta * q / (2.0 * v);
        let f = |w: f64| {
            let lead = w0 - m1 - m2 - v * v * w / q;
            lead * lead * w - 4.0 / q * (c0 * w + k).powi(2) - 4.0 * m1 * m2 * w
        };
        // b ∈ [0.05, 5]
        let grid: Vec<f64> = (0..=400).map(|i| w0 + 0.0025 * 1e4f64.powf(i as f64 / 400.0)).collect();
        let Some(pair) = grid.windows(2).find(|p| f(p[0]).signum() != f(p[1]).signum()) else {
            continue;
        };
        let (mut lo, mut hi) = (pair[0], pair[1]);
        let flo = f(lo).signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == flo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let w = 0.5 * (lo + hi);
        let u = c0 + k / w;
        if !(0.05..5.0).contains(&u.abs()) {
            continue;
        }
        return SpecialForm::new(u, v, b1, b2, (w - w0).sqrt());
    }
}

/// A disguise `A' = shift + k·diag[U₁, U₂]* A diag[U₁, U₂]` with
/// `k = ρe^{iθ₀}`, under which the unitary condition moves to `θ₀`.
#[derive(Clone, Copy, Debug)]
pub struct Disguise {
    pub u1: CMat2,
    pub u2: CMat2,
    pub theta0: f64,
    pub rho: f64,
    pub shift: Complex,
}

impl Disguise {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Disguise {
            u1: random_unitary2(rng),
            u2: random_unitary2(rng),
            theta0: rng.gen_range(0.0..std::f64::consts::TAU),
            rho: rng.gen_range(0.2..5.0),
            shift: random_complex(rng) * 3.0,
        }
    }

    pub fn apply(&self, bf: &BlockForm) -> BlockForm {
        let k = Complex::from_polar(self.rho, self.theta0);
        let c = bf.conjugated(&self.u1, &self.u2).scaled(k);
        BlockForm::with_shift(c.alpha, c.c, c.d, self.shift + bf.shift * k)
    }
}

/// `C = e^{iθ₀}(√μ W + e^{iθ₀}D*)` with `W` unitary, so that
/// `e^{−iθ₀}C − e^{iθ₀}D* = √μ W`. Returns the form and `θ₀ ∈ [0, π)`.
pub fn unitary_condition<R: Rng + ?Sized>(rng: &mut R) -> (BlockForm, f64) {
    let theta0 = rng.gen_range(0.0..std::f64::consts::PI);
    let d: CMat2 = random_cmat(rng);
    let w = random_unitary2(rng).scale(Complex::real(rng.gen_range(0.2..3.0)));
    let e = Complex::cis(theta0);
    let c = (w + d.adjoint().scale(e)).scale(e);
    (BlockForm::new(random_complex(rng), c, d), theta0)
}

/// `C = e^{2iθ₀}D*`: the unitary condition holds at `θ₀` with multiple zero.
pub fn zero_multiple<R: Rng + ?Sized>(rng: &mut R) -> (BlockForm, f64) {
    let theta0 = rng.gen_range(0.0..std::f64::consts::PI);
    let d: CMat2 = random_cmat(rng);
    let c = d.adjoint().scale(Complex::cis(2.0 * theta0));
    (BlockForm::new(random_complex(rng), c, d), theta0)
}

/// `A₁ ⊕ A₂` with random 2×2 blocks, conjugated by a random unitary.
pub fn direct_sum<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    let a: CMat2 = random_cmat(rng);
    let b: CMat2 = random_cmat(rng);
    let u = crate::linalg::random::random_unitary4(rng);
    u * CMat4::block_diag(&a, &b) * u.adjoint()
}
