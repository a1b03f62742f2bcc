//! Kippenhahn-side computations: spectra, pencil eigenvalues, the NR
//! generating polynomial, the support-function boundary oracle and flat
//! portions of `∂W(A)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{field_value, hermitian_eig4, CMat2, CMat4, CVec, Complex, HermEig4};
use crate::search::{cyclic_local_minima, golden_section_min};
use crate::structured::BlockForm;

/// Default number of support directions for the boundary oracle.
pub const DEFAULT_SAMPLES: usize = 2048;
/// Default top-eigenvalue gap (relative to `‖M‖_F`) that marks a flat portion.
pub const FLAT_GAP_TOL: f64 = 1e-7;
/// Gap below which the top eigenspace is treated as exactly degenerate when
/// picking a boundary point.
const DEGENERACY_TOL: f64 = 1e-11;

/// Eigenvalues `±σ₁, ±σ₂` of the centered block matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub sigma1: Complex,
    pub sigma2: Complex,
    pub z1: Complex,
    pub z2: Complex,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> [Complex; 4] {
        [self.sigma1, -self.sigma1, self.sigma2, -self.sigma2]
    }

    /// `σ₁ + σ₂` and `σ₁ − σ₂`. Which of the two spans the flat portions is
    /// decided by the criterion, not by modulus.
    pub fn pair_sums(&self) -> [Complex; 2] {
        [self.sigma1 + self.sigma2, self.sigma1 - self.sigma2]
    }
}

/// `σ_j = √(z_j + α²)` with `z_j` the eigenvalues of `Z = DC`, principal branch.
pub fn spectrum(bf: &BlockForm) -> Spectrum {
    let (z1, z2) = bf.z.eigenvalues();
    let a2 = bf.alpha * bf.alpha;
    Spectrum { sigma1: (z1 + a2).sqrt(), sigma2: (z2 + a2).sqrt(), z1, z2 }
}

/// `H − 2 Re(e^{−2iθ} Z)`, which equals `M(θ)* M(θ)` for `M(θ) = e^{−iθ}C − e^{iθ}D*`.
pub fn pencil_gram(bf: &BlockForm, theta: f64) -> CMat2 {
    let rz = bf.z.scale(Complex::cis(-2.0 * theta));
    bf.h - (rz + rz.adjoint())
}

/// Non-negative `λ₁ ≥ λ₂` with `±λ_j` the eigenvalues of `Im(e^{−iθ}A)`.
pub fn pencil_eigs(bf: &BlockForm, theta: f64) -> (f64, f64) {
    let (mu1, mu2) = pencil_gram(bf, theta).hermitian_eigenvalues();
    let a = (Complex::cis(-theta) * bf.alpha).im;
    let lam = |mu: f64| (a * a + 0.25 * mu.max(0.0)).sqrt();
    (lam(mu1), lam(mu2))
}

/// Coefficients of `P_A(λ, θ) = λ⁴ − Ξ₁(θ)λ² + Ξ₂(θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneratingPoly {
    /// `Ξ₁ = xi1[0] + xi1[1] cos 2θ + xi1[2] sin 2θ`
    pub xi1: [f64; 3],
    /// `16 Ξ₂ = xi2_16[0] + xi2_16[1] cos 2θ + xi2_16[2] sin 2θ + xi2_16[3] cos 4θ + xi2_16[4] sin 4θ`
    pub xi2_16: [f64; 5],
    pub zeta1: Complex,
    pub zeta2: Complex,
}

impl GeneratingPoly {
    pub fn xi1_at(&self, theta: f64) -> f64 {
        let (s2, c2) = (2.0 * theta).sin_cos();
        self.xi1[0] + self.xi1[1] * c2 + self.xi1[2] * s2
    }

    pub fn xi2_at(&self, theta: f64) -> f64 {
        let (s2, c2) = (2.0 * theta).sin_cos();
        let (s4, c4) = (4.0 * theta).sin_cos();
        let k = &self.xi2_16;
        (k[0] + k[1] * c2 + k[2] * s2 + k[3] * c4 + k[4] * s4) / 16.0
    }

    pub fn eval(&self, lambda: f64, theta: f64) -> f64 {
        let l2 = lambda * lambda;
        l2 * l2 - self.xi1_at(theta) * l2 + self.xi2_at(theta)
    }

    /// `Ξ₁² − 4Ξ₂`, zero exactly where `λ₁(θ) = λ₂(θ)`.
    pub fn discriminant(&self, theta: f64) -> f64 {
        let x1 = self.xi1_at(theta);
        x1 * x1 - 4.0 * self.xi2_at(theta)
    }
}

/// Closed-form trigonometric coefficients from `Tr H`, `Tr Z`, `Tr H²`,
/// `Tr ZZ*`, `Tr ZH`, `det Z` and `α`.
pub fn generating_poly(bf: &BlockForm) -> GeneratingPoly {
    let alpha = bf.alpha;
    let a_abs2 = alpha.norm_sqr();
    let a2 = alpha * alpha;
    let tr_h = bf.h.trace().re;
    let tr_z = bf.z.trace();
    let tr_h2 = (bf.h * bf.h).trace().re;
    let tr_zzs = (bf.z * bf.z.adjoint()).trace().re;
    let tr_zh = (bf.z * bf.h).trace();
    let det_z = bf.z.det2();

    let xi1 = [0.25 * tr_h + a_abs2, -(0.5 * tr_z.re + a2.re), -(0.5 * tr_z.im + a2.im)];

    let zeta1 = a2 * (8.0 * a_abs2) + a2 * (2.0 * tr_h) + tr_z * (4.0 * a_abs2) + tr_z * (2.0 * tr_h) - tr_zh * 2.0;
    let zeta2 = det_z * 2.0 + a2 * tr_z * 2.0 + a2 * a2 * 2.0;
    let k0 = 6.0 * a_abs2 * a_abs2 + 2.0 * a_abs2 * tr_h + 2.0 * (a2.conj() * tr_z).re + 0.5 * tr_h * tr_h
        - 0.5 * tr_h2
        + tr_z.norm_sqr()
        - tr_zzs;
    GeneratingPoly { xi1, xi2_16: [k0, -zeta1.re, -zeta1.im, zeta2.re, zeta2.im], zeta1, zeta2 }
}

/// One support direction of the boundary oracle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundarySample {
    pub theta: f64,
    /// Point of `∂W(M)` where the supporting line with outer normal `e^{iθ}` touches.
    pub point: Complex,
    /// Largest eigenvalue of `Re(e^{−iθ}M)`.
    pub support_value: f64,
    /// Difference of the two largest eigenvalues of `Re(e^{−iθ}M)`.
    pub multiplicity_gap: f64,
}

/// Support-function sampling of `∂W(M)` at `θ_k = 2πk/n`.
///
/// Where the top eigenvalue is degenerate the boundary point is resolved to
/// the end of the flat portion lying furthest counterclockwise.
pub fn boundary_support(m: &CMat4, n: usize) -> Result<Vec<BoundarySample>> {
    if n < 8 {
        return Err(Error::TooFew { what: "boundary samples", min: 8, got: n });
    }
    (0..n).map(|k| support_sample(m, support_angle(k, n))).collect()
}

/// Same samples as [`boundary_support`], computed on `workers` threads over
/// contiguous `θ` ranges and merged in order.
pub fn boundary_support_parallel(m: &CMat4, n: usize, workers: usize) -> Result<Vec<BoundarySample>> {
    if n < 8 {
        return Err(Error::TooFew { what: "boundary samples", min: 8, got: n });
    }
    let workers = workers.clamp(1, n);
    let chunk = n.div_ceil(workers);
    let parts: Vec<Result<Vec<BoundarySample>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w * chunk..((w + 1) * chunk).min(n)).map(|k| support_sample(m, support_angle(k, n))).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(n);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn support_angle(k: usize, n: usize) -> f64 {
    std::f64::consts::TAU * k as f64 / n as f64
}

fn rotated_parts(m: &CMat4, theta: f64) -> (CMat4, CMat4) {
    let r = m.scale(Complex::cis(-theta));
    (r.re_part(), r.im_part())
}

/// Boundary point and support value in direction `e^{iθ}`.
pub fn support_sample(m: &CMat4, theta: f64) -> Result<BoundarySample> {
    let (re, im) = rotated_parts(m, theta);
    let eig = hermitian_eig4(&re)?;
    let gap = eig.top_gap();
    let x = if gap <= DEGENERACY_TOL * m.frobenius() { top_pair_compression(&eig, &im).1 } else { eig.vectors[3] };
    Ok(BoundarySample { theta, point: field_value(m, &x), support_value: eig.max(), multiplicity_gap: gap })
}

/// Compresses a Hermitian `k` onto the span of the top two eigenvectors of
/// `eig`; returns the compression's eigenvalues (descending) and the unit
/// vector of the larger one, lifted back to `ℂ⁴`.
fn top_pair_compression(eig: &HermEig4, k: &CMat4) -> ((f64, f64), CVec<4>) {
    let basis = [eig.vectors[3], eig.vectors[2]];
    let comp = CMat2::from_fn(|i, j| crate::linalg::inner(&k.mul_vec(&basis[j]), &basis[i]));
    let (hi, lo) = comp.hermitian_eigenvalues();
    // eigenvector of the 2×2 for `hi`: a column of (comp − lo·I)
    let shifted = comp - CMat2::scalar(Complex::real(lo));
    let c0 = shifted.column(0);
    let c1 = shifted.column(1);
    let n0 = c0[0].norm_sqr() + c0[1].norm_sqr();
    let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
    let (col, nrm) = if n0 >= n1 { (c0, n0) } else { (c1, n1) };
    let coef = if nrm == 0.0 {
        [Complex::real(1.0), Complex::real(0.0)]
    } else {
        let s = 1.0 / nrm.sqrt();
        [col[0] * s, col[1] * s]
    };
    let x = std::array::from_fn(|i| basis[0][i] * coef[0] + basis[1][i] * coef[1]);
    ((hi, lo), x)
}

/// A line segment on `∂W(M)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlatPortion {
    /// Angle of the outer normal.
    pub normal_theta: f64,
    /// Unit vector along the segment.
    pub direction: Complex,
    pub endpoints: (Complex, Complex),
    pub length: f64,
}

impl FlatPortion {
    pub fn midpoint(&self) -> Complex {
        (self.endpoints.0 + self.endpoints.1) * 0.5
    }

    /// Segment direction as an angle in `[0, π)`.
    pub fn direction_angle_mod_pi(&self) -> f64 {
        self.direction.arg().rem_euclid(std::f64::consts::PI)
    }
}

/// Locates flat portions from boundary samples: local minima of the
/// top-eigenvalue gap are refined by golden-section search in `θ`, and accepted
/// where the refined gap is at most `gap_tol·‖M‖_F`. Endpoints come from the
/// compression of `Im(e^{−iθ}M)` onto the degenerate top eigenspace.
pub fn flat_portions(m: &CMat4, samples: &[BoundarySample], gap_tol: f64) -> Result<Vec<FlatPortion>> {
    let n = samples.len();
    if n < 8 {
        return Err(Error::TooFew { what: "boundary samples", min: 8, got: n });
    }
    let scale = m.frobenius();
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let gaps: Vec<f64> = samples.iter().map(|s| s.multiplicity_gap).collect();
    let step = std::f64::consts::TAU / n as f64;
    // near a flat of length L the gap grows like L·|θ − θ₀| and L ≤ 2‖M‖
    let coarse = 4.0 * scale * step + gap_tol * scale;

    let gap_at = |theta: f64| -> f64 {
        let (re, _) = rotated_parts(m, theta);
        hermitian_eig4(&re).map(|e| e.top_gap()).unwrap_or(f64::INFINITY)
    };

    let mut found: Vec<FlatPortion> = Vec::new();
    for k in cyclic_local_minima(&gaps) {
        if gaps[k] > coarse {
            continue;
        }
        let centre = samples[k].theta;
        let (theta, g) = if gaps[k] == 0.0 {
            (centre, 0.0)
        } else {
            golden_section_min(gap_at, centre - step, centre + step, 1e-14)
        };
        if g > gap_tol * scale {
            continue;
        }
        let theta = theta.rem_euclid(std::f64::consts::TAU);
        if found.iter().any(|f| angle_distance(f.normal_theta, theta) < 1e-9) {
            continue;
        }
        let (re, im) = rotated_parts(m, theta);
        let eig = hermitian_eig4(&re)?;
        let ((hi, lo), _) = top_pair_compression(&eig, &im);
        let length = hi - lo;
        if length <= 1e-9 * scale {
            continue;
        }
        let h = 0.5 * (eig.values[3] + eig.values[2]);
        let rot = Complex::cis(theta);
        let p_lo = rot * Complex::new(h, lo);
        let p_hi = rot * Complex::new(h, hi);
        found.push(FlatPortion {
            normal_theta: theta,
            direction: rot * Complex::new(0.0, 1.0),
            endpoints: (p_lo, p_hi),
            length,
        });
    }
    found.sort_by(|a, b| a.normal_theta.total_cmp(&b.normal_theta));
    Ok(found)
}

/// Pairs of flats whose outer normals are opposite (central symmetry).
pub fn antipodal_pairs(flats: &[FlatPortion], tol: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..flats.len() {
        for j in i + 1..flats.len() {
            let d = angle_distance(flats[i].normal_theta + std::f64::consts::PI, flats[j].normal_theta);
            if d <= tol {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Largest distance between two sampled boundary points.
pub fn diameter(samples: &[BoundarySample]) -> f64 {
    let n = samples.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            best = best.max((samples[i].point - samples[j].point).abs());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_cmat, random_complex};
    use crate::linalg::{hermitian_eigenvalues, ZERO};
    use crate::structured::SpecialForm;
    use crate::verify::charpoly::{char_poly4, match_multisets, poly_roots};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_block(rng: &mut ChaCha8Rng) -> BlockForm {
        BlockForm::new(random_complex(rng), random_cmat(rng), random_cmat(rng))
    }

    #[test]
    fn spectrum_zero_blocks() {
        let alpha = Complex::new(0.3, -0.7);
        let s = spectrum(&BlockForm::new(alpha, CMat2::zeros(), CMat2::zeros()));
        for sig in [s.sigma1, s.sigma2] {
            assert!((sig - alpha).abs() < 1e-15 || (sig + alpha).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_reciprocal_golden() {
        let r = crate::structured::ReciprocalForm::new(2.0, 1.0, 2.0).unwrap();
        let s = spectrum(&crate::structured::from_reciprocal(&r).unwrap());
        let s5 = 5f64.sqrt();
        let want = [(1. + s5) / 2., -(1. + s5) / 2., (1. - s5) / 2., -(1. - s5) / 2.].map(Complex::real);
        assert!(match_multisets(&s.eigenvalues(), &want) < 1e-14);
    }

    #[test]
    fn spectrum_matches_characteristic_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..500 {
            let bf = random_block(&mut rng);
            let s = spectrum(&bf);
            for (sig, z) in [(s.sigma1, s.z1), (s.sigma2, s.z2)] {
                let rhs = z + bf.alpha * bf.alpha;
                assert!((sig * sig - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
            }
            let roots = poly_roots(&char_poly4(&bf.assemble()));
            assert!(match_multisets(&roots, &s.eigenvalues()) < 1e-10);
        }
    }

    #[test]
    fn pencil_special_form_at_zero() {
        let sf = SpecialForm::new(0.3, 0.4, Complex::new(0.2, 0.1), Complex::new(-0.5, 0.3), 0.8);
        let (l1, l2) = pencil_eigs(&sf.to_block_form(), 0.0);
        let want = (1.0f64 + 0.16).sqrt();
        assert!((l1 - want).abs() < 1e-14 && (l2 - want).abs() < 1e-14);
        let g = pencil_gram(&sf.to_block_form(), 0.0);
        assert!((g - CMat2::scalar(Complex::real(4.0))).frobenius() < 1e-14);
    }

    #[test]
    fn pencil_zero_blocks() {
        let alpha = Complex::new(0.3, -0.7);
        let bf = BlockForm::new(alpha, CMat2::zeros(), CMat2::zeros());
        for k in 0..16 {
            let t = k as f64 * 0.4;
            let (l1, l2) = pencil_eigs(&bf, t);
            let want = (Complex::cis(-t) * alpha).im.abs();
            assert!((l1 - want).abs() < 1e-15 && (l2 - want).abs() < 1e-15);
        }
    }

    #[test]
    fn pencil_matches_direct_eigensolve() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..300 {
            let bf = random_block(&mut rng);
            let a = bf.assemble();
            for k in 0..8 {
                let t = k as f64 * PI / 8.0 + 0.1;
                let (l1, l2) = pencil_eigs(&bf, t);
                let direct = hermitian_eigenvalues(&a.scale(Complex::cis(-t)).im_part()).unwrap();
                let mut mine = [-l1, -l2, l2, l1];
                mine.sort_by(f64::total_cmp);
                for i in 0..4 {
                    assert!((mine[i] - direct[i]).abs() < 1e-11 * (1.0 + a.frobenius()));
                }
            }
        }
    }

    #[test]
    fn generating_poly_zero_blocks() {
        let g = generating_poly(&BlockForm::new(Complex::new(0.0, 1.0), CMat2::zeros(), CMat2::zeros()));
        for k in 0..32 {
            let t = k as f64 * 0.2;
            assert!((g.xi1_at(t) - (1.0 + (2.0 * t).cos())).abs() < 1e-15);
            assert!((g.xi2_at(t) - t.cos().powi(4)).abs() < 1e-15);
        }
        assert_eq!(g.zeta2, Complex::real(2.0));
    }

    #[test]
    fn generating_poly_matches_pencil() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..500 {
            let bf = random_block(&mut rng);
            let g = generating_poly(&bf);
            let scale = 1.0 + bf.norm().powi(4);
            for k in 0..64 {
                let t = std::f64::consts::TAU * k as f64 / 64.0;
                let (l1, l2) = pencil_eigs(&bf, t);
                let (x1, x2) = (l1 * l1 + l2 * l2, l1 * l1 * l2 * l2);
                assert!((g.xi1_at(t) - x1).abs() <= 1e-10 * (1.0 + x1.abs()));
                assert!((g.xi2_at(t) - x2).abs() <= 1e-10 * scale);
                for l in [l1, l2] {
                    assert!(g.eval(l, t).abs() <= 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn boundary_identity_and_square() {
        let s = boundary_support(&CMat4::identity(), 64).unwrap();
        assert!(s.iter().all(|b| (b.point - Complex::real(1.0)).abs() < 1e-14));
        let verts = [Complex::real(1.0), Complex::new(0.0, 1.0), Complex::real(-1.0), Complex::new(0.0, -1.0)];
        let d = CMat4::from_diag(verts);
        for b in boundary_support(&d, 256).unwrap() {
            let h = verts.iter().map(|v| (Complex::cis(-b.theta) * *v).re).fold(f64::MIN, f64::max);
            assert!((b.support_value - h).abs() < 1e-13);
            assert!(verts.iter().any(|v| (*v - b.point).abs() < 1e-12));
        }
    }

    #[test]
    fn boundary_nilpotent_circle() {
        let mut m = CMat4::zeros();
        m[(0, 1)] = Complex::real(1.0);
        for b in boundary_support(&m, 128).unwrap() {
            assert!((b.point.abs() - 0.5).abs() < 1e-10);
            assert!((b.support_value - 0.5).abs() < 1e-12);
            assert!(((Complex::cis(-b.theta) * b.point).re - b.support_value).abs() < 1e-10);
        }
    }

    #[test]
    fn parallel_sampling_is_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let m: CMat4 = random_cmat(&mut rng);
        let a = boundary_support(&m, 300).unwrap();
        let b = boundary_support_parallel(&m, 300, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn central_symmetry_and_containment() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..20 {
            let bf = random_block(&mut rng);
            let a = bf.centered();
            let s = boundary_support(&a, 256).unwrap();
            let diam = diameter(&s);
            for k in 0..128 {
                assert!((s[k].point + s[k + 128].point).abs() <= 1e-8 * diam);
            }
            for sig in spectrum(&bf).eigenvalues() {
                for b in &s {
                    assert!((Complex::cis(-b.theta) * sig).re <= b.support_value + 1e-9);
                }
            }
        }
    }

    #[test]
    fn normal_matrix_has_four_edges() {
        let verts = [Complex::real(1.0), Complex::new(0.0, 1.0), Complex::real(-1.0), Complex::new(0.0, -1.0)];
        let d = CMat4::from_diag(verts);
        let s = boundary_support(&d, 512).unwrap();
        let flats = flat_portions(&d, &s, FLAT_GAP_TOL).unwrap();
        assert_eq!(flats.len(), 4);
        for f in &flats {
            assert!((f.length - 2f64.sqrt()).abs() < 1e-12);
        }
        assert_eq!(antipodal_pairs(&flats, 1e-9).len(), 2);

        // edges off the sampling grid are still found
        let rot = Complex::cis(0.123);
        let d = CMat4::from_diag(verts.map(|v| v * rot));
        let s = boundary_support(&d, 512).unwrap();
        let flats = flat_portions(&d, &s, FLAT_GAP_TOL).unwrap();
        assert_eq!(flats.len(), 4);
        for f in &flats {
            assert!((f.length - 2f64.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn single_ellipse_has_no_flats() {
        // A = [[0, cI], [dI, 0]] is unitarily a doubled 2×2, so W(A) is one ellipse
        let c = CMat2::scalar(Complex::new(1.0, 0.5));
        let d = CMat2::scalar(Complex::new(0.2, -0.3));
        let a = BlockForm::new(ZERO, c, d).assemble();
        let s = boundary_support(&a, 512).unwrap();
        assert!(flat_portions(&a, &s, FLAT_GAP_TOL).unwrap().is_empty());
    }
}
