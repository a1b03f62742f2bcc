use super::complex::{Complex, ZERO};
use super::matrix::CMat2;

/// Unitary triangularization `W* B W = T` of a 2×2 matrix.
#[derive(Clone, Copy, Debug)]
pub struct Schur2 {
    pub unitary: CMat2,
    /// Upper triangular, `upper[(0,1)]` real and non-negative.
    pub upper: CMat2,
}

/// Puts `B` in upper-triangular form by a unitary similarity, with the
/// off-diagonal entry made real and non-negative by a trailing diagonal phase.
///
/// The leading diagonal entry is the eigenvalue nearer to `B[0][0]`, so an
/// already triangular `B` comes back with `W` diagonal.
pub fn schur_upper_2x2(b: &CMat2) -> Schur2 {
    let (e1, e2) = b.eigenvalues();
    let b00 = b[(0, 0)];
    let other = if (e1 - b00).abs() <= (e2 - b00).abs() { e2 } else { e1 };

    // (B − other·I) maps onto the eigenspace of the leading eigenvalue; in the
    // defective case its range is the single eigenvector.
    let shifted = *b - CMat2::scalar(other);
    let c0 = shifted.column(0);
    let c1 = shifted.column(1);
    let n0 = c0[0].norm_sqr() + c0[1].norm_sqr();
    let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
    let (col, n) = if n0 >= n1 { (c0, n0) } else { (c1, n1) };
    let mut w = if n == 0.0 {
        CMat2::identity()
    } else {
        let s = 1.0 / n.sqrt();
        let v = [col[0] * s, col[1] * s];
        CMat2::new(v[0], -v[1].conj(), v[1], v[0].conj())
    };

    let mut t = w.adjoint() * *b * w;
    let t01 = t[(0, 1)];
    let r = t01.abs();
    if r > 0.0 {
        let phase = t01.conj() / r;
        w[(0, 1)] *= phase;
        w[(1, 1)] *= phase;
        t[(0, 1)] = Complex::real(r);
        t[(1, 0)] *= phase.conj();
    } else {
        t[(0, 1)] = ZERO;
    }
    Schur2 { unitary: w, upper: t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::random_cmat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(b: &CMat2) -> Schur2 {
        let s = schur_upper_2x2(b);
        let scale = b.frobenius().max(f64::MIN_POSITIVE);
        let w = s.unitary;
        assert!((w.adjoint() * w - CMat2::identity()).frobenius() < 1e-14);
        assert!((w * s.upper * w.adjoint() - *b).frobenius() <= 1e-12 * scale);
        assert!(s.upper[(1, 0)].abs() <= 1e-13 * scale);
        assert_eq!(s.upper[(0, 1)].im, 0.0);
        assert!(s.upper[(0, 1)].re >= 0.0);
        s
    }

    #[test]
    fn triangular_input_is_kept() {
        let b = CMat2::new(Complex::new(0.6, -0.2), Complex::real(1.0), ZERO, Complex::new(0.4, -0.2));
        let s = check(&b);
        assert!((s.upper - b).frobenius() < 1e-15);
        assert!(s.unitary[(0, 1)].abs() < 1e-15 && s.unitary[(1, 0)].abs() < 1e-15);
    }

    #[test]
    fn hermitian_becomes_diagonal() {
        let b = CMat2::new(Complex::real(2.0), Complex::new(1.0, 1.0), Complex::new(1.0, -1.0), Complex::real(-1.0));
        let s = check(&b);
        assert!(s.upper[(0, 1)].abs() < 1e-14);
    }

    #[test]
    fn scalar_and_nilpotent() {
        let s = check(&CMat2::scalar(Complex::new(2.0, 1.0)));
        assert_eq!(s.unitary, CMat2::identity());
        let n = CMat2::new(ZERO, ZERO, Complex::new(0.0, 3.0), ZERO);
        let s = check(&n);
        assert!((s.upper[(0, 1)].re - 3.0).abs() < 1e-15);
        // defective with nonzero eigenvalue
        let j = CMat2::new(Complex::real(1.0), Complex::real(-1.0), Complex::real(1.0), Complex::real(3.0));
        let s = check(&j);
        assert!((s.upper[(0, 0)] - Complex::real(2.0)).abs() < 1e-7);
    }

    #[test]
    fn random_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10_000 {
            let b: CMat2 = random_cmat(&mut rng);
            check(&b);
        }
    }
}
