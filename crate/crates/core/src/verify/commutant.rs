//! Dimension of `{X : XM = MX, XM* = M*X}` by one-sided Jacobi SVD.

use crate::linalg::{CMat4, Complex, ZERO};

const SWEEPS: usize = 60;
/// Relative threshold below which a singular value counts as zero.
pub const NULL_TOL: f64 = 1e-9;

/// Dimension of the commutant of `{M, M*}`; 1 means unitarily irreducible.
pub fn commutant_dim(m: &CMat4) -> usize {
    let sv = commutant_singular_values(m);
    let cut = NULL_TOL * m.frobenius().max(f64::MIN_POSITIVE);
    sv.iter().filter(|&&s| s <= cut).count()
}

/// Singular values (descending) of the 32×16 map `vec X ↦ ([X,M], [X,M*])`.
pub fn commutant_singular_values(m: &CMat4) -> Vec<f64> {
    let ms = m.adjoint();
    // column (i,j) is the image of the unit matrix E_ij
    let mut cols: Vec<[Complex; 32]> = (0..16)
        .map(|idx| {
            let (i, j) = (idx / 4, idx % 4);
            let mut col = [ZERO; 32];
            for (off, a) in [(0, m), (16, &ms)] {
                // (E_ij A − A E_ij)[r][c] = δ_ri A[j][c] − A[r][i] δ_jc
                for r in 0..4 {
                    for c in 0..4 {
                        let mut v = ZERO;
                        if r == i {
                            v += a[(j, c)];
                        }
                        if c == j {
                            v -= a[(r, i)];
                        }
                        col[off + 4 * r + c] = v;
                    }
                }
            }
            col
        })
        .collect();
    hestenes(&mut cols);
    let mut sv: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

fn norm(c: &[Complex]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthogonalizes the columns in place; their norms are then the singular values.
fn hestenes(cols: &mut [[Complex; 32]]) {
    let n = cols.len();
    for _ in 0..SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (norm(&cols[i]).powi(2), norm(&cols[j]).powi(2));
                let g: Complex = cols[i].iter().zip(&cols[j]).map(|(x, y)| x.conj() * *y).sum();
                let ga = g.abs();
                if ga <= 1e-15 * (a * b).sqrt() || ga == 0.0 {
                    continue;
                }
                rotated = true;
                // phase-align column j so that the inner product is real positive
                let ph = g.conj() / ga;
                let zeta = (b - a) / (2.0 * ga);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(j);
                let (ci, cj) = (&mut left[i], &mut right[0]);
                for k in 0..32 {
                    let x = ci[k];
                    let y = cj[k] * ph;
                    ci[k] = x * c - y * s;
                    cj[k] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_cmat, random_unitary4};
    use crate::linalg::{CMat2, ONE};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distinct_diagonal() {
        let d = CMat4::from_diag([1.0, 2.0, 3.0, 4.0].map(Complex::real));
        assert_eq!(commutant_dim(&d), 4);
    }

    #[test]
    fn jordan_blocks() {
        let j = CMat2::new(ZERO, ONE, ZERO, ZERO);
        let m = CMat4::block_diag(&j, &(j + CMat2::identity()));
        assert_eq!(commutant_dim(&m), 2);
        let m = CMat4::block_diag(&j, &j);
        // two equivalent blocks: the commutant is M₂(ℂ) ⊗ I
        assert_eq!(commutant_dim(&m), 4);
    }

    #[test]
    fn scalar_and_generic() {
        assert_eq!(commutant_dim(&CMat4::identity()), 16);
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..50 {
            let m: CMat4 = random_cmat(&mut rng);
            assert_eq!(commutant_dim(&m), 1);
        }
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let a: CMat2 = random_cmat(&mut rng);
        let b: CMat2 = random_cmat(&mut rng);
        let u = random_unitary4(&mut rng);
        let m = u * CMat4::block_diag(&a, &b) * u.adjoint();
        assert_eq!(commutant_dim(&m), 2);
    }

    #[test]
    fn singular_values_match_gram_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let m: CMat4 = random_cmat(&mut rng);
        let sv = commutant_singular_values(&m);
        // Σσ² equals the squared Frobenius norm of the map's matrix
        let ms = m.adjoint();
        let mut fro = 0.0;
        for idx in 0..16 {
            let (i, j) = (idx / 4, idx % 4);
            let mut e = CMat4::zeros();
            e[(i, j)] = ONE;
            fro += (e * m - m * e).frobenius_sqr() + (e * ms - ms * e).frobenius_sqr();
        }
        let s2: f64 = sv.iter().map(|s| s * s).sum();
        assert!((s2 - fro).abs() < 1e-10 * fro);
    }
}
