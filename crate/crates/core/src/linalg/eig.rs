//! Deterministic cyclic Jacobi eigensolver for small Hermitian matrices.

use super::complex::{Complex, ZERO};
use super::matrix::{CMat, CVec};
use crate::error::{Error, Result};

/// Largest number of full Jacobi sweeps before giving up on convergence.
pub const MAX_SWEEPS: usize = 60;
/// Off-diagonal magnitude, relative to the Frobenius norm, that counts as zero.
pub const CONVERGENCE_TOL: f64 = 1e-14;
/// Hermitian defect, relative to the Frobenius norm, accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermEig<const N: usize> {
    /// Ascending.
    pub values: [f64; N],
    /// `vectors[k]` belongs to `values[k]`; orthonormal.
    pub vectors: [CVec<N>; N],
}

pub type HermEig4 = HermEig<4>;

impl<const N: usize> HermEig<N> {
    pub fn max(&self) -> f64 {
        self.values[N - 1]
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    /// Largest minus second largest eigenvalue.
    pub fn top_gap(&self) -> f64 {
        self.values[N - 1] - self.values[N - 2]
    }

    pub fn spread(&self) -> f64 {
        self.values[N - 1] - self.values[0]
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations in
/// row-major pivot order.
///
/// Fails with [`Error::NotHermitian`] when `‖M − M*‖_F > 1e-12·‖M‖_F`.
pub fn hermitian_eig<const N: usize>(m: &CMat<N>) -> Result<HermEig<N>> {
    let norm = m.frobenius();
    let defect = m.hermitian_defect();
    if !(defect <= HERMITIAN_TOL * norm) {
        return Err(Error::NotHermitian { defect, norm });
    }
    let mut a = m.re_part().rows;
    for (i, row) in a.iter_mut().enumerate() {
        row[i].im = 0.0;
    }
    let mut v = CMat::<N>::identity().rows;

    let target = CONVERGENCE_TOL * norm;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_max(&a);
        if off <= target {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let values = std::array::from_fn(|k| a[order[k]][order[k]].re);
    let vectors = std::array::from_fn(|k| std::array::from_fn(|i| v[i][order[k]]));
    Ok(HermEig { values, vectors })
}

/// 4×4 instance of [`hermitian_eig`].
pub fn hermitian_eig4(m: &CMat<4>) -> Result<HermEig4> {
    hermitian_eig(m)
}

fn off_diagonal_max<const N: usize>(a: &[[Complex; N]; N]) -> f64 {
    let mut off = 0.0f64;
    for p in 0..N {
        for q in p + 1..N {
            off = off.max(a[p][q].abs());
        }
    }
    off
}

/// Annihilates `a[p][q]` with `G = diag-phase · real rotation`, updating
/// `a ← G* a G` and `v ← v G`.
fn rotate<const N: usize>(a: &mut [[Complex; N]; N], v: &mut [[Complex; N]; N], p: usize, q: usize) {
    let apq = a[p][q];
    let r = apq.abs();
    if r == 0.0 {
        return;
    }
    let w = apq / r;
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let gpp = Complex::real(c);
    let gpq = Complex::real(s);
    let gqp = -(w.conj() * s);
    let gqq = w.conj() * c;

    for row in a.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * gpp + xq * gqp;
        row[q] = xp * gpq + xq * gqq;
    }
    for k in 0..N {
        let (xp, xq) = (a[p][k], a[q][k]);
        a[p][k] = gpp.conj() * xp + gqp.conj() * xq;
        a[q][k] = gpq.conj() * xp + gqq.conj() * xq;
    }
    a[p][q] = ZERO;
    a[q][p] = ZERO;
    a[p][p].im = 0.0;
    a[q][q].im = 0.0;

    for row in v.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * gpp + xq * gqp;
        row[q] = xp * gpq + xq * gqq;
    }
}

/// Eigenvalues only.
pub fn hermitian_eigenvalues<const N: usize>(m: &CMat<N>) -> Result<[f64; N]> {
    hermitian_eig(m).map(|e| e.values)
}
