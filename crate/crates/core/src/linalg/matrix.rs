use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::complex::{Complex, ONE, ZERO};

/// Square complex matrix of fixed size, stored row-major.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CMat<const N: usize> {
    #[serde(with = "rows")]
    pub rows: [[Complex; N]; N],
}

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

/// Complex column vector of fixed length.
pub type CVec<const N: usize> = [Complex; N];

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMat<N> {
    pub const fn zeros() -> Self {
        CMat { rows: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        Self::scalar(ONE)
    }

    pub fn scalar(s: Complex) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.rows[i][i] = s;
        }
        m
    }

    pub const fn from_rows(rows: [[Complex; N]; N]) -> Self {
        CMat { rows }
    }

    pub fn from_diag(d: [Complex; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.rows[i][i] = d[i];
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.rows[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_columns(cols: [CVec<N>; N]) -> Self {
        Self::from_fn(|i, j| cols[j][i])
    }

    pub fn column(&self, j: usize) -> CVec<N> {
        std::array::from_fn(|i| self.rows[i][j])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i])
    }

    pub fn trace(&self) -> Complex {
        (0..N).map(|i| self.rows[i][i]).sum()
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.rows.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().map(|z| z.abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Complex) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * k)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * k)
    }

    /// Hermitian part `(M + M*)/2`.
    pub fn re_part(&self) -> Self {
        Self::from_fn(|i, j| (self.rows[i][j] + self.rows[j][i].conj()) * 0.5)
    }

    /// Skew part `(M − M*)/(2i)`, Hermitian.
    pub fn im_part(&self) -> Self {
        Self::from_fn(|i, j| {
            let d = self.rows[i][j] - self.rows[j][i].conj();
            // d / (2i) = -i d / 2
            Complex::new(d.im * 0.5, -d.re * 0.5)
        })
    }

    pub fn mul_vec(&self, x: &CVec<N>) -> CVec<N> {
        std::array::from_fn(|i| (0..N).map(|k| self.rows[i][k] * x[k]).sum())
    }

    /// `M M* − M* M`
    pub fn self_commutator(&self) -> Self {
        let a = self.adjoint();
        *self * a - a * *self
    }

    pub fn is_normal(&self, rel_tol: f64) -> bool {
        let scale = self.frobenius_sqr();
        self.self_commutator().frobenius() <= rel_tol * scale.max(f64::MIN_POSITIVE)
    }

    pub fn hermitian_defect(&self) -> f64 {
        (*self - self.adjoint()).frobenius()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex {
        let mut a = self.rows;
        let mut det = ONE;
        for col in 0..N {
            let pivot = (col..N).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs())).unwrap_or(col);
            if a[pivot][col].norm_sqr() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col];
            det *= p;
            let inv = p.recip();
            for r in col + 1..N {
                let f = a[r][col] * inv;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for c in col..N {
                    let t = a[col][c];
                    a[r][c] -= f * t;
                }
            }
        }
        det
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|z| z.is_finite())
    }
}

impl CMat2 {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        CMat::from_rows([[a, b], [c, d]])
    }

    pub fn det2(&self) -> Complex {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    /// Both eigenvalues, `m ± √(((a−d)/2)² + bc)` with the `+` root first.
    pub fn eigenvalues(&self) -> (Complex, Complex) {
        let [[a, b], [c, d]] = self.rows;
        let m = (a + d) * 0.5;
        let h = (a - d) * 0.5;
        let s = (h * h + b * c).sqrt();
        (m + s, m - s)
    }

    /// Eigenvalues of a Hermitian 2×2, descending.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.rows[0][0].re;
        let d = self.rows[1][1].re;
        let off = (self.rows[0][1].abs() + self.rows[1][0].abs()) * 0.5;
        let m = 0.5 * (a + d);
        let r = (0.5 * (a - d)).hypot(off);
        (m + r, m - r)
    }
}

impl CMat4 {
    /// `[[tl, tr], [bl, br]]` from 2×2 blocks.
    pub fn from_blocks(tl: &CMat2, tr: &CMat2, bl: &CMat2, br: &CMat2) -> Self {
        CMat::from_fn(|i, j| match (i < 2, j < 2) {
            (true, true) => tl.rows[i][j],
            (true, false) => tr.rows[i][j - 2],
            (false, true) => bl.rows[i - 2][j],
            (false, false) => br.rows[i - 2][j - 2],
        })
    }

    /// The 2×2 block at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize) -> CMat2 {
        CMat::from_fn(|i, j| self.rows[2 * bi + i][2 * bj + j])
    }

    pub fn block_diag(a: &CMat2, b: &CMat2) -> Self {
        Self::from_blocks(a, &CMat2::zeros(), &CMat2::zeros(), b)
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.rows[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.rows[i][j]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] + o.rows[i][j])
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] - o.rows[i][j])
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.rows[i][j])
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::from_fn(|i, j| (0..N).map(|k| self.rows[i][k] * o.rows[k][j]).sum())
    }
}

impl<const N: usize> Mul<Complex> for CMat<N> {
    type Output = Self;
    fn mul(self, k: Complex) -> Self {
        self.scale(k)
    }
}

impl<const N: usize> Mul<f64> for CMat<N> {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale_real(k)
    }
}

/// `⟨x, y⟩ = Σ x_i · conj(y_i)`, linear in the first argument.
pub fn inner<const N: usize>(x: &CVec<N>, y: &CVec<N>) -> Complex {
    x.iter().zip(y).map(|(a, b)| *a * b.conj()).sum()
}

pub fn vec_norm<const N: usize>(x: &CVec<N>) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Quadratic form `⟨M x, x⟩`.
pub fn field_value<const N: usize>(m: &CMat<N>, x: &CVec<N>) -> Complex {
    inner(&m.mul_vec(x), x)
}

mod rows {
    use super::Complex;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(rows: &[[Complex; N]; N], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<Complex>> = rows.iter().map(|r| r.to_vec()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[[Complex; N]; N], D::Error> {
        let v: Vec<Vec<Complex>> = Vec::deserialize(d)?;
        if v.len() != N || v.iter().any(|r| r.len() != N) {
            return Err(D::Error::custom(format!("expected a {N}x{N} grid")));
        }
        let mut out = [[Complex::default(); N]; N];
        for (i, r) in v.into_iter().enumerate() {
            for (j, z) in r.into_iter().enumerate() {
                out[i][j] = z;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::random_cmat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn adjoint_involution_and_trace_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m: CMat4 = random_cmat(&mut rng);
            let n: CMat4 = random_cmat(&mut rng);
            assert_eq!(m.adjoint().adjoint(), m);
            let t1 = (m * n).trace();
            let t2 = (n * m).trace();
            assert!((t1 - t2).abs() <= 1e-14 * (1.0 + t1.abs()) * 4.0);
        }
    }

    #[test]
    fn det_of_block_triangular_matches_product() {
        let d =
            CMat4::from_diag([Complex::new(1.0, 1.0), Complex::real(2.0), Complex::new(0.0, -3.0), Complex::real(0.5)]);
        let expected = Complex::new(1.0, 1.0) * 2.0 * Complex::new(0.0, -3.0) * 0.5;
        assert!((d.det() - expected).abs() < 1e-14);
        let mut u = d;
        u[(0, 3)] = Complex::new(7.0, 1.0);
        u[(1, 2)] = Complex::new(-2.0, 0.5);
        assert!((u.det() - expected).abs() < 1e-13);
    }

    #[test]
    fn im_part_is_hermitian_and_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m: CMat4 = random_cmat(&mut rng);
        let re = m.re_part();
        let im = m.im_part();
        assert!(re.hermitian_defect() < 1e-15);
        assert!(im.hermitian_defect() < 1e-15);
        let back = re + im * crate::linalg::I;
        assert!((back - m).frobenius() < 1e-14);
    }

    #[test]
    fn grid_serde_roundtrip() {
        let m = CMat2::new(Complex::real(1.0), Complex::new(0.0, 2.0), Complex::new(-1.0, 0.5), Complex::real(4.0));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[[1.0,0.0],[0.0,2.0]],[[-1.0,0.5],[4.0,0.0]]]");
        let back: CMat2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CMat4>(&s).is_err());
    }
}
