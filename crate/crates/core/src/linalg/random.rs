//! Seeded random generators for property checks and randomized verification.

use rand::Rng;

use super::complex::Complex;
use super::matrix::{inner, CMat, CMat2, CMat4, CVec};

/// Components uniform in `[-1, 1)`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_cmat<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> CMat<N> {
    CMat::from_fn(|_, _| random_complex(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    random_cmat::<4, R>(rng).re_part()
}

/// Haar-ish unitary by Gram–Schmidt on a random matrix.
pub fn random_unitary<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> CMat<N> {
    loop {
        let m: CMat<N> = random_cmat(rng);
        let mut cols: [CVec<N>; N] = std::array::from_fn(|j| m.column(j));
        let mut ok = true;
        for j in 0..N {
            for k in 0..j {
                let proj = inner(&cols[j], &cols[k]);
                let ck = cols[k];
                for (x, y) in cols[j].iter_mut().zip(ck) {
                    *x -= y * proj;
                }
            }
            let n = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-3 {
                ok = false;
                break;
            }
            for x in cols[j].iter_mut() {
                *x = *x / n;
            }
        }
        if ok {
            return CMat::from_columns(cols);
        }
    }
}

pub fn random_unitary2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    random_unitary(rng)
}

pub fn random_unitary4<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    random_unitary(rng)
}
