//! Characteristic-polynomial route to eigenvalues, independent of the block
//! formulas: Faddeev–LeVerrier coefficients and Durand–Kerner roots.

use crate::linalg::{CMat, Complex, ONE, ZERO};

/// Coefficients of `det(λI − M)`, highest degree first (leading 1).
pub fn char_poly<const N: usize>(m: &CMat<N>) -> Vec<Complex> {
    let mut coeffs = vec![ONE];
    let mut mk = CMat::<N>::zeros();
    let mut prev = ONE;
    for k in 1..=N {
        mk = *m * mk + CMat::scalar(prev);
        let ck = -(*m * mk).trace() / k as f64;
        coeffs.push(ck);
        prev = ck;
        if k == N {
            break;
        }
    }
    coeffs
}

pub fn char_poly4(m: &CMat<4>) -> Vec<Complex> {
    char_poly(m)
}

pub fn eval_poly(coeffs: &[Complex], x: Complex) -> Complex {
    coeffs.iter().fold(ZERO, |acc, &c| acc * x + c)
}

/// All roots of a monic polynomial by simultaneous (Weierstrass) iteration.
pub fn poly_roots(coeffs: &[Complex]) -> Vec<Complex> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[0];
    let monic: Vec<Complex> = coeffs.iter().map(|&c| c / lead).collect();
    let bound = 1.0 + monic[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex> = (0..n).map(|k| seed.powi(k as u32) * bound * 0.5).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let xi = roots[i];
            let mut denom = ONE;
            for (j, &xj) in roots.iter().enumerate() {
                if j != i {
                    denom *= xi - xj;
                }
            }
            if denom.abs() == 0.0 {
                roots[i] = xi + Complex::new(1e-12 * bound, 1e-12 * bound);
                continue;
            }
            let step = eval_poly(&monic, xi) / denom;
            roots[i] = xi - step;
            moved = moved.max(step.abs());
        }
        if moved <= 1e-16 * bound {
            break;
        }
    }
    roots
}

/// `min_π max_i |a_i − b_π(i)|` over all pairings (brute force, small sets).
pub fn match_multisets(a: &[Complex], b: &[Complex]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut idx: Vec<usize> = (0..b.len()).collect();
    let mut best = f64::INFINITY;
    permute(&mut idx, 0, &mut |p| {
        let worst = a.iter().zip(p).map(|(x, &j)| (*x - b[j]).abs()).fold(0.0, f64::max);
        best = best.min(worst);
    });
    best
}

fn permute(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        f(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, f);
        idx.swap(k, i);
    }
}
