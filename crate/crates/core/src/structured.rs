//! The block forms and the structure-preserving reductions between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{schur_upper_2x2, CMat2, CMat4, Complex, ONE, ZERO};

/// Relative Frobenius defect below which `M*M` counts as a scalar matrix.
pub const UNITARY_TOL: f64 = 1e-9;

/// Block tolerance used when recognizing `[[αI, C], [D, βI]]` in a raw matrix.
pub const BLOCK_TOL: f64 = 1e-10;

/// `A = shift·I + [[αI, C], [D, −αI]]` with the Gram data `H = C*C + DD*`, `Z = DC` cached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockForm {
    pub alpha: Complex,
    pub c: CMat2,
    pub d: CMat2,
    pub h: CMat2,
    pub z: CMat2,
    pub shift: Complex,
}

impl BlockForm {
    pub fn new(alpha: Complex, c: CMat2, d: CMat2) -> Self {
        Self::with_shift(alpha, c, d, ZERO)
    }

    pub fn with_shift(alpha: Complex, c: CMat2, d: CMat2, shift: Complex) -> Self {
        let h = c.adjoint() * c + d * d.adjoint();
        let z = d * c;
        BlockForm { alpha, c, d, h, z, shift }
    }

    /// The full matrix, shift included.
    pub fn assemble(&self) -> CMat4 {
        self.centered() + CMat4::scalar(self.shift)
    }

    /// `[[αI, C], [D, −αI]]`.
    pub fn centered(&self) -> CMat4 {
        CMat4::from_blocks(&CMat2::scalar(self.alpha), &self.c, &self.d, &CMat2::scalar(-self.alpha))
    }

    /// `‖A − shift·I‖_F`.
    pub fn norm(&self) -> f64 {
        (2.0 * self.alpha.norm_sqr() + self.c.frobenius_sqr() + self.d.frobenius_sqr()).sqrt()
    }

    /// `factor · (A − shift·I)`, shift dropped.
    pub fn scaled(&self, factor: Complex) -> Self {
        BlockForm::new(self.alpha * factor, self.c.scale(factor), self.d.scale(factor))
    }

    /// Unitary similarity by `diag[U₁, U₂]`; the block structure is preserved.
    pub fn conjugated(&self, u1: &CMat2, u2: &CMat2) -> Self {
        BlockForm::with_shift(self.alpha, u1.adjoint() * self.c * *u2, u2.adjoint() * self.d * *u1, self.shift)
    }

    /// Same matrix with the shift dropped and scaled to `‖A‖_F = 1`.
    /// Returns the factor that was divided out.
    pub fn normalized(&self) -> (Self, f64) {
        let n = self.norm();
        if n == 0.0 {
            return (BlockForm::new(self.alpha, self.c, self.d), 1.0);
        }
        (self.scaled(Complex::real(1.0 / n)), n)
    }

    /// `e^{−iθ}C − e^{iθ}D*`.
    pub fn pencil(&self, theta: f64) -> CMat2 {
        self.c.scale(Complex::cis(-theta)) - self.d.adjoint().scale(Complex::cis(theta))
    }

    /// Recognizes a raw matrix with scalar 2×2 diagonal blocks.
    pub fn from_matrix(m: &CMat4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = m.frobenius();
        let tl = m.block(0, 0);
        let br = m.block(1, 1);
        let defect = [
            tl[(0, 1)].abs(),
            tl[(1, 0)].abs(),
            br[(0, 1)].abs(),
            br[(1, 0)].abs(),
            (tl[(0, 0)] - tl[(1, 1)]).abs(),
            (br[(0, 0)] - br[(1, 1)]).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        if defect > BLOCK_TOL * scale {
            return Err(Error::NotBlockStructured { defect: defect / scale.max(f64::MIN_POSITIVE) });
        }
        let alpha = (tl[(0, 0)] + tl[(1, 1)]) * 0.5;
        let beta = (br[(0, 0)] + br[(1, 1)]) * 0.5;
        Ok(normalize_block(alpha, beta, m.block(0, 1), m.block(1, 0)))
    }
}

/// Moves the center `(α+β)/2` into `shift`, leaving `β = −α`.
pub fn normalize_block(alpha: Complex, beta: Complex, c: CMat2, d: CMat2) -> BlockForm {
    BlockForm::with_shift((alpha - beta) * 0.5, c, d, (alpha + beta) * 0.5)
}

/// `[[αI, B*+I], [B−I, −αI]]` with `B = [[b₁, b], [0, b₂]]`, `α = u + iv`, `b ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialForm {
    pub u: f64,
    pub v: f64,
    pub b1: Complex,
    pub b2: Complex,
    pub b: f64,
}

impl SpecialForm {
    pub fn new(u: f64, v: f64, b1: Complex, b2: Complex, b: f64) -> Self {
        SpecialForm { u, v, b1, b2, b }
    }

    pub fn alpha(&self) -> Complex {
        Complex::new(self.u, self.v)
    }

    pub fn xi1(&self) -> f64 {
        self.b1.re
    }
    pub fn xi2(&self) -> f64 {
        self.b2.re
    }
    pub fn eta1(&self) -> f64 {
        self.b1.im
    }
    pub fn eta2(&self) -> f64 {
        self.b2.im
    }

    pub fn b_matrix(&self) -> CMat2 {
        CMat2::new(self.b1, Complex::real(self.b), ZERO, self.b2)
    }

    pub fn to_block_form(&self) -> BlockForm {
        let b = self.b_matrix();
        let id = CMat2::identity();
        BlockForm::new(self.alpha(), b.adjoint() + id, b - id)
    }

    pub fn matrix(&self) -> CMat4 {
        self.to_block_form().assemble()
    }
}

/// Reciprocal tridiagonal matrix with off-diagonal pairs `(a_j, 1/a_j)`, `a_j > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReciprocalForm {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl ReciprocalForm {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        for (index, value) in [(1, a1), (2, a2), (3, a3)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveEntry { index, value });
            }
        }
        Ok(ReciprocalForm { a1, a2, a3 })
    }

    /// The entries `a_j ≥ 1` realizing given `A_j = (a_j² + a_j⁻²)/2 ≥ 1`.
    pub fn from_big_a(big: [f64; 3]) -> Result<Self> {
        let pick = |aj: f64, index| {
            if !(aj >= 1.0) {
                return Err(Error::NonPositiveEntry { index, value: aj });
            }
            Ok((aj + (aj * aj - 1.0).sqrt()).sqrt())
        };
        Self::new(pick(big[0], 1)?, pick(big[1], 2)?, pick(big[2], 3)?)
    }

    /// `A_j = (a_j² + a_j⁻²)/2`.
    pub fn big_a(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3].map(|a| 0.5 * (a * a + 1.0 / (a * a)))
    }

    /// The tridiagonal matrix itself.
    pub fn matrix(&self) -> CMat4 {
        let mut m = CMat4::zeros();
        for (k, a) in [self.a1, self.a2, self.a3].into_iter().enumerate() {
            m[(k, k + 1)] = Complex::real(a);
            m[(k + 1, k)] = Complex::real(1.0 / a);
        }
        m
    }
}

/// Reorders the reciprocal matrix by the permutation `(1,3,2,4)` into block form with `α = β = 0`.
pub fn from_reciprocal(r: &ReciprocalForm) -> Result<BlockForm> {
    let r = ReciprocalForm::new(r.a1, r.a2, r.a3)?;
    let re = Complex::real;
    let c = CMat2::new(re(r.a1), ZERO, re(1.0 / r.a2), re(r.a3));
    let d = CMat2::new(re(1.0 / r.a1), re(r.a2), ZERO, re(1.0 / r.a3));
    Ok(BlockForm::new(ZERO, c, d))
}

/// Affine bookkeeping from a reduced special form back to the original matrix:
/// `S* · scale · (A − shift) · S = A_special`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub shift: Complex,
    pub scale: Complex,
    pub similarity: CMat4,
}

impl Frame {
    pub fn identity() -> Self {
        Frame { shift: ZERO, scale: ONE, similarity: CMat4::identity() }
    }

    /// Maps a point of `W(A_special)` to the corresponding point of `W(A)`.
    pub fn to_original(&self, w: Complex) -> Complex {
        self.shift + w / self.scale
    }

    /// Rotation angle applied on the way back.
    pub fn rotation(&self) -> f64 {
        -self.scale.arg()
    }

    /// Length factor applied on the way back.
    pub fn magnification(&self) -> f64 {
        1.0 / self.scale.abs()
    }
}

/// Relative defect `‖M*M − (tr/2)I‖_F / ‖M‖_F²` of being a scalar multiple of a unitary.
pub fn scalar_unitary_defect(m: &CMat2) -> f64 {
    let mm = m.adjoint() * *m;
    let half = mm.trace() * 0.5;
    let n2 = m.frobenius_sqr();
    if n2 == 0.0 {
        return 0.0;
    }
    (mm - CMat2::scalar(half)).frobenius() / n2
}

/// Rotates, scales and block-unitarily conjugates `bf` into the special form,
/// given `θ` with `e^{−iθ}C − e^{iθ}D* = √μ · unitary`.
pub fn reduce_to_special(bf: &BlockForm, theta: f64) -> Result<(SpecialForm, Frame)> {
    reduce_to_special_with(bf, theta, UNITARY_TOL)
}

pub fn reduce_to_special_with(bf: &BlockForm, theta: f64, tol: f64) -> Result<(SpecialForm, Frame)> {
    let m = bf.pencil(theta);
    let defect = scalar_unitary_defect(&m);
    let mu = 0.5 * (m.adjoint() * m).trace().re;
    let ref_scale = bf.c.frobenius_sqr() + bf.d.frobenius_sqr();
    if mu <= tol * ref_scale || mu == 0.0 {
        return Err(Error::ZeroMultiple { mu });
    }
    if defect > tol {
        return Err(Error::NotScalarUnitary { defect });
    }

    let scale = Complex::cis(-theta) * (2.0 / mu.sqrt());
    let rot = bf.scaled(scale);
    // C''* − D'' = 2W
    let w = (rot.c.adjoint() - rot.d) * 0.5;
    let c1 = rot.c * w;
    let d1 = w.adjoint() * rot.d;
    let b_mat = (c1.adjoint() + d1) * 0.5;
    let schur = schur_upper_2x2(&b_mat);
    let t = schur.upper;
    let sf = SpecialForm { u: rot.alpha.re, v: rot.alpha.im, b1: t[(0, 0)], b2: t[(1, 1)], b: t[(0, 1)].re };
    let u = schur.unitary;
    let similarity = CMat4::block_diag(&u, &(w * u));
    Ok((sf, Frame { shift: bf.shift, scale, similarity }))
}
