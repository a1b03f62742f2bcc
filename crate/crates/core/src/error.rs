use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: ‖M − M*‖ = {defect:.3e} against ‖M‖ = {norm:.3e}")]
    NotHermitian { defect: f64, norm: f64 },

    #[error("reciprocal entry a{index} = {value} must be positive")]
    NonPositiveEntry { index: usize, value: f64 },

    #[error("e^(-iθ)C − e^(iθ)D* is not a scalar multiple of a unitary (relative defect {defect:.3e})")]
    NotScalarUnitary { defect: f64 },

    #[error("e^(-iθ)C − e^(iθ)D* is (numerically) zero, μ = {mu:.3e}")]
    ZeroMultiple { mu: f64 },

    #[error("α is not real (v = {v:.3e})")]
    NotRealAlpha { v: f64 },

    #[error("α is not purely imaginary and nonzero (u = {u:.3e}, v = {v:.3e})")]
    NotImagAlpha { u: f64, v: f64 },

    #[error("α = 0: any b > 0 works when b1, b2 satisfy the zero-diagonal conditions")]
    AlphaZero,

    #[error("degenerate ellipse: z = {z} < √(x² + y²) = {r}")]
    DegenerateEllipse { z: f64, r: f64 },

    #[error("empty point set")]
    EmptyInput,

    #[error("diagonal 2×2 blocks are not scalar (defect {defect:.3e})")]
    NotBlockStructured { defect: f64 },

    #[error("eigenvalues of Im((e^(-iθ)A)²) do not form two pairs (spread {spread:.3e})")]
    Unpaired { spread: f64 },

    #[error("{what}: need at least {min}, got {got}")]
    TooFew { what: &'static str, min: usize, got: usize },

    #[error("non-finite input")]
    NonFinite,
}
