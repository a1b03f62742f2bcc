use serde::Serialize;

use crate::criteria::EllipsePairParams;
use crate::nr::generating_poly;
use crate::structured::BlockForm;

/// How far `P_A` is from `((λ+p sinθ)² + Ω)((λ−p sinθ)² + Ω)` on a θ grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FactorizationResidual {
    /// `max(quadratic, constant)`.
    pub residual: f64,
    /// `max_θ |2(p² sin²θ − Ω) − Ξ₁| / (1 + ‖A‖²)`.
    pub quadratic: f64,
    /// `max_θ |(p² sin²θ + Ω)² − Ξ₂| / (1 + ‖A‖⁴)`.
    pub constant: f64,
}

/// Coefficient-matched comparison of the generating polynomial with the
/// product of the two quadratic factors. Grids below 16 points are raised to 16.
pub fn factorization_residual(bf: &BlockForm, params: &EllipsePairParams, grid: usize) -> FactorizationResidual {
    let grid = grid.max(16);
    let gp = generating_poly(bf);
    let n2 = bf.norm().powi(2);
    let (mut r1, mut r2) = (0.0f64, 0.0f64);
    for k in 0..grid {
        let theta = std::f64::consts::PI * k as f64 / grid as f64;
        let ps2 = (params.p * theta.sin()).powi(2);
        let omega = params.omega(theta);
        r1 = r1.max((2.0 * (ps2 - omega) - gp.xi1_at(theta)).abs());
        r2 = r2.max(((ps2 + omega).powi(2) - gp.xi2_at(theta)).abs());
    }
    let quadratic = r1 / (1.0 + n2);
    let constant = r2 / (1.0 + n2 * n2);
    FactorizationResidual { residual: quadratic.max(constant), quadratic, constant }
}
