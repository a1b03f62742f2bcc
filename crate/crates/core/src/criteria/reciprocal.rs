use serde::Serialize;

use super::Tolerances;
use crate::error::Result;
use crate::structured::ReciprocalForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReciprocalClass {
    Elliptical,
    BiElliptical,
    Neither,
}

/// Shape of `W(A)` for a reciprocal tridiagonal matrix, from
/// `A_j = (a_j² + a_j⁻²)/2`: bi-elliptical iff `A₁ = A₃ > 1` and `A₂ = 1`;
/// elliptical iff `A₂ = φA₁ + (1−φ)A₃` (or with `A₁`, `A₃` swapped),
/// `φ` the golden ratio, and some `A_j > 1`.
pub fn reciprocal_classify(r: &ReciprocalForm) -> Result<ReciprocalClass> {
    reciprocal_classify_with(r, &Tolerances::default())
}

pub fn reciprocal_classify_with(r: &ReciprocalForm, tol: &Tolerances) -> Result<ReciprocalClass> {
    let r = ReciprocalForm::new(r.a1, r.a2, r.a3)?;
    let [a1, a2, a3] = r.big_a();
    let eps = tol.criterion * a1.max(a2).max(a3);
    if (a1 - a3).abs() <= eps && a1 > 1.0 + eps && (a2 - 1.0).abs() <= eps {
        return Ok(ReciprocalClass::BiElliptical);
    }
    let phi = 0.5 * (1.0 + 5f64.sqrt());
    let psi = 1.0 - phi;
    let golden = (a2 - (phi * a1 + psi * a3)).abs() <= eps || (a2 - (phi * a3 + psi * a1)).abs() <= eps;
    let strict = [a1, a2, a3].iter().any(|&a| a > 1.0 + eps);
    Ok(if golden && strict { ReciprocalClass::Elliptical } else { ReciprocalClass::Neither })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn three_one_three() {
        let r = ReciprocalForm::from_big_a([3.0, 1.0, 3.0]).unwrap();
        assert!((r.a1 - (3.0 + 2.0 * 2f64.sqrt()).sqrt()).abs() < 1e-14);
        assert_eq!(reciprocal_classify(&r).unwrap(), ReciprocalClass::BiElliptical);
        // a₃ = 1/a₁ gives the same A₃
        let r = ReciprocalForm::new(r.a1, 1.0, 1.0 / r.a1).unwrap();
        assert_eq!(reciprocal_classify(&r).unwrap(), ReciprocalClass::BiElliptical);
    }

    #[test]
    fn all_ones_is_neither() {
        let r = ReciprocalForm::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(reciprocal_classify(&r).unwrap(), ReciprocalClass::Neither);
    }

    #[test]
    fn golden_relation() {
        let phi = 0.5 * (1.0 + 5f64.sqrt());
        let a2 = phi * 2.0 + (1.0 - phi);
        let r = ReciprocalForm::from_big_a([2.0, a2, 1.0]).unwrap();
        assert_eq!(reciprocal_classify(&r).unwrap(), ReciprocalClass::Elliptical);
        let r = ReciprocalForm::from_big_a([1.0, a2, 2.0]).unwrap();
        assert_eq!(reciprocal_classify(&r).unwrap(), ReciprocalClass::Elliptical);
        let r = ReciprocalForm::from_big_a([2.0, a2 + 0.1, 1.0]).unwrap();
        assert_eq!(reciprocal_classify(&r).unwrap(), ReciprocalClass::Neither);
    }

    #[test]
    fn rejects_nonpositive() {
        let r = ReciprocalForm { a1: 1.0, a2: -1.0, a3: 1.0 };
        assert_eq!(reciprocal_classify(&r), Err(Error::NonPositiveEntry { index: 2, value: -1.0 }));
    }
}
