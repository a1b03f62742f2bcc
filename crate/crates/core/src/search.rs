//! One-dimensional minimization helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimization of `f` on `[a, b]` until the bracket is
/// narrower than `tol`. Returns the best abscissa seen and its value.
pub fn golden_section_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let (mut best_x, mut best_f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..400 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
            if f1 < best_f {
                best_x = x1;
                best_f = f1;
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
            if f2 < best_f {
                best_x = x2;
                best_f = f2;
            }
        }
    }
    (best_x, best_f)
}

/// Indices of cyclic local minima of `values` (ties count as minima).
pub fn cyclic_local_minima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    (0..n)
        .filter(|&k| {
            let prev = values[(k + n - 1) % n];
            let next = values[(k + 1) % n];
            values[k] <= prev && values[k] <= next
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_v_shaped_minimum() {
        let (x, fx) = golden_section_min(|t| (t - 0.3).abs(), 0.0, 1.0, 1e-14);
        assert!((x - 0.3).abs() < 1e-13);
        assert!(fx < 1e-13);
    }

    #[test]
    fn local_minima_wrap() {
        let v = [0.0, 1.0, 2.0, 1.0, 0.5, 0.7];
        assert_eq!(cyclic_local_minima(&v), vec![0, 4]);
    }
}
