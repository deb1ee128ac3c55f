//! Tensor-product midpoint quadrature on the unit cube.

use crate::function::Integrand;

/// Midpoint rule with `per_dim` cells along every axis (`per_dim^d` evaluations).
pub fn midpoint_rule<I: Integrand + ?Sized>(f: &I, per_dim: usize) -> f64 {
    assert!(per_dim > 0);
    let d = f.dims();
    let total = per_dim.pow(d as u32);
    let h = 1.0 / per_dim as f64;
    let mut x = vec![0.0; d];
    let mut sum = 0.0;
    for flat in 0..total {
        let mut rem = flat;
        for slot in x.iter_mut().rev() {
            *slot = ((rem % per_dim) as f64 + 0.5) * h;
            rem /= per_dim;
        }
        sum += f.eval(&x);
    }
    sum / total as f64
}

/// Midpoint rule for a plain closure on `[0, 1]`.
pub fn midpoint_rule_1d(f: impl Fn(f64) -> f64, cells: usize) -> f64 {
    let h = 1.0 / cells as f64;
    (0..cells).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::TestFunction;

    #[test]
    fn exact_on_affine() {
        let f = TestFunction::new("aff", 2, 1.5, |x| 1.0 + x[0] + 0.0 * x[1]);
        assert!((midpoint_rule(&f, 8) - 1.5).abs() < 1e-15);
        assert!((midpoint_rule_1d(|x| 3.0 * x, 5) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn second_order_on_quadratic() {
        // error is h^2 / 12
        let q = midpoint_rule_1d(|x| x * x, 10);
        assert!((1.0 / 3.0 - q - 0.01 / 12.0).abs() < 1e-14);
    }
}
