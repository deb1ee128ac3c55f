use crate::error::{Error, Result};
use crate::function::{Integrand, TestFunction};

/// Piecewise-multilinear interpolant of `φ` on the tensor grid with nodes
/// `{j / (m − 1) : j = 0..m}` along each axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSurrogate {
    dims: usize,
    resolution: usize,
    nodes: Vec<f64>,
    /// Row-major, last axis fastest.
    values: Vec<f64>,
    mean: f64,
}

#[inline]
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    if t == 1.0 {
        b
    } else {
        a + t * (b - a)
    }
}

/// Exact integral of the piecewise-linear interpolant through `(nodes, vals)`.
///
/// Products and sums are carried with error-free transformations and
/// Neumaier compensation, so affine data integrate to the correctly rounded
/// value.
fn trapezoid(nodes: &[f64], vals: &[f64]) -> f64 {
    let mut acc = CompensatedSum::default();
    for (x, v) in nodes.windows(2).zip(vals.windows(2)) {
        let width = x[1] - x[0];
        let (s_hi, s_lo) = two_sum(v[0], v[1]);
        let p = width * s_hi;
        acc.add(0.5 * p);
        acc.add(0.5 * width.mul_add(s_hi, -p));
        acc.add(0.5 * width * s_lo);
    }
    acc.total()
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

impl GridSurrogate {
    /// Evaluates `f` at every node (`m^d` evaluations).
    pub fn fit<I: Integrand + ?Sized>(f: &I, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidResolution(resolution));
        }
        let dims = f.dims();
        let nodes = grid_nodes(resolution);
        let total =
            resolution.checked_pow(dims as u32).ok_or_else(|| Error::InvalidArgument("grid too large".into()))?;
        let mut x = vec![0.0; dims];
        let values = (0..total)
            .map(|flat| {
                let mut rem = flat;
                for slot in x.iter_mut().rev() {
                    *slot = nodes[rem % resolution];
                    rem /= resolution;
                }
                f.eval(&x)
            })
            .collect::<Vec<_>>();
        let mean = Self::contract(&nodes, values.clone(), dims);
        Ok(GridSurrogate { dims, resolution, nodes, values, mean })
    }

    // Integrates one axis at a time, innermost first.
    fn contract(nodes: &[f64], mut vals: Vec<f64>, dims: usize) -> f64 {
        let m = nodes.len();
        for _ in 0..dims {
            vals = vals.chunks_exact(m).map(|line| trapezoid(nodes, line)).collect();
        }
        vals[0]
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    pub fn node_coords(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node_values(&self) -> &[f64] {
        &self.values
    }

    /// Closed-form integral of the interpolant over the unit cube.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let m = self.resolution;
        let x = x.clamp(0.0, 1.0);
        let mut j = ((x * (m - 1) as f64) as usize).min(m - 2);
        while j > 0 && x < self.nodes[j] {
            j -= 1;
        }
        while j + 2 < m && x >= self.nodes[j + 1] {
            j += 1;
        }
        let (lo, hi) = (self.nodes[j], self.nodes[j + 1]);
        (j, (x - lo) / (hi - lo))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dims);
        let m = self.resolution;
        let cells: Vec<(usize, f64)> = x.iter().map(|&xi| self.locate(xi)).collect();
        let corners = 1usize << self.dims;
        let mut buf: Vec<f64> = (0..corners)
            .map(|mask| {
                let flat = cells
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (k, &(j, _))| acc * m + j + ((mask >> (self.dims - 1 - k)) & 1));
                self.values[flat]
            })
            .collect();
        // fold the last axis first: pairs (…0, …1) are adjacent in `buf`
        for &(_, t) in cells.iter().rev() {
            buf = buf.chunks_exact(2).map(|p| lerp(p[0], p[1], t)).collect();
        }
        buf[0]
    }

    /// Slope of the interpolant (one dimension only).
    pub fn derivative_1d(&self, x: f64) -> f64 {
        assert_eq!(self.dims, 1);
        let (j, _) = self.locate(x);
        (self.values[j + 1] - self.values[j]) / (self.nodes[j + 1] - self.nodes[j])
    }
}

pub(crate) fn grid_nodes(resolution: usize) -> Vec<f64> {
    let last = (resolution - 1) as f64;
    (0..resolution).map(|j| j as f64 / last).collect()
}

/// Fits the grid surrogate of `f` with `m` nodes per axis.
pub fn fit_grid_surrogate(f: &TestFunction, m: usize) -> Result<GridSurrogate> {
    GridSurrogate::fit(f, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::builtin;
    use crate::quadrature::midpoint_rule_1d;
    use approx::assert_abs_diff_eq;

    #[test]
    fn square_on_three_nodes() {
        let f = TestFunction::new("sq", 1, 1.0 / 3.0, |x| x[0] * x[0]);
        let s = fit_grid_surrogate(&f, 3).unwrap();
        assert_eq!(s.node_coords(), &[0.0, 0.5, 1.0]);
        assert_eq!(s.node_values(), &[0.0, 0.25, 1.0]);
        assert_abs_diff_eq!(s.mean(), 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eval(&[0.25]), 0.125, epsilon = 1e-15);
    }

    #[test]
    fn reproduces_linear_and_constant() {
        let lin = builtin("linear", 1).unwrap();
        for m in [2, 3, 7, 16] {
            let s = fit_grid_surrogate(&lin, m).unwrap();
            assert_abs_diff_eq!(s.mean(), 2.0, epsilon = 1e-14);
            for x in [0.0, 0.13, 0.5, 0.77, 0.999] {
                assert_abs_diff_eq!(s.eval(&[x]), 4.0 * x, epsilon = 1e-14);
            }
        }
        for d in 1..=3 {
            let c = builtin("constant", d).unwrap();
            let s = fit_grid_surrogate(&c, 5).unwrap();
            assert_eq!(s.mean(), 1.0);
            assert_eq!(s.eval(&vec![0.3; d]), 1.0);
        }
    }

    #[test]
    fn bilinear_is_exact_in_2d() {
        let f = TestFunction::new("bl", 2, 0.0, |x| 1.0 + 2.0 * x[0] - 3.0 * x[1] + 5.0 * x[0] * x[1]);
        let s = fit_grid_surrogate(&f, 4).unwrap();
        for x in [[0.1, 0.9], [0.5, 0.5], [0.99, 0.01]] {
            assert_abs_diff_eq!(s.eval(&x), f.eval(&x), epsilon = 1e-13);
        }
        assert_abs_diff_eq!(s.mean(), 1.0 + 1.0 - 1.5 + 1.25, epsilon = 1e-14);
    }

    #[test]
    fn nodes_reproduce_stored_values() {
        let f = builtin("prod-fig1", 2).unwrap();
        let s = fit_grid_surrogate(&f, 6).unwrap();
        let nodes = s.node_coords().to_vec();
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate() {
                assert_eq!(s.eval(&[a, b]), s.node_values()[i * 6 + j]);
            }
        }
    }

    #[test]
    fn mean_matches_quadrature_of_interpolant() {
        let f = builtin("fig1", 1).unwrap();
        for m in [4, 9, 33] {
            let s = fit_grid_surrogate(&f, m).unwrap();
            let q = midpoint_rule_1d(|x| s.eval(&[x]), 1 << 18);
            assert_abs_diff_eq!(s.mean(), q, epsilon = 1e-8);
        }
    }

    #[test]
    fn rejects_small_resolution() {
        let f = builtin("fig1", 1).unwrap();
        assert!(matches!(fit_grid_surrogate(&f, 1), Err(Error::InvalidResolution(1))));
    }

    #[test]
    fn derivative_is_cell_slope() {
        let f = TestFunction::new("sq", 1, 1.0 / 3.0, |x| x[0] * x[0]);
        let s = fit_grid_surrogate(&f, 3).unwrap();
        assert_abs_diff_eq!(s.derivative_1d(0.2), 0.5);
        assert_abs_diff_eq!(s.derivative_1d(0.7), 1.5);
    }
}
