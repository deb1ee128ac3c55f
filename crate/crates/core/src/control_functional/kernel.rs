use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::function::{Integrand, TestFunction};
use crate::lds::PointSet;

/// Squared-exponential kernel ridge regression hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub lengthscale: f64,
    pub ridge: f64,
    /// Fit a constant offset (the target mean) before solving for weights.
    pub fit_intercept: bool,
}

impl KernelParams {
    pub fn new(lengthscale: f64, ridge: f64) -> Self {
        KernelParams { lengthscale, ridge, fit_intercept: true }
    }

    /// `ℓ = 0.2·√d`, `λ = 1e-8`.
    pub fn default_for(dims: usize) -> Self {
        Self::new(0.2 * (dims as f64).sqrt(), 1e-8)
    }
}

/// `s(x) = b + Σ_i w_i exp(−‖x − v_i‖² / (2ℓ²))`.
#[derive(Debug, Clone)]
pub struct KernelSurrogate {
    centers: PointSet,
    weights: Vec<f64>,
    intercept: f64,
    params: KernelParams,
    mean: f64,
    solve_residual: f64,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `∫₀¹ exp(−(x − u)² / (2ℓ²)) du`, via the error function.
pub fn kernel_integral_1d(x: f64, lengthscale: f64) -> f64 {
    let s = FRAC_1_SQRT_2 / lengthscale;
    lengthscale * (PI / 2.0).sqrt() * (libm::erf((1.0 - x) * s) + libm::erf(x * s))
}

impl KernelSurrogate {
    pub fn fit<I: Integrand + ?Sized>(f: &I, centers: &PointSet, params: KernelParams) -> Result<Self> {
        if centers.dims() != f.dims() {
            return Err(Error::DimensionMismatch { expected: f.dims(), found: centers.dims() });
        }
        if params.lengthscale.is_nan() || params.lengthscale <= 0.0 || params.ridge.is_nan() || params.ridge < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "need lengthscale > 0 and ridge >= 0, got {} and {}",
                params.lengthscale, params.ridge
            )));
        }
        let n = centers.len();
        if params.ridge == 0.0 {
            for i in 0..n {
                for j in 0..i {
                    if centers.point(i) == centers.point(j) {
                        return Err(Error::SingularSystem(format!("centers {j} and {i} coincide and ridge is zero")));
                    }
                }
            }
        }
        let y: Vec<f64> = centers.iter().map(|p| f.eval(p)).collect();
        let intercept = if params.fit_intercept { y.iter().sum::<f64>() / n as f64 } else { 0.0 };
        let rhs = DVector::from_iterator(n, y.iter().map(|v| v - intercept));

        let inv_two_l2 = 0.5 / (params.lengthscale * params.lengthscale);
        let mut gram = DMatrix::from_fn(n, n, |i, j| (-sq_dist(centers.point(i), centers.point(j)) * inv_two_l2).exp());
        for i in 0..n {
            gram[(i, i)] += params.ridge;
        }
        let chol = gram
            .clone()
            .cholesky()
            .ok_or_else(|| Error::SingularSystem("Gram matrix is not positive definite".into()))?;
        let mut w = chol.solve(&rhs);
        // one step of iterative refinement
        let r = &rhs - &gram * &w;
        w += chol.solve(&r);
        let resid = (&rhs - &gram * &w).norm();
        let y_norm = rhs.norm().max(f64::MIN_POSITIVE);

        let weights: Vec<f64> = w.iter().copied().collect();
        let mean = intercept
            + centers
                .iter()
                .zip(&weights)
                .map(|(c, wi)| wi * c.iter().map(|&x| kernel_integral_1d(x, params.lengthscale)).product::<f64>())
                .sum::<f64>();
        Ok(KernelSurrogate {
            centers: centers.clone(),
            weights,
            intercept,
            params,
            mean,
            solve_residual: resid / y_norm,
        })
    }

    pub fn dims(&self) -> usize {
        self.centers.dims()
    }

    pub fn centers(&self) -> &PointSet {
        &self.centers
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn params(&self) -> KernelParams {
        self.params
    }

    /// `‖(K + λI)w − y‖ / ‖y‖` after the solve (targets centred when an
    /// intercept is fitted).
    pub fn solve_residual(&self) -> f64 {
        self.solve_residual
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let inv_two_l2 = 0.5 / (self.params.lengthscale * self.params.lengthscale);
        self.intercept
            + self.centers.iter().zip(&self.weights).map(|(c, w)| w * (-sq_dist(x, c) * inv_two_l2).exp()).sum::<f64>()
    }

    pub fn derivative_1d(&self, x: f64) -> f64 {
        assert_eq!(self.dims(), 1);
        let l2 = self.params.lengthscale * self.params.lengthscale;
        self.centers
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| {
                let dx = x - c[0];
                -w * dx / l2 * (-0.5 * dx * dx / l2).exp()
            })
            .sum()
    }
}

pub fn fit_kernel_surrogate(f: &TestFunction, v: &PointSet, lengthscale: f64, ridge: f64) -> Result<KernelSurrogate> {
    KernelSurrogate::fit(f, v, KernelParams::new(lengthscale, ridge))
}
