//! Control functionals: surrogates with analytically known means and the
//! transformed integrand `φ̂ = φ − s + μ(s)`.
//!
//! Because `∫ s = μ(s)` exactly, `∫ φ̂ = ∫ φ` for any surrogate. The
//! variation of `φ̂` is the variation of the residual `φ − s`, which shrinks
//! as the surrogate improves, so the Koksma–Hlawka bound of an equal-weight
//! rule applied to `φ̂` shrinks with it.

mod grid;
mod kernel;

use std::sync::Arc;

pub use grid::{fit_grid_surrogate, GridSurrogate};
pub use kernel::{fit_kernel_surrogate, kernel_integral_1d, KernelParams, KernelSurrogate};

use crate::discrepancy::{hk_variation_1d, hk_variation_grid_2d, DEFAULT_VARIATION_RESOLUTION};
use crate::error::{Error, Result};
use crate::function::{Integrand, TestFunction};

/// Mesh size per axis of the two-dimensional variation proxy.
pub const VARIATION_MESH_2D: usize = 256;

#[derive(Debug, Clone)]
pub enum Surrogate {
    Grid(GridSurrogate),
    Kernel(KernelSurrogate),
}

impl Surrogate {
    pub fn dims(&self) -> usize {
        match self {
            Surrogate::Grid(s) => s.dims(),
            Surrogate::Kernel(s) => s.dims(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Surrogate::Grid(s) => s.eval(x),
            Surrogate::Kernel(s) => s.eval(x),
        }
    }

    /// `μ(s) = ∫ s`.
    pub fn mean(&self) -> f64 {
        match self {
            Surrogate::Grid(s) => s.mean(),
            Surrogate::Kernel(s) => s.mean(),
        }
    }

    pub fn derivative_1d(&self, x: f64) -> f64 {
        match self {
            Surrogate::Grid(s) => s.derivative_1d(x),
            Surrogate::Kernel(s) => s.derivative_1d(x),
        }
    }

    /// Number of integrand evaluations spent on the fit.
    pub fn fit_evaluations(&self) -> usize {
        match self {
            Surrogate::Grid(s) => s.node_count(),
            Surrogate::Kernel(s) => s.centers().len(),
        }
    }
}

impl From<GridSurrogate> for Surrogate {
    fn from(s: GridSurrogate) -> Self {
        Surrogate::Grid(s)
    }
}

impl From<KernelSurrogate> for Surrogate {
    fn from(s: KernelSurrogate) -> Self {
        Surrogate::Kernel(s)
    }
}

/// `x ↦ φ(x) − s(x) + μ(s)`.
///
/// Each evaluation costs exactly one evaluation of `φ`.
#[derive(Debug, Clone)]
pub struct TransformedIntegrand {
    base: TestFunction,
    surrogate: Arc<Surrogate>,
}

impl TransformedIntegrand {
    pub fn base(&self) -> &TestFunction {
        &self.base
    }

    pub fn surrogate(&self) -> &Surrogate {
        &self.surrogate
    }

    /// `φ(x) − s(x)`, the part of `φ̂` that carries the randomness.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.base.eval(x) - self.surrogate.eval(x)
    }

    /// The transform as a [`TestFunction`], keeping `φ`'s integral and, in
    /// one dimension, the derivative `φ' − s'` when `φ'` is known.
    pub fn to_test_function(&self) -> TestFunction {
        let this = self.clone();
        let name = format!("cf({})", self.base.name());
        let f = TestFunction::new(name, self.dims(), self.base.true_integral(), move |x| this.eval(x));
        if self.dims() == 1 && self.base.has_derivative() {
            let this = self.clone();
            f.with_derivative(move |x| this.base.derivative(x).unwrap() - this.surrogate.derivative_1d(x))
        } else {
            f
        }
    }
}

impl Integrand for TransformedIntegrand {
    fn dims(&self) -> usize {
        self.base.dims()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.residual(x) + self.surrogate.mean()
    }
}

pub fn cf_transform(f: &TestFunction, surrogate: impl Into<Arc<Surrogate>>) -> Result<TransformedIntegrand> {
    let surrogate = surrogate.into();
    if surrogate.dims() != f.dims() {
        return Err(Error::DimensionMismatch { expected: f.dims(), found: surrogate.dims() });
    }
    Ok(TransformedIntegrand { base: f.clone(), surrogate })
}

/// Variation of the grid-surrogate residual for each resolution in `m_values`.
///
/// Returns `(node count, variation)` pairs. One dimension uses
/// [`hk_variation_1d`]; two dimensions use the grid-difference proxy on a
/// [`VARIATION_MESH_2D`]² mesh.
pub fn residual_variation(f: &TestFunction, m_values: &[usize]) -> Result<Vec<(usize, f64)>> {
    let d = f.dims();
    if !(1..=2).contains(&d) {
        return Err(Error::UnsupportedDims(d));
    }
    m_values
        .iter()
        .map(|&m| {
            let s = GridSurrogate::fit(f, m)?;
            let nodes = s.node_count();
            let phi_hat = cf_transform(f, Surrogate::Grid(s))?;
            let v = if d == 1 {
                hk_variation_1d(&phi_hat.to_test_function(), DEFAULT_VARIATION_RESOLUTION)?
            } else {
                hk_variation_grid_2d(&phi_hat, VARIATION_MESH_2D)?
            };
            Ok((nodes, v.value))
        })
        .collect()
}
