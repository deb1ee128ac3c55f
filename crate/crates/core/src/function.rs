//! Integrands with known integrals.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Anything that can be evaluated on `[0, 1]^d`.
pub trait Integrand: Send + Sync {
    fn dims(&self) -> usize;
    fn eval(&self, x: &[f64]) -> f64;
}

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type Derivative = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An integrand on the unit cube together with its exact integral.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    dims: usize,
    eval: Evaluator,
    true_integral: f64,
    derivative: Option<Derivative>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("dims", &self.dims)
            .field("true_integral", &self.true_integral)
            .field("derivative", &self.derivative.is_some())
            .finish()
    }
}

impl TestFunction {
    pub fn new<F>(name: impl Into<String>, dims: usize, true_integral: f64, eval: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        TestFunction { name: name.into(), dims, eval: Arc::new(eval), true_integral, derivative: None }
    }

    /// Attaches `φ'`; only meaningful in one dimension.
    pub fn with_derivative<D>(mut self, derivative: D) -> Self
    where
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn true_integral(&self) -> f64 {
        self.true_integral
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn derivative(&self, x: f64) -> Option<f64> {
        self.derivative.as_ref().map(|d| d(x))
    }

    /// A copy whose evaluations are tallied by the returned counter.
    ///
    /// Derivative calls are not counted.
    pub fn instrumented(&self) -> (TestFunction, EvalCounter) {
        let counter = EvalCounter::default();
        let tally = counter.0.clone();
        let inner = self.eval.clone();
        let f = TestFunction {
            eval: Arc::new(move |x| {
                tally.fetch_add(1, Ordering::Relaxed);
                inner(x)
            }),
            ..self.clone()
        };
        (f, counter)
    }
}

impl Integrand for TestFunction {
    fn dims(&self) -> usize {
        self.dims
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }
}

/// Shared tally of integrand evaluations.
#[derive(Debug, Clone, Default)]
pub struct EvalCounter(Arc<AtomicU64>);

impl EvalCounter {
    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

fn fig1_1d(x: f64) -> f64 {
    (TAU * x).sin() + 4.0 * x
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 4] = ["fig1", "linear", "constant", "prod-fig1"];

/// Built-in test functions.
///
/// * `fig1`: `sin(2πx) + 4x` on `[0, 1]`, integral 2.
/// * `linear`: `(4/d) Σ x_j`, integral 2 (`4x` in one dimension).
/// * `constant`: `1`, integral 1.
/// * `prod-fig1`: `Π_j (sin(2πx_j) + 4x_j)`, integral `2^d`.
pub fn builtin(name: &str, dims: usize) -> Result<TestFunction> {
    if dims == 0 {
        return Err(Error::UnsupportedDims(0));
    }
    let f = match name {
        "fig1" => {
            if dims != 1 {
                return Err(Error::WrongDimension { expected: 1, found: dims });
            }
            TestFunction::new("fig1", 1, 2.0, |x| fig1_1d(x[0])).with_derivative(|x| TAU * (TAU * x).cos() + 4.0)
        }
        "linear" => {
            let scale = 4.0 / dims as f64;
            let f = TestFunction::new("linear", dims, 2.0, move |x| scale * x.iter().sum::<f64>());
            if dims == 1 {
                f.with_derivative(|_| 4.0)
            } else {
                f
            }
        }
        "constant" => {
            let f = TestFunction::new("constant", dims, 1.0, |_| 1.0);
            if dims == 1 {
                f.with_derivative(|_| 0.0)
            } else {
                f
            }
        }
        "prod-fig1" => {
            let f = TestFunction::new("prod-fig1", dims, 2f64.powi(dims as i32), |x| {
                x.iter().map(|&xj| fig1_1d(xj)).product()
            });
            if dims == 1 {
                f.with_derivative(|x| TAU * (TAU * x).cos() + 4.0)
            } else {
                f
            }
        }
        other => return Err(Error::UnknownFunction(other.to_string())),
    };
    Ok(f)
}
