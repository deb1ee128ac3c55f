//! The four compared estimators and their replicate statistics.
//!
//! Every method is charged by evaluations of the original integrand `φ`.
//! For `rqmc-cf` a budget `B` is split between the surrogate grid (about
//! `B/2` nodes) and the randomized point set (the remainder); the grid is
//! deterministic, so it is fitted and charged once per `(φ, B)` cell and
//! reused by every replicate.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::control_functional::{cf_transform, GridSurrogate, KernelParams, KernelSurrogate, Surrogate};
use crate::error::{Error, Result};
use crate::function::{Integrand, TestFunction};
use crate::lds::{floor_root, generate, PointSet, SequenceSpec};
use crate::rng::derive_seed;

pub use crate::function::{builtin, BUILTIN_NAMES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Mc,
    Qmc,
    Rqmc,
    RqmcCf,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Mc, Method::Qmc, Method::Rqmc, Method::RqmcCf];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mc => "mc",
            Method::Qmc => "qmc",
            Method::Rqmc => "rqmc",
            Method::RqmcCf => "rqmc-cf",
        }
    }

    fn seed_tag(self) -> u64 {
        match self {
            Method::Mc => 1,
            Method::Qmc => 2,
            Method::Rqmc => 3,
            Method::RqmcCf => 4,
        }
    }

    /// Smallest admissible budget in `dims` dimensions.
    pub fn min_budget(self, dims: usize) -> usize {
        match self {
            Method::RqmcCf => 2usize.saturating_mul(1usize.checked_shl(dims as u32).unwrap_or(usize::MAX)),
            _ => 2,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL.into_iter().find(|m| m.as_str() == s).ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// Which surrogate `rqmc-cf` fits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SurrogateConfig {
    /// Multilinear interpolant on the endpoint-inclusive grid.
    #[default]
    Grid,
    /// Kernel ridge regression on the midpoint grid.
    Kernel(KernelParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub method: Method,
    /// Evaluations of `φ` charged to the estimate.
    pub budget: usize,
    /// Mean over replicates.
    pub value: f64,
    pub replicate_values: Vec<f64>,
    /// Sample standard deviation over replicates (zero for a single one).
    pub std: f64,
    pub abs_error: f64,
    /// Root-mean-square of per-replicate errors.
    pub rmse: f64,
    pub true_integral: f64,
}

impl Estimate {
    fn from_replicates(method: Method, budget: usize, values: Vec<f64>, truth: f64) -> Self {
        let r = values.len() as f64;
        let value = values.iter().sum::<f64>() / r;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - value) * (v - value)).sum::<f64>() / (r - 1.0)).sqrt()
        } else {
            0.0
        };
        let rmse = (values.iter().map(|v| (v - truth) * (v - truth)).sum::<f64>() / r).sqrt();
        Estimate {
            method,
            budget,
            value,
            replicate_values: values,
            std,
            abs_error: (value - truth).abs(),
            rmse,
            true_integral: truth,
        }
    }
}

/// Plain equal-weight average of `f` over `ps`.
pub fn plain_average<I: Integrand + ?Sized>(f: &I, ps: &PointSet) -> f64 {
    ps.iter().map(|p| f.eval(p)).sum::<f64>() / ps.len() as f64
}

/// Sub-seed of one `(method, budget, replicate)` cell.
pub fn replicate_seed(root: u64, method: Method, budget: usize, replicate: usize) -> u64 {
    derive_seed(root, &[method.seed_tag(), budget as u64, replicate as u64])
}

/// Grid resolution per axis and node count used by `rqmc-cf` at `budget`.
pub fn cf_split(budget: usize, dims: usize) -> (usize, usize) {
    let half = budget / 2;
    let m = if dims == 1 { half } else { floor_root(half, dims) };
    (m, m.pow(dims as u32))
}

fn fit_surrogate(f: &TestFunction, m: usize, config: &SurrogateConfig) -> Result<Surrogate> {
    Ok(match *config {
        SurrogateConfig::Grid => GridSurrogate::fit(f, m)?.into(),
        SurrogateConfig::Kernel(params) => {
            let v = generate(&SequenceSpec::midpoint_grid(f.dims(), m), m.pow(f.dims() as u32))?;
            KernelSurrogate::fit(f, &v, params)?.into()
        }
    })
}

/// Runs `replicates` independent repetitions of `method` at `budget`.
///
/// `qmc` is deterministic and always runs a single replicate.
pub fn run_estimator(
    method: Method,
    f: &TestFunction,
    budget: usize,
    replicates: usize,
    seed: u64,
    surrogate: &SurrogateConfig,
) -> Result<Estimate> {
    let d = f.dims();
    let required = method.min_budget(d);
    if budget < required {
        return Err(Error::InsufficientBudget { method: method.to_string(), budget, required });
    }
    if replicates == 0 {
        return Err(Error::InvalidArgument("need at least one replicate".into()));
    }
    let replicates = if method == Method::Qmc { 1 } else { replicates };

    let (fit_cost, cf) = if method == Method::RqmcCf {
        let (m, _) = cf_split(budget, d);
        let (phi, counter) = f.instrumented();
        let s = Arc::new(fit_surrogate(&phi, m, surrogate)?);
        (counter.get() as usize, Some(s))
    } else {
        (0, None)
    };
    let n = budget - fit_cost;

    let outcomes: Vec<Result<(f64, u64)>> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let sub = replicate_seed(seed, method, budget, r);
            let spec = match method {
                Method::Mc => SequenceSpec::iid(d, sub),
                Method::Qmc => SequenceSpec::halton(d),
                Method::Rqmc | Method::RqmcCf => SequenceSpec::scrambled_shifted_halton(d, sub),
            };
            let ps = generate(&spec, n)?;
            let (phi, counter) = f.instrumented();
            let value = match &cf {
                Some(s) => plain_average(&cf_transform(&phi, s.clone())?, &ps),
                None => plain_average(&phi, &ps),
            };
            Ok((value, counter.get()))
        })
        .collect();

    let mut values = Vec::with_capacity(replicates);
    let mut per_replicate = None;
    for outcome in outcomes {
        let (v, used) = outcome?;
        debug_assert!(per_replicate.is_none_or(|p| p == used));
        per_replicate = Some(used);
        values.push(v);
    }
    let charged = fit_cost + per_replicate.unwrap_or(0) as usize;
    debug_assert_eq!(charged, budget);
    Ok(Estimate::from_replicates(method, charged, values, f.true_integral()))
}

/// One point of a convergence curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub budget: usize,
    pub rmse: f64,
    pub std: f64,
}

/// Full estimates for each budget in `budgets` (strictly increasing).
pub fn replicate_curve(
    method: Method,
    f: &TestFunction,
    budgets: &[usize],
    replicates: usize,
    seed: u64,
    surrogate: &SurrogateConfig,
) -> Result<Vec<Estimate>> {
    if budgets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("budgets must be strictly increasing".into()));
    }
    budgets
        .iter()
        .map(|&b| {
            run_estimator(method, f, b, replicates, seed, surrogate).map_err(|e| Error::Cell {
                method: method.to_string(),
                budget: b,
                source: Box::new(e),
            })
        })
        .collect()
}

pub fn replicate_rmse_curve(
    method: Method,
    f: &TestFunction,
    budgets: &[usize],
    replicates: usize,
    seed: u64,
    surrogate: &SurrogateConfig,
) -> Result<Vec<CurvePoint>> {
    Ok(replicate_curve(method, f, budgets, replicates, seed, surrogate)?
        .into_iter()
        .map(|e| CurvePoint { budget: e.budget, rmse: e.rmse, std: e.std })
        .collect())
}
