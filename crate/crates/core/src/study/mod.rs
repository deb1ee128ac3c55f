//! Convergence studies: error curves per method, log-log rate fits, and
//! CSV emission.

mod config;
mod report;

pub use config::{StudyConfig, SurrogateKind};
pub use report::{emit_report, PLOT_FILE, ROWS_FILE, SLOPES_FILE};

use crate::error::{Error, Result};
use crate::estimate::{replicate_curve, Method};

/// Least-squares fit of `log2(rmse)` against `log2(budget)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    /// Standard error of the slope; NaN with only two usable rows.
    pub stderr: f64,
    pub used: usize,
    /// Budgets dropped because their rmse was zero.
    pub excluded: Vec<usize>,
}

pub fn fit_rate(rows: &[(usize, f64)]) -> Result<RateFit> {
    let (usable, zero): (Vec<_>, Vec<_>) = rows.iter().partition(|(_, r)| *r > 0.0);
    let excluded: Vec<usize> = zero.iter().map(|(b, _)| *b).collect();
    if usable.len() < 2 {
        return Err(Error::DegenerateFit { usable: usable.len(), excluded });
    }
    let n = usable.len() as f64;
    let xs: Vec<f64> = usable.iter().map(|(b, _)| (*b as f64).log2()).collect();
    let ys: Vec<f64> = usable.iter().map(|(_, r)| r.log2()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit { usable: usable.len(), excluded });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let stderr = if usable.len() > 2 {
        let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        (sse / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    Ok(RateFit { slope, stderr, used: usable.len(), excluded })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub method: Method,
    pub budget: usize,
    pub rmse: f64,
    pub std: f64,
    pub mean_estimate: f64,
    pub true_integral: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeRow {
    pub method: Method,
    /// NaN when the fit is degenerate.
    pub slope: f64,
    pub stderr: f64,
    pub points: usize,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub config: StudyConfig,
    pub rows: Vec<ReportRow>,
    pub slopes: Vec<SlopeRow>,
}

impl ConvergenceReport {
    pub fn slope(&self, method: Method) -> Option<&SlopeRow> {
        self.slopes.iter().find(|s| s.method == method)
    }

    pub fn row(&self, method: Method, budget: usize) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.method == method && r.budget == budget)
    }

    /// Checks `slope(rqmc-cf) < slope(rqmc) < slope(mc)` over whichever of
    /// those methods were run with a non-degenerate fit.
    pub fn check_rate_ordering(&self) -> Result<()> {
        let chain: Vec<&SlopeRow> = [Method::RqmcCf, Method::Rqmc, Method::Mc]
            .into_iter()
            .filter_map(|m| self.slope(m))
            .filter(|s| !s.degenerate)
            .collect();
        for pair in chain.windows(2) {
            if pair[0].slope >= pair[1].slope {
                return Err(Error::InvariantViolated(format!(
                    "slope({}) = {:.3} is not below slope({}) = {:.3}",
                    pair[0].method, pair[0].slope, pair[1].method, pair[1].slope
                )));
            }
        }
        Ok(())
    }
}

/// Runs every configured method over the budget grid and fits rates over
/// the budgets that remain after dropping the `slope_skip` smallest.
pub fn convergence_study(config: &StudyConfig) -> Result<ConvergenceReport> {
    config.validate()?;
    let f = config.test_function()?;
    let budgets = config.budgets();
    let surrogate = config.surrogate_config();

    let mut rows = Vec::with_capacity(budgets.len() * config.methods.len());
    let mut slopes = Vec::with_capacity(config.methods.len());
    for &method in &config.methods {
        let curve = replicate_curve(method, &f, &budgets, config.replicates, config.seed, &surrogate)?;
        rows.extend(curve.iter().map(|e| ReportRow {
            method,
            budget: e.budget,
            rmse: e.rmse,
            std: e.std,
            mean_estimate: e.value,
            true_integral: e.true_integral,
        }));
        let window: Vec<(usize, f64)> = curve.iter().skip(config.slope_skip).map(|e| (e.budget, e.rmse)).collect();
        slopes.push(match fit_rate(&window) {
            Ok(fit) => SlopeRow { method, slope: fit.slope, stderr: fit.stderr, points: fit.used, degenerate: false },
            Err(Error::DegenerateFit { usable, .. }) => {
                SlopeRow { method, slope: f64::NAN, stderr: f64::NAN, points: usable, degenerate: true }
            }
            Err(e) => return Err(e),
        });
    }
    Ok(ConvergenceReport { config: config.clone(), rows, slopes })
}
