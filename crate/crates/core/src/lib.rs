//! Quasi-Monte Carlo integration on the unit cube with control functionals.
//!
//! A control functional replaces the integrand `φ` by `φ − s + μ(s)`, where
//! `s` is a surrogate fitted to evaluations of `φ` on a deterministic grid
//! and `μ(s)` is its exact integral. The integral is unchanged while the
//! Hardy–Krause variation, the constant in the Koksma–Hlawka bound, shrinks
//! as the surrogate is refined.
//!
//! Modules:
//!
//! * [`lds`]: iid, Halton, scrambled-and-shifted Halton, and midpoint grids.
//! * [`discrepancy`]: star discrepancy, variation, and the error bound.
//! * [`control_functional`]: grid and kernel surrogates, the transform.
//! * [`estimate`]: test functions and the mc / qmc / rqmc / rqmc-cf estimators.
//! * [`study`]: convergence studies, rate fits and CSV reports.

pub mod control_functional;
pub mod discrepancy;
pub mod error;
pub mod estimate;
pub mod function;
pub mod lds;
pub mod quadrature;
pub mod rng;
pub mod study;

pub use control_functional::{
    cf_transform, fit_grid_surrogate, fit_kernel_surrogate, residual_variation, GridSurrogate, KernelParams,
    KernelSurrogate, Surrogate, TransformedIntegrand,
};
pub use discrepancy::{
    hk_variation_1d, kh_bound, star_discrepancy_1d, star_discrepancy_exact, DiscrepancyResult, VariationResult,
};
pub use error::{Error, Result};
pub use estimate::{replicate_rmse_curve, run_estimator, Estimate, Method, SurrogateConfig};
pub use function::{builtin, Integrand, TestFunction};
pub use lds::{generate, radical_inverse, random_shift, Point, PointSet, SequenceKind, SequenceSpec};
pub use study::{convergence_study, emit_report, fit_rate, ConvergenceReport, StudyConfig};
