//! Star discrepancy of point sets and Hardy–Krause variation of integrands:
//! the two factors of the Koksma–Hlawka error bound
//!
//! ```text
//! | (1/N) Σ φ(u_n) − ∫ φ | ≤ V(φ) · D*(u_1, …, u_N)
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::function::{Integrand, TestFunction};
use crate::lds::PointSet;
use crate::quadrature::midpoint_rule_1d;

/// Default cap on `corners · N · d` for [`star_discrepancy_exact`].
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Default number of midpoint cells for [`hk_variation_1d`].
pub const DEFAULT_VARIATION_RESOLUTION: usize = 1 << 16;

/// Step of the central-difference fallback when no derivative is supplied.
pub const FINITE_DIFFERENCE_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscrepancyMethod {
    Exact1d,
    ExactEnumeration,
    UpperBound,
}

impl fmt::Display for DiscrepancyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscrepancyMethod::Exact1d => "exact-1d",
            DiscrepancyMethod::ExactEnumeration => "exact-enumeration",
            DiscrepancyMethod::UpperBound => "upper-bound",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyResult {
    pub value: f64,
    pub method: DiscrepancyMethod,
    pub n: usize,
    pub dims: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariationMethod {
    DerivativeQuadrature1d,
    GridDifferences,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationResult {
    pub value: f64,
    pub method: VariationMethod,
    pub resolution: usize,
    /// `|V(resolution) − V(resolution / 2)|`.
    pub refinement_delta: f64,
}

/// Exact star discrepancy of a one-dimensional point set.
///
/// Uses `D* = 1/(2N) + max_i |x_(i) − (2i − 1)/(2N)|` over the sorted points.
pub fn star_discrepancy_1d(ps: &PointSet) -> Result<DiscrepancyResult> {
    if ps.dims() != 1 {
        return Err(Error::WrongDimension { expected: 1, found: ps.dims() });
    }
    let n = ps.len();
    let mut xs: Vec<f64> = ps.axis(0).collect();
    xs.sort_by(f64::total_cmp);
    let two_n = 2.0 * n as f64;
    let worst = xs.iter().enumerate().map(|(i, &x)| (x - (2 * i + 1) as f64 / two_n).abs()).fold(0.0, f64::max);
    Ok(DiscrepancyResult { value: (1.0 / two_n + worst).min(1.0), method: DiscrepancyMethod::Exact1d, n, dims: 1 })
}

/// Exact star discrepancy in any dimension, by critical-corner enumeration
/// under [`DEFAULT_ENUMERATION_BUDGET`].
pub fn star_discrepancy_exact(ps: &PointSet) -> Result<DiscrepancyResult> {
    star_discrepancy_exact_with_budget(ps, DEFAULT_ENUMERATION_BUDGET)
}

/// Exact star discrepancy by enumerating every critical corner.
///
/// Candidate corners are the product of each axis' distinct coordinates plus
/// `1.0`. At a corner `y` the open box `[0, y)` gives `vol(y) − #{x < y}/N`
/// and the closed box `[0, y]` gives `#{x ≤ y}/N − vol(y)`; the supremum over
/// all anchored boxes is attained at one of these.
pub fn star_discrepancy_exact_with_budget(ps: &PointSet, budget: u128) -> Result<DiscrepancyResult> {
    let d = ps.dims();
    let n = ps.len();
    let axes: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            let mut v: Vec<f64> = ps.axis(j).collect();
            v.push(1.0);
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        })
        .collect();
    let corners: u128 = axes.iter().map(|a| a.len() as u128).product();
    let required = corners * n as u128 * d as u128;
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let inv_n = 1.0 / n as f64;
    let mut idx = vec![0usize; d];
    let mut corner = vec![0.0; d];
    let mut best = 0.0f64;
    'outer: loop {
        for (c, (a, &i)) in corner.iter_mut().zip(axes.iter().zip(&idx)) {
            *c = a[i];
        }
        let vol: f64 = corner.iter().product();
        let (mut open, mut closed) = (0usize, 0usize);
        for p in ps.iter() {
            if p.iter().zip(&corner).all(|(x, y)| x <= y) {
                closed += 1;
                if p.iter().zip(&corner).all(|(x, y)| x < y) {
                    open += 1;
                }
            }
        }
        let local = (vol - open as f64 * inv_n).max(closed as f64 * inv_n - vol);
        best = best.max(local);

        for j in (0..d).rev() {
            idx[j] += 1;
            if idx[j] < axes[j].len() {
                continue 'outer;
            }
            idx[j] = 0;
        }
        break;
    }
    Ok(DiscrepancyResult { value: best.clamp(0.0, 1.0), method: DiscrepancyMethod::ExactEnumeration, n, dims: d })
}

fn variation_1d_at(f: &TestFunction, cells: usize) -> f64 {
    if f.has_derivative() {
        midpoint_rule_1d(|x| f.derivative(x).unwrap().abs(), cells)
    } else {
        let h = FINITE_DIFFERENCE_STEP;
        midpoint_rule_1d(
            |x| {
                let (lo, hi) = ((x - h).max(0.0), (x + h).min(1.0));
                ((f.eval(&[hi]) - f.eval(&[lo])) / (hi - lo)).abs()
            },
            cells,
        )
    }
}

/// Total variation `∫₀¹ |φ'(x)| dx` of a one-dimensional integrand.
///
/// Uses the supplied derivative when present, otherwise central differences.
pub fn hk_variation_1d(f: &TestFunction, resolution: usize) -> Result<VariationResult> {
    if f.dims() != 1 {
        return Err(Error::WrongDimension { expected: 1, found: f.dims() });
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!("resolution {resolution} < 2")));
    }
    let value = variation_1d_at(f, resolution);
    let coarse = variation_1d_at(f, resolution / 2);
    Ok(VariationResult {
        value,
        method: VariationMethod::DerivativeQuadrature1d,
        resolution,
        refinement_delta: (value - coarse).abs(),
    })
}

fn grid_differences_2d(f: &dyn Integrand, mesh: usize) -> f64 {
    let h = 1.0 / (mesh - 1) as f64;
    let coord = |i: usize| if i + 1 == mesh { 1.0 } else { i as f64 * h };
    let mut vals = vec![0.0; mesh * mesh];
    for i in 0..mesh {
        for j in 0..mesh {
            vals[i * mesh + j] = f.eval(&[coord(i), coord(j)]);
        }
    }
    let at = |i: usize, j: usize| vals[i * mesh + j];
    let mut mixed = 0.0;
    for i in 0..mesh - 1 {
        for j in 0..mesh - 1 {
            mixed += (at(i + 1, j + 1) - at(i + 1, j) - at(i, j + 1) + at(i, j)).abs();
        }
    }
    // one-dimensional sections through the anchor (1, 1)
    let last = mesh - 1;
    let edges: f64 =
        (0..last).map(|k| (at(k + 1, last) - at(k, last)).abs() + (at(last, k + 1) - at(last, k)).abs()).sum();
    mixed + edges
}

/// Grid-difference proxy for the Hardy–Krause variation in two dimensions.
///
/// On a `mesh × mesh` lattice including both endpoints, sums absolute mixed
/// differences over every cell plus absolute first differences along the
/// sections `x₂ = 1` and `x₁ = 1`. This is the variation anchored at `(1, 1)`
/// of the function restricted to the lattice.
pub fn hk_variation_grid_2d(f: &dyn Integrand, mesh: usize) -> Result<VariationResult> {
    if f.dims() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: f.dims() });
    }
    if mesh < 4 {
        return Err(Error::InvalidArgument(format!("mesh {mesh} < 4")));
    }
    let value = grid_differences_2d(f, mesh);
    let coarse = grid_differences_2d(f, mesh.div_ceil(2));
    Ok(VariationResult {
        value,
        method: VariationMethod::GridDifferences,
        resolution: mesh,
        refinement_delta: (value - coarse).abs(),
    })
}

/// Koksma–Hlawka bound `V(φ) · D*` for a one-dimensional integrand.
pub fn kh_bound(f: &TestFunction, ps: &PointSet) -> Result<f64> {
    if f.dims() != ps.dims() {
        return Err(Error::DimensionMismatch { expected: f.dims(), found: ps.dims() });
    }
    let variation = hk_variation_1d(f, DEFAULT_VARIATION_RESOLUTION)?;
    let discrepancy = star_discrepancy_1d(ps)?;
    Ok(variation.value * discrepancy.value)
}
