//! Oracles shared by the integration tests. Nothing here calls into the
//! code paths it is used to check.
#![allow(dead_code)]

use cfqmc::lds::PointSet;
use cfqmc::rng;
use rand::Rng;

/// `sup_t max(t − #{x < t}/N, #{x ≤ t}/N − t)`, scanning every candidate `t`
/// and counting points directly.
pub fn brute_force_star_discrepancy_1d(ps: &PointSet) -> f64 {
    let xs: Vec<f64> = ps.axis(0).collect();
    let n = xs.len() as f64;
    let mut candidates = xs.clone();
    candidates.push(1.0);
    candidates
        .iter()
        .map(|&t| {
            let open = xs.iter().filter(|&&x| x < t).count() as f64;
            let closed = xs.iter().filter(|&&x| x <= t).count() as f64;
            (t - open / n).max(closed / n - t)
        })
        .fold(0.0, f64::max)
}

/// Random 1d point sets of sizes 1..=200, some with repeated coordinates.
pub fn random_point_sets_1d(count: usize, seed: u64) -> Vec<PointSet> {
    let mut rng = rng::stream(seed);
    (0..count)
        .map(|k| {
            let n = rng.random_range(1..=200);
            let mut xs: Vec<f64> = (0..n).map(|_| rng.random()).collect();
            if k % 5 == 0 && n > 1 {
                xs[1] = xs[0];
            }
            PointSet::from_1d(&xs).unwrap()
        })
        .collect()
}

/// Composite Gauss–Legendre (5-point) rule on `[0, 1]`.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, cells: usize) -> f64 {
    const NODES: [f64; 5] =
        [-0.906_179_845_938_664, -0.538_469_310_105_683, 0.0, 0.538_469_310_105_683, 0.906_179_845_938_664];
    const WEIGHTS: [f64; 5] = [
        0.236_926_885_056_189,
        0.478_628_670_499_366,
        0.568_888_888_888_889,
        0.478_628_670_499_366,
        0.236_926_885_056_189,
    ];
    let h = 1.0 / cells as f64;
    (0..cells)
        .map(|c| {
            let mid = (c as f64 + 0.5) * h;
            NODES.iter().zip(WEIGHTS).map(|(z, w)| w * f(mid + 0.5 * h * z)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

/// Ordinary least-squares slope of `ln y` on `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Tensor 5-point Gauss–Legendre rule on `[0, 1]²` with `cells × cells` cells.
pub fn gauss_legendre_2d(f: impl Fn(&[f64]) -> f64 + Sync, cells: usize) -> f64 {
    use rayon::prelude::*;
    let h = 1.0 / cells as f64;
    (0..cells)
        .into_par_iter()
        .map(|i| {
            let lo = i as f64 * h;
            // outer rule restricted to the i-th strip in y
            gauss_legendre(|t| gauss_legendre(|x| f(&[x, lo + t * h]), cells), 1) * h
        })
        .sum()
}
