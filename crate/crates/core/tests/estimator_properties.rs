use cfqmc::estimate::{cf_split, replicate_curve, run_estimator, Method, SurrogateConfig};
use cfqmc::{builtin, replicate_rmse_curve, Error, KernelParams};

const SEED: u64 = 2015;

#[test]
fn constant_is_exact_for_every_method() {
    let f = builtin("constant", 1).unwrap();
    for method in Method::ALL {
        for budget in [8, 64, 1000] {
            let e = run_estimator(method, &f, budget, 5, SEED, &SurrogateConfig::Grid).unwrap();
            assert!(e.replicate_values.iter().all(|&v| v == 1.0), "{method} {budget}");
            assert_eq!((e.value, e.std, e.abs_error, e.rmse), (1.0, 0.0, 0.0, 0.0));
        }
    }
}

#[test]
fn cf_on_linear_is_exact_in_every_replicate() {
    for d in [1, 2] {
        let f = builtin("linear", d).unwrap();
        for budget in [32, 100, 1024] {
            let e = run_estimator(Method::RqmcCf, &f, budget, 8, SEED, &SurrogateConfig::Grid).unwrap();
            assert!(e.replicate_values.iter().all(|&v| v == 2.0), "d={d} B={budget}: {:?}", e.replicate_values);
        }
    }
}

#[test]
fn budget_accounting_is_exact() {
    let f = builtin("fig1", 1).unwrap();
    for method in Method::ALL {
        for budget in [4, 17, 256, 999] {
            let e = run_estimator(method, &f, budget, 3, SEED, &SurrogateConfig::Grid).unwrap();
            assert_eq!(e.budget, budget);
        }
    }
    let f2 = builtin("prod-fig1", 2).unwrap();
    for budget in [8, 50, 513] {
        let (m, nodes) = cf_split(budget, 2);
        assert_eq!(nodes, m * m);
        assert!(nodes <= budget / 2 && budget - nodes >= 1);
        let e = run_estimator(Method::RqmcCf, &f2, budget, 2, SEED, &SurrogateConfig::Grid).unwrap();
        assert_eq!(e.budget, budget);
    }
}

#[test]
fn too_small_budgets_are_rejected() {
    let f = builtin("fig1", 1).unwrap();
    assert!(matches!(
        run_estimator(Method::RqmcCf, &f, 3, 2, SEED, &SurrogateConfig::Grid),
        Err(Error::InsufficientBudget { .. })
    ));
    let err = replicate_curve(Method::Mc, &f, &[16, 1], 2, SEED, &SurrogateConfig::Grid).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)));
}

#[test]
fn rqmc_and_cf_are_unbiased() {
    let f = builtin("fig1", 1).unwrap();
    for method in [Method::Rqmc, Method::RqmcCf] {
        let e = run_estimator(method, &f, 128, 200, 0, &SurrogateConfig::Grid).unwrap();
        let se = e.std / 200f64.sqrt();
        assert!((e.value - 2.0).abs() <= 3.0 * se, "{method}: {} ± {se}", e.value);
    }
}

#[test]
fn bias_z_scores_are_standard_normal_across_roots() {
    // one z-score per root seed; an unbiased estimator gives mean ≈ 0, variance ≈ 1
    let f = builtin("fig1", 1).unwrap();
    for method in [Method::Mc, Method::Rqmc, Method::RqmcCf] {
        let zs: Vec<f64> = (0..100u64)
            .map(|root| {
                let e = run_estimator(method, &f, 128, 200, root, &SurrogateConfig::Grid).unwrap();
                (e.value - 2.0) / (e.std / 200f64.sqrt())
            })
            .collect();
        let mean = zs.iter().sum::<f64>() / 100.0;
        let var = zs.iter().map(|z| (z - mean).powi(2)).sum::<f64>() / 99.0;
        // 4σ bands for the mean and variance of 100 standard normals
        assert!(mean.abs() < 0.4, "{method}: mean z {mean}");
        assert!((0.45..1.6).contains(&var), "{method}: var z {var}");
    }
}

#[test]
fn rqmc_beats_mc_pairwise() {
    let f = builtin("fig1", 1).unwrap();
    let mc = run_estimator(Method::Mc, &f, 256, 20, SEED, &SurrogateConfig::Grid).unwrap();
    let rqmc = run_estimator(Method::Rqmc, &f, 256, 20, SEED, &SurrogateConfig::Grid).unwrap();
    let wins = mc
        .replicate_values
        .iter()
        .zip(&rqmc.replicate_values)
        .filter(|(m, r)| (*r - 2.0).abs() < (*m - 2.0).abs())
        .count();
    assert!(wins >= 18, "{wins} of 20");
}

#[test]
fn qmc_error_decreases_monotonically() {
    let f = builtin("fig1", 1).unwrap();
    let budgets: Vec<usize> = (4..=10).map(|k| 1 << k).collect();
    let curve = replicate_rmse_curve(Method::Qmc, &f, &budgets, 20, SEED, &SurrogateConfig::Grid).unwrap();
    assert!(curve.windows(2).all(|w| w[1].rmse < w[0].rmse), "{curve:?}");
}

#[test]
fn cf_reaches_small_error() {
    let f = builtin("fig1", 1).unwrap();
    let budgets: Vec<usize> = (4..=10).map(|k| 1 << k).collect();
    let cf = replicate_rmse_curve(Method::RqmcCf, &f, &budgets, 20, SEED, &SurrogateConfig::Grid).unwrap();
    let rqmc = replicate_rmse_curve(Method::Rqmc, &f, &budgets, 20, SEED, &SurrogateConfig::Grid).unwrap();
    assert!(cf.last().unwrap().rmse < 1e-4);
    for (c, r) in cf.iter().zip(&rqmc).skip(2) {
        assert!(c.rmse < r.rmse, "B={}: {} vs {}", c.budget, c.rmse, r.rmse);
    }
}

#[test]
fn kernel_cf_is_no_worse_than_ten_times_grid() {
    let f = builtin("fig1", 1).unwrap();
    let kernel = SurrogateConfig::Kernel(KernelParams::new(0.1, 1e-8));
    let k = run_estimator(Method::RqmcCf, &f, 4096, 20, SEED, &kernel).unwrap();
    let g = run_estimator(Method::RqmcCf, &f, 4096, 20, SEED, &SurrogateConfig::Grid).unwrap();
    assert!(k.rmse <= g.rmse * 10.0, "{} vs {}", k.rmse, g.rmse);
}

#[test]
fn std_is_sample_standard_deviation() {
    let f = builtin("fig1", 1).unwrap();
    let e = run_estimator(Method::Mc, &f, 64, 7, SEED, &SurrogateConfig::Grid).unwrap();
    let mean = e.replicate_values.iter().sum::<f64>() / 7.0;
    let var = e.replicate_values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 6.0;
    assert!((e.std - var.sqrt()).abs() < 1e-15);
    let rmse = (e.replicate_values.iter().map(|v| (v - 2.0).powi(2)).sum::<f64>() / 7.0).sqrt();
    assert!((e.rmse - rmse).abs() < 1e-15);
}

#[test]
fn replicates_are_reproducible_and_distinct() {
    let f = builtin("fig1", 1).unwrap();
    let a = run_estimator(Method::Rqmc, &f, 64, 10, 7, &SurrogateConfig::Grid).unwrap();
    let b = run_estimator(Method::Rqmc, &f, 64, 10, 7, &SurrogateConfig::Grid).unwrap();
    let c = run_estimator(Method::Rqmc, &f, 64, 10, 8, &SurrogateConfig::Grid).unwrap();
    assert_eq!(a.replicate_values, b.replicate_values);
    assert_ne!(a.replicate_values, c.replicate_values);
    let mut sorted = a.replicate_values.clone();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    assert_eq!(sorted.len(), 10);

    let q = run_estimator(Method::Qmc, &f, 64, 10, 7, &SurrogateConfig::Grid).unwrap();
    assert_eq!(q.replicate_values.len(), 1);
}
