use sdfe_core::operators::{
    s_alpha_apply, s_alpha_multiplier, s_alpha_norm_bound, semigroup_apply, subordination_oracle, t_alpha_apply,
    t_alpha_multiplier, GrowthBound, ModeVector, SpectralOperator,
};
use sdfe_core::specfun::{gamma, mainardi_rule, recip_gamma};

#[test]
fn closed_forms_match_subordination_quadrature() {
    for alpha in [0.6, 0.75, 0.9] {
        let rule = mainardi_rule(alpha).unwrap();
        for mu in [1.0, 4.0, 25.0] {
            for t in [0.1, 1.0, 2.0] {
                let ta = t_alpha_multiplier(alpha, mu, t).unwrap();
                let sa = s_alpha_multiplier(alpha, mu, t).unwrap();
                let ot = subordination_oracle(alpha, mu, t, false, &rule).unwrap();
                let os = subordination_oracle(alpha, mu, t, true, &rule).unwrap();
                assert!((ta - ot).abs() <= 1e-5, "T: alpha={alpha} mu={mu} t={t}: {ta} vs {ot}");
                assert!((sa - os).abs() <= 1e-5, "S: alpha={alpha} mu={mu} t={t}: {sa} vs {os}");
            }
        }
    }
}

#[test]
fn oracle_limits() {
    let alpha = 0.75;
    let rule = mainardi_rule(alpha).unwrap();
    // μ = 0: total mass 1 and first moment 1/Γ(α+1), times α
    assert!((subordination_oracle(alpha, 0.0, 1.0, false, &rule).unwrap() - 1.0).abs() < 1e-8);
    let w = subordination_oracle(alpha, 0.0, 1.0, true, &rule).unwrap();
    assert!((w - recip_gamma(alpha)).abs() < 1e-8);
    assert!((w - alpha / gamma(alpha + 1.0).unwrap()).abs() < 1e-8);

    // E_{0.6}(-1) by its Taylor series, which has no cancellation at z = -1
    let series: f64 = (0..60).map(|n| (-1f64).powi(n) * recip_gamma(0.6 * n as f64 + 1.0)).sum();
    let o = subordination_oracle(0.6, 1.0, 1.0, false, &mainardi_rule(0.6).unwrap()).unwrap();
    assert!((o - series).abs() < 1e-6, "{o} vs {series}");
}

#[test]
fn apply_examples() {
    let one = SpectralOperator::contractive(vec![1.0]).unwrap();
    let v = ModeVector::new(vec![1.0]).unwrap();
    let rule = mainardi_rule(0.75).unwrap();
    let t = t_alpha_apply(0.75, &one, 1.0, &v).unwrap();
    assert!((t[0] - subordination_oracle(0.75, 1.0, 1.0, false, &rule).unwrap()).abs() < 1e-5);

    let four = SpectralOperator::contractive(vec![4.0]).unwrap();
    let s = s_alpha_apply(0.6, &four, 0.5, &v).unwrap();
    let o = subordination_oracle(0.6, 4.0, 0.5, true, &mainardi_rule(0.6).unwrap()).unwrap();
    assert!((s[0] - o).abs() < 1e-5);
}

#[test]
fn exponential_bound_on_grid() {
    for alpha in [0.55, 0.6, 0.75, 0.9, 0.99] {
        for i in 0..=200 {
            let x = 0.01 * (i * i) as f64;
            let e = t_alpha_multiplier(alpha, x, 1.0).unwrap();
            assert!((0.0..=1.0).contains(&e), "alpha={alpha} x={x}: {e}");
        }
    }
}

#[test]
fn operator_norm_bound_at_samples() {
    let heat = SpectralOperator::dirichlet_laplacian(16).unwrap();
    let growing = SpectralOperator::new(vec![0.0, 0.5, 3.0], GrowthBound { m: 1.5, omega: 0.7 }).unwrap();
    for alpha in [0.55, 0.6, 0.75, 0.9, 1.0] {
        for t in [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
            let (obs, bound) = s_alpha_norm_bound(alpha, &heat, t).unwrap();
            assert!(obs <= bound, "heat alpha={alpha} t={t}: {obs} > {bound}");
            assert!(bound == recip_gamma(alpha));
            let (obs, bound) = s_alpha_norm_bound(alpha, &growing, t).unwrap();
            assert!(obs <= bound, "growing alpha={alpha} t={t}: {obs} > {bound}");
        }
    }
    // mode 1 dominates for the heat operator
    for t in [0.1, 1.0, 5.0] {
        let (obs, _) = s_alpha_norm_bound(0.75, &heat, t).unwrap();
        assert_eq!(obs, s_alpha_multiplier(0.75, 1.0, t).unwrap());
    }
    let (obs, bound) = s_alpha_norm_bound(0.75, &growing, 0.0).unwrap();
    assert_eq!((obs, bound), (recip_gamma(0.75), 1.5 * recip_gamma(0.75)));
}

#[test]
fn alpha_one_is_the_semigroup() {
    let a = SpectralOperator::dirichlet_laplacian(8).unwrap();
    let v = ModeVector::new((1..=8).map(|n| 1.0 / n as f64).collect()).unwrap();
    for t in [0.0, 0.003, 0.1, 0.7, 2.0] {
        let s = semigroup_apply(&a, t, &v).unwrap();
        let ta = t_alpha_apply(1.0, &a, t, &v).unwrap();
        let sa = s_alpha_apply(1.0, &a, t, &v).unwrap();
        for n in 0..8 {
            assert!((s[n] - ta[n]).abs() <= 1e-12);
            assert!((s[n] - sa[n]).abs() <= 1e-12);
        }
    }
}

#[test]
fn multiplier_jumps_shrink_under_refinement() {
    for alpha in [0.6, 0.75, 0.9] {
        for mu in [1.0, 25.0] {
            let max_jump = |n: usize| -> f64 {
                let dt = 1.9 / n as f64;
                let vals: Vec<f64> = (0..=n).map(|k| t_alpha_multiplier(alpha, mu, 0.1 + k as f64 * dt).unwrap()).collect();
                vals.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max)
            };
            // |d/dt E_α(-μt^α)| decreases, so the first cell holds slightly
            // more than half of its parent's jump; the ratio tends to 1/2.
            let mut prev = max_jump(100);
            let mut prev_ratio = f64::INFINITY;
            for n in [200, 400, 800, 1600] {
                let j = max_jump(n);
                let ratio = j / prev;
                assert!(ratio < 0.6 && ratio <= prev_ratio + 1e-12, "alpha={alpha} mu={mu} n={n}: ratio {ratio}");
                prev = j;
                prev_ratio = ratio;
            }
            assert!(prev_ratio < 0.52, "alpha={alpha} mu={mu}: final ratio {prev_ratio}");
        }
    }
}
