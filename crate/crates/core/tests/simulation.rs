use multisecretary::sim::{estimate_regret, SimConfig, SimPolicy};
use multisecretary::{solve, solve_optimal, PolicyKind};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn monte_carlo_agrees_with_dp() {
    for policy in [SimPolicy::Optimal, SimPolicy::Myopic] {
        let kind = policy.table_kind().unwrap();
        let tab = solve(kind, 200).unwrap();
        for &(n, k) in &[(10, 5), (50, 25), (100, 50), (200, 100)] {
            let cfg = SimConfig { n, k, policy, replicates: 100_000, seed: 20 + n as u64 };
            let s = estimate_regret(&cfg, Some(&tab)).unwrap();
            let exact = tab.r.get(n, k);
            assert!(
                (s.mean_regret - exact).abs() <= 3.0 * s.std_error,
                "{policy} ({n}, {k}): {} ± {} vs {exact}",
                s.mean_regret,
                s.std_error
            );
            assert_eq!(s.mean_hires, k as f64);
        }
    }
}

#[test]
fn identical_across_thread_counts() {
    let tab = solve(PolicyKind::Myopic, 100).unwrap();
    let cfg = SimConfig { n: 100, k: 50, policy: SimPolicy::Myopic, replicates: 20_000, seed: 7 };
    let one = in_pool(1, || estimate_regret(&cfg, Some(&tab)).unwrap());
    let four = in_pool(4, || estimate_regret(&cfg, Some(&tab)).unwrap());
    let again = in_pool(3, || estimate_regret(&cfg, Some(&tab)).unwrap());
    assert_eq!(one, four);
    assert_eq!(one, again);
    assert_eq!(one.mean_regret.to_bits(), four.mean_regret.to_bits());
}

#[test]
fn fixed_threshold_extremes() {
    let all = SimConfig { n: 30, k: 30, policy: SimPolicy::FixedThreshold(0.0), replicates: 500, seed: 1 };
    let s = estimate_regret(&all, None).unwrap();
    assert_eq!(s.mean_regret, 0.0);
    assert_eq!(s.mean_mistakes, 0.0);

    // θ = 1 never hires voluntarily, so the last k applicants are taken:
    // expected regret v*(n, k) − k/2.
    let late = SimConfig { n: 40, k: 5, policy: SimPolicy::FixedThreshold(1.0), replicates: 50_000, seed: 2 };
    let s = estimate_regret(&late, None).unwrap();
    let expected = multisecretary::offline_value(40, 5).unwrap() - 2.5;
    assert!((s.mean_regret - expected).abs() <= 4.0 * s.std_error, "{s:?}");
}

#[test]
fn mistakes_grow_with_horizon() {
    let tab = solve_optimal(400).unwrap();
    let small = estimate_regret(
        &SimConfig { n: 100, k: 50, policy: SimPolicy::Optimal, replicates: 20_000, seed: 3 },
        Some(&tab),
    )
    .unwrap();
    let big = estimate_regret(
        &SimConfig { n: 400, k: 200, policy: SimPolicy::Optimal, replicates: 20_000, seed: 3 },
        Some(&tab),
    )
    .unwrap();
    let ratio = big.mean_mistakes / small.mean_mistakes;
    assert!((1.7..=2.3).contains(&ratio), "ratio {ratio}");
}
