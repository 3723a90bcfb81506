use multisecretary::math::OrderStatIndex;
use multisecretary::walk::{
    decomposed_regret, expected_mistakes, mistake_probability, reference_variance, step_covariance, walk_moments,
    walk_rows,
};
use multisecretary::{forward_distribution, solve_myopic, solve_optimal};

#[test]
fn half_walk_structure_for_every_even_horizon() {
    let tab = solve_optimal(512).unwrap();
    for n in (2..=512).step_by(2) {
        let dist = forward_distribution(&tab, n, n / 2).unwrap();
        for (t, slice) in dist.slices.iter().enumerate() {
            assert!((slice.total() - 1.0).abs() <= 1e-12, "n={n} t={t}");
            for (w, m) in slice.iter() {
                assert!((m - dist.mass(t, t - w)).abs() <= 1e-9, "symmetry n={n} t={t} w={w}");
            }
        }
        for m in walk_moments(&dist) {
            assert!((m.mean - m.t as f64 / 2.0).abs() <= 1e-9, "mean n={n} t={}", m.t);
            assert!(m.variance <= reference_variance(n, m.t) + 1e-9, "variance n={n} t={}", m.t);
        }
        for t in 1..=n {
            assert!(step_covariance(&dist, &tab, t).unwrap() <= 1e-12, "covariance n={n} t={t}");
        }
    }
}

#[test]
fn regret_is_the_expected_sum_of_one_step_regrets() {
    for (tab, label) in [(solve_optimal(300).unwrap(), "optimal"), (solve_myopic(300).unwrap(), "myopic")] {
        for &(n, k) in &[(300, 150), (300, 7), (257, 100), (64, 32), (10, 9)] {
            let dist = forward_distribution(&tab, n, k).unwrap();
            let rebuilt = decomposed_regret(&dist, &tab).unwrap();
            assert!((rebuilt - tab.r.get(n, k)).abs() <= 1e-9, "{label} ({n}, {k})");
        }
    }
}

#[test]
fn mistake_probability_in_unit_interval_for_table_states() {
    let tab = solve_optimal(256).unwrap();
    for t in 1..=256 {
        for w in 0..=t {
            let q = mistake_probability(t, w, tab.p.get(t, w)).unwrap();
            assert!((0.0..=1.0).contains(&q), "({t}, {w}) -> {q}");
        }
    }
}

fn median(s: OrderStatIndex) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if s.cdf(mid).unwrap() < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn mistake_probability_is_smallest_at_the_benchmark_median() {
    // Pr(mistake) as a function of the threshold y = 1 − p has derivative
    // 2F(y) − 1, so it bottoms out where the benchmark's CDF crosses 1/2.
    let steps = 2000;
    for &(t, w) in &[(2usize, 1usize), (5, 2), (40, 10), (101, 50), (256, 200)] {
        let best = (0..=steps)
            .map(|i| i as f64 / steps as f64)
            .min_by(|&a, &b| {
                mistake_probability(t, w, a).unwrap().total_cmp(&mistake_probability(t, w, b).unwrap())
            })
            .unwrap();
        let target = 1.0 - median(OrderStatIndex::new(t - 1, w).unwrap());
        assert!((best - target).abs() <= 1.0 / steps as f64, "({t}, {w}): {best} vs {target}");
    }
}

#[test]
fn walk_rows_cover_every_period() {
    let tab = solve_optimal(64).unwrap();
    let dist = forward_distribution(&tab, 64, 32).unwrap();
    let rows = walk_rows(&dist, &tab).unwrap();
    assert_eq!(rows.len(), 64);
    assert_eq!(rows.first().unwrap().t, 1);
    let stats = expected_mistakes(&dist, &tab).unwrap();
    let sum: f64 = rows.iter().map(|r| r.mistake_probability).sum();
    assert!((sum - stats.total).abs() <= 1e-12);
    assert!(stats.per_period.iter().all(|&q| (0.0..=1.0).contains(&q)));
}

#[test]
fn myopic_walk_has_same_symmetry() {
    let tab = solve_myopic(200).unwrap();
    let dist = forward_distribution(&tab, 200, 100).unwrap();
    for m in walk_moments(&dist) {
        assert!((m.mean - m.t as f64 / 2.0).abs() <= 1e-9);
    }
}
