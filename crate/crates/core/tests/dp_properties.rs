use multisecretary::math::myopic_regret;
use multisecretary::{offline_value, solve_myopic, solve_optimal, solve_value_direct};

const N: usize = 512;

#[test]
fn value_and_regret_recursions_agree() {
    let opt = solve_optimal(N).unwrap();
    let direct = solve_value_direct(N).unwrap();
    let v = direct.v.as_ref().unwrap();
    for t in 0..=N {
        for w in 0..=t {
            let gap = offline_value(t, w).unwrap() - v.get(t, w);
            assert!((gap - opt.r.get(t, w)).abs() <= 1e-9, "regret at ({t}, {w})");
            assert!((direct.p.get(t, w) - opt.p.get(t, w)).abs() <= 1e-9, "p at ({t}, {w})");
        }
    }
}

#[test]
fn hire_probabilities_are_mirror_symmetric() {
    let opt = solve_optimal(N).unwrap();
    for t in 1..=N {
        for w in 0..=t {
            let s = opt.p.get(t, w) + opt.p.get(t, t - w);
            assert!((s - 1.0).abs() <= 1e-9, "({t}, {w}): {s}");
        }
    }
}

#[test]
fn hire_probability_nondecreasing_in_open_positions() {
    let opt = solve_optimal(N).unwrap();
    for t in 1..=N {
        for w in 0..t {
            assert!(opt.p.get(t, w + 1) >= opt.p.get(t, w) - 1e-12, "({t}, {w})");
        }
    }
}

#[test]
fn optimal_between_one_step_floor_and_myopic() {
    let opt = solve_optimal(N).unwrap();
    let myo = solve_myopic(N).unwrap();
    for t in 2..=N {
        for w in 1..t {
            let r = opt.r.get(t, w);
            assert!(r <= myo.r.get(t, w), "({t}, {w})");
            let floor = myopic_regret(t, w, w as f64 / t as f64).unwrap();
            assert!(r >= floor, "({t}, {w})");
        }
    }
}

#[test]
fn optimal_regret_strictly_increases_along_the_diagonal() {
    let opt = solve_optimal(N).unwrap();
    let mut n = 2;
    while 2 * n <= N {
        assert!(opt.r.get(2 * n, n) > opt.r.get(n, n / 2), "n = {n}");
        n *= 2;
    }
}
