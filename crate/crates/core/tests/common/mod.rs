//! Test-only reference computations that share no code path with the library.

#![allow(dead_code)]

/// ln(m!) by direct summation.
pub fn ln_factorial(m: usize) -> f64 {
    (2..=m).map(|i| (i as f64).ln()).sum()
}

/// Pr(Bin(trials, x) ≥ at_least), summed term by term.
pub fn binomial_tail(trials: usize, x: f64, at_least: usize) -> f64 {
    if x <= 0.0 {
        return if at_least == 0 { 1.0 } else { 0.0 };
    }
    if x >= 1.0 {
        return if at_least <= trials { 1.0 } else { 0.0 };
    }
    let lf = ln_factorial(trials);
    (at_least..=trials)
        .map(|i| {
            let ln_choose = lf - ln_factorial(i) - ln_factorial(trials - i);
            (ln_choose + i as f64 * x.ln() + (trials - i) as f64 * (1.0 - x).ln()).exp()
        })
        .sum()
}

/// I_x(a, b) for integer shapes through Pr(Bin(a + b − 1, x) ≥ a).
pub fn beta_reg_oracle(x: f64, a: usize, b: usize) -> f64 {
    binomial_tail(a + b - 1, x, a)
}

/// Complete beta B(1, a, b) = (a−1)!(b−1)!/(a+b−1)! for integers.
pub fn beta_complete(a: usize, b: usize) -> f64 {
    (ln_factorial(a - 1) + ln_factorial(b - 1) - ln_factorial(a + b - 1)).exp()
}

/// Beta(a, b) density for integer shapes.
pub fn beta_density(a: usize, b: usize) -> impl Fn(f64) -> f64 {
    let ln_norm = ln_factorial(a + b - 1) - ln_factorial(a - 1) - ln_factorial(b - 1);
    move |x: f64| {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        (ln_norm + (a - 1) as f64 * x.ln() + (b - 1) as f64 * (1.0 - x).ln()).exp()
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(order);
    for i in 0..order {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=order {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            deriv = order as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / deriv;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * deriv * deriv)));
    }
    out
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>() * half
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: usize, rule: &[(f64, f64)]) -> f64 {
    let m = 0.5 * (a + b);
    let left = panel(f, a, m, rule);
    let right = panel(f, m, b, rule);
    if depth == 0 || (left + right - whole).abs() <= tol {
        return left + right;
    }
    adapt(f, a, m, left, 0.5 * tol, depth - 1, rule) + adapt(f, m, b, right, 0.5 * tol, depth - 1, rule)
}

/// Adaptive 10-point Gauss–Legendre quadrature of `f` over [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = gauss_legendre(10);
    // start from a few panels so narrow peaks are not missed
    let pieces = 16;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let whole = panel(&f, lo, hi, &rule);
            adapt(&f, lo, hi, whole, tol / pieces as f64, 30, &rule)
        })
        .sum()
}
