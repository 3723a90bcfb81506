//! Expected number of hiring mistakes under the optimal policy grows like
//! sqrt(n), while regret only grows like ln n: mistakes get cheaper as n grows.
//!
//! cargo run --release --example hiring_mistakes

use multisecretary::walk::{expected_mistakes, mistake_probability};
use multisecretary::{forward_distribution, solve_optimal};

fn main() -> multisecretary::Result<()> {
    println!("single decision at (t, w) = (2, 1):");
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("  hire prob {p:.2} -> Pr(mistake) = {:.4}", mistake_probability(2, 1, p)?);
    }

    let n_max = 2048;
    let tables = solve_optimal(n_max)?;
    println!("\n{:>6} {:>10} {:>10} {:>12} {:>12}", "n", "mistakes", "/sqrt(n)", "regret", "cost/mistake");
    let mut n = 32;
    while n <= n_max {
        let dist = forward_distribution(&tables, n, n / 2)?;
        let total = expected_mistakes(&dist, &tables)?.total;
        let regret = tables.r.get(n, n / 2);
        println!(
            "{n:>6} {total:>10.4} {:>10.4} {regret:>12.6} {:>12.6}",
            total / (n as f64).sqrt(),
            regret / total
        );
        n *= 2;
    }
    Ok(())
}
