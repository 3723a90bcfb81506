//! Exact law of the number of open positions under the optimal policy:
//! mean t/2, variance below the fair-coin (n - t)/4, nonpositive step
//! covariance, and the regret rebuilt from expected one-step regrets.
//!
//! cargo run --release --example open_positions_walk

use multisecretary::walk::{decomposed_regret, reference_variance, step_covariance, walk_moments};
use multisecretary::{forward_distribution, solve_optimal};

fn main() -> multisecretary::Result<()> {
    let n = 256;
    let tables = solve_optimal(n)?;
    let dist = forward_distribution(&tables, n, n / 2)?;
    let moments = walk_moments(&dist);

    println!("{:>5} {:>10} {:>10} {:>10} {:>12}", "t", "E w(t)", "Var", "(n-t)/4", "cov");
    for t in (1..=n).rev().step_by(32).chain([1]) {
        let m = moments[t];
        let cov = step_covariance(&dist, &tables, t)?;
        println!(
            "{t:>5} {:>10.4} {:>10.4} {:>10.4} {:>12.3e}",
            m.mean,
            m.variance,
            reference_variance(n, t),
            cov
        );
    }

    let rebuilt = decomposed_regret(&dist, &tables)?;
    println!("\nr({n}, {}) from the table:          {:.12}", n / 2, tables.r.get(n, n / 2));
    println!("sum of expected one-step regrets: {rebuilt:.12}");
    Ok(())
}
