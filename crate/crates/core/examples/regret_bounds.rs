//! Optimal and myopic regret at k = n/2 against the ln(n+1)/8 upper bound and
//! the ln(n)/16 - 1/4 lower bound, plus the fitted growth rate in ln n.
//!
//! cargo run --release --example regret_bounds

use multisecretary::bounds::{build_report, sweep, Grid, KRule};

fn main() -> multisecretary::Result<()> {
    let grid = Grid::Geometric { start: 16, end: 8192, factor: 2 };
    let report = build_report(sweep(&grid, KRule::Half)?)?;

    println!("{:>6} {:>9} {:>9} {:>9} {:>9}", "n", "lower", "r_opt", "r_myopic", "upper");
    for e in &report.curve.entries {
        println!(
            "{:>6} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            e.n,
            e.lower_bound.unwrap_or(f64::NAN),
            e.regret_optimal,
            e.regret_myopic,
            e.upper_bound
        );
    }
    println!(
        "\nregret ≈ {:.4} ln n {:+.4} (max residual {:.1e}); proven bracket for the slope is [1/16, 1/8]",
        report.fitted_slope, report.fitted_intercept, report.fit_residual
    );
    println!("violations: {}", report.violations.len());

    let skewed = sweep(&Grid::Geometric { start: 20, end: 5120, factor: 4 }, KRule::Ratio(0.2))?;
    println!("\nk = n/5:");
    for e in &skewed.entries {
        println!("{:>6} k={:<5} r_opt={:.5} upper={:.5}", e.n, e.k, e.regret_optimal, e.upper_bound);
    }
    Ok(())
}
