//! Seeded simulation of the optimal, myopic and fixed-threshold rules,
//! compared with the exact DP regret.
//!
//! cargo run --release --example monte_carlo

use multisecretary::sim::{estimate_regret, run_policy, sample_path, PathSeed, SimConfig, SimPolicy, ThresholdRule};
use multisecretary::{solve_myopic, solve_optimal};

fn main() -> multisecretary::Result<()> {
    let (n, k) = (100, 50);
    let optimal = solve_optimal(n)?;
    let myopic = solve_myopic(n)?;

    let path = sample_path(8, PathSeed::new(1, 0));
    let small = solve_optimal(8)?;
    let trace = run_policy(&path, ThresholdRule::Table(&small), 3)?;
    println!("one path, n = 8, k = 3:");
    for (v, hired) in path.iter().zip(&trace.hired) {
        println!("  {v:.3} {}", if *hired { "hire" } else { "-" });
    }

    println!("\nn = {n}, k = {k}, 100000 replicates:");
    for (policy, tables) in [
        (SimPolicy::Optimal, Some(&optimal)),
        (SimPolicy::Myopic, Some(&myopic)),
        (SimPolicy::FixedThreshold(0.5), None),
    ] {
        let cfg = SimConfig { n, k, policy, replicates: 100_000, seed: 42 };
        let s = estimate_regret(&cfg, tables)?;
        let exact = tables.map(|t| format!("{:.5}", t.r.get(n, k))).unwrap_or_else(|| "-".into());
        println!(
            "  {:<10} regret {:.5} ± {:.5} (DP {exact}), mistakes {:.2}",
            policy.to_string(),
            s.mean_regret,
            s.std_error,
            s.mean_mistakes
        );
    }
    Ok(())
}
