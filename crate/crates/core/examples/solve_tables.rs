//! Exact optimal and myopic regret tables, with the value-space solver as a
//! cross-check.
//!
//! cargo run --example solve_tables

use multisecretary::{offline_value, solve_myopic, solve_optimal, solve_value_direct};

fn main() -> multisecretary::Result<()> {
    let optimal = solve_optimal(3)?;
    let myopic = solve_myopic(3)?;
    println!("r(2,1) = {} (1/24 = {})", optimal.r.get(2, 1), 1.0 / 24.0);
    println!("r(3,1) = {} (7/128 = {})", optimal.r.get(3, 1), 7.0 / 128.0);
    println!("p(3,1) = {}", optimal.p.get(3, 1));
    println!("myopic r(3,1) = {} (1/18 = {})", myopic.r.get(3, 1), 1.0 / 18.0);

    let n = 12;
    let optimal = solve_optimal(n)?;
    let myopic = solve_myopic(n)?;
    println!("\nn = {n}: hiring threshold 1 - p and regret by open positions");
    println!("{:>3} {:>10} {:>10} {:>10} {:>10}", "w", "thresh", "r_opt", "r_myopic", "w/n");
    for w in 0..=n {
        println!(
            "{w:>3} {:>10.5} {:>10.6} {:>10.6} {:>10.5}",
            1.0 - optimal.p.get(n, w),
            optimal.r.get(n, w),
            myopic.r.get(n, w),
            w as f64 / n as f64
        );
    }

    let horizon = 400;
    let regret = solve_optimal(horizon)?;
    let direct = solve_value_direct(horizon)?;
    let v = direct.v.as_ref().expect("value table");
    let mut worst: f64 = 0.0;
    for t in 0..=horizon {
        for w in 0..=t {
            worst = worst.max((offline_value(t, w)? - v.get(t, w) - regret.r.get(t, w)).abs());
        }
    }
    println!("\nvalue-space vs regret-space, all states t <= {horizon}: max gap {worst:e}");
    Ok(())
}
