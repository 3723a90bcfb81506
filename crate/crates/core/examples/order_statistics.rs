//! Order statistics of uniform draws: means, CDFs and the option value λ.
//!
//! cargo run --example order_statistics

use multisecretary::math::{min_myopic_regret, myopic_hire_probability, OrderStatIndex};
use multisecretary::{beta_reg, lambda, mu, myopic_regret, offline_value, orderstat_cdf};

fn main() -> multisecretary::Result<()> {
    println!("I_0.3(3, 2) = {:.6}", beta_reg(0.3, 3.0, 2.0)?);

    let n = 10;
    println!("\nj-th best of {n} uniforms:");
    println!("{:>3} {:>8} {:>10} {:>10}", "j", "mean", "P(<=0.5)", "P(<=0.9)");
    for j in 1..=n {
        println!(
            "{j:>3} {:>8.4} {:>10.6} {:>10.6}",
            mu(n, j)?,
            orderstat_cdf(n, j, 0.5)?,
            orderstat_cdf(n, j, 0.9)?
        );
    }

    let s = OrderStatIndex::new(9, 5)?;
    println!("\n∫₀^0.5 F(x) dx for the 5th best of 9 = {:.6}", s.integrated_cdf(0.5)?);

    let (n, k) = (20, 6);
    println!("\nn = {n}, k = {k}");
    println!("  offline value v* = {:.6}", offline_value(n, k)?);
    println!("  option value  λ  = {:.6}", lambda(n, k)?);
    let best = myopic_hire_probability(n, k)?;
    println!("  one-step regret minimized at p = {best:.4} with value {:.3e}", min_myopic_regret(n, k)?);
    for p in [0.0, 0.15, best, 0.45, 1.0] {
        println!("    m(p = {p:.3}) = {:.6}", myopic_regret(n, k, p)?);
    }
    Ok(())
}
