//! Exact and simulated analysis of the multisecretary problem with
//! standard-uniform valuations.
//!
//! `n` applicants are interviewed one at a time and exactly `k` of them must
//! be hired, each accept/reject decision being irrevocable. This crate solves
//! the problem by backward induction, tracks the law of the number of open
//! positions, estimates regret by seeded Monte Carlo and checks the results
//! against logarithmic regret bounds.
//!
//! Runnable walkthroughs of each capability live in `examples/`:
//!
//! ```bash
//! cargo run --release --example small_cases
//! cargo run --release --example regret_bounds
//! ```

pub mod bounds;
pub mod cli;
pub mod dp;
pub mod error;
pub mod math;
pub mod output;
pub mod sim;
pub mod special;
pub mod table;
pub mod walk;

pub use dp::{solve, solve_myopic, solve_optimal, solve_value_direct, DpTables, PolicyKind};
pub use error::{Error, Result};
pub use math::{lambda, mu, myopic_regret, offline_value, orderstat_cdf, ProblemSize};
pub use special::beta_reg;
pub use walk::{forward_distribution, MistakeStats, WalkDistribution};

/// Version string embedded in every emitted report.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Schema version of the CSV and JSON outputs.
pub const SCHEMA_VERSION: u32 = 1;
