//! Seeded Monte Carlo evaluation of threshold hiring rules.
//!
//! Replicate `i` of an experiment with master seed `s` draws its valuations
//! from ChaCha8 seeded with `s` on stream `i`, so a replicate's path does not
//! depend on how replicates are scheduled across threads. Per-replicate
//! results are reduced in replicate order.

use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dp::{DpTables, PolicyKind};
use crate::error::{domain, Error, Result};

/// Identifies the uniform generator and how paths are derived from seeds.
pub const GENERATOR_VERSION: &str = "chacha8-stream-v1 (rand_chacha 0.10, 53-bit uniforms)";

/// Hiring rule used in a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SimPolicy {
    Optimal,
    Myopic,
    /// Hire whenever the valuation exceeds θ (boundary states still force).
    FixedThreshold(f64),
}

impl SimPolicy {
    /// The DP table kind the rule reads its thresholds from, if any.
    pub fn table_kind(&self) -> Option<PolicyKind> {
        match self {
            SimPolicy::Optimal => Some(PolicyKind::Optimal),
            SimPolicy::Myopic => Some(PolicyKind::Myopic),
            SimPolicy::FixedThreshold(_) => None,
        }
    }
}

impl fmt::Display for SimPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimPolicy::Optimal => f.write_str("optimal"),
            SimPolicy::Myopic => f.write_str("myopic"),
            SimPolicy::FixedThreshold(theta) => write!(f, "fixed:{theta}"),
        }
    }
}

impl FromStr for SimPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimal" => Ok(SimPolicy::Optimal),
            "myopic" => Ok(SimPolicy::Myopic),
            other => {
                let theta = other
                    .strip_prefix("fixed:")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| domain(format!("unknown policy {other:?}")))?;
                if !(0.0..=1.0).contains(&theta) {
                    return Err(domain(format!("fixed threshold {theta} outside [0, 1]")));
                }
                Ok(SimPolicy::FixedThreshold(theta))
            }
        }
    }
}

/// A Monte Carlo experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub k: usize,
    pub policy: SimPolicy,
    pub replicates: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.k > self.n {
            return Err(domain(format!("need 1 <= k <= n, got n = {}, k = {}", self.n, self.k)));
        }
        if self.replicates < 1 {
            return Err(domain("replicates must be at least 1"));
        }
        if let SimPolicy::FixedThreshold(theta) = self.policy {
            if !(0.0..=1.0).contains(&theta) {
                return Err(domain(format!("fixed threshold {theta} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Statistics of one experiment. Serializes to the summary JSON object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSummary {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub policy: String,
    pub replicates: usize,
    pub seed: u64,
    pub mean_regret: f64,
    /// Standard error of `mean_regret`; 0 when there is a single replicate.
    pub std_error: f64,
    pub mean_hires: f64,
    pub mean_mistakes: f64,
    pub generator_version: String,
}

/// Where a valuation path comes from: master seed and replicate counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathSeed {
    pub master: u64,
    pub replicate: u64,
}

impl PathSeed {
    pub fn new(master: u64, replicate: u64) -> Self {
        Self { master, replicate }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.replicate);
        rng
    }
}

/// `n` i.i.d. uniforms on [0, 1); `path[0]` is the first applicant interviewed.
pub fn sample_path(n: usize, seed: PathSeed) -> Vec<f64> {
    let mut rng = seed.rng();
    (0..n).map(|_| rng.random::<f64>()).collect()
}

/// Thresholds a path is run against.
#[derive(Debug, Clone, Copy)]
pub enum ThresholdRule<'a> {
    /// Hire when the valuation exceeds 1 − p[t][w].
    Table(&'a DpTables),
    /// Hire when the valuation exceeds θ.
    Fixed(f64),
}

/// Result of running a rule along one path.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyOutcome {
    /// `hired[i]` is the decision on `path[i]`.
    pub hired: Vec<bool>,
    pub hires: usize,
    pub value: f64,
}

/// Interview `path` in order with `k` positions open.
///
/// With w positions open and t applicants left (current one included), w = t
/// forces a hire and w = 0 forces a rejection; otherwise the rule decides.
pub fn run_policy(path: &[f64], rule: ThresholdRule<'_>, k: usize) -> Result<PolicyOutcome> {
    let n = path.len();
    if k > n {
        return Err(domain(format!("k = {k} exceeds path length {n}")));
    }
    if let ThresholdRule::Table(tab) = rule {
        if n > tab.n_max {
            return Err(domain(format!("path length {n} beyond table horizon {}", tab.n_max)));
        }
    }
    let mut open = k;
    let mut hired = Vec::with_capacity(n);
    let mut value = 0.0;
    for (i, &v) in path.iter().enumerate() {
        let t = n - i;
        let hire = if open == 0 {
            false
        } else if open == t {
            true
        } else {
            match rule {
                ThresholdRule::Table(tab) => v > 1.0 - tab.p.get(t, open),
                ThresholdRule::Fixed(theta) => v > theta,
            }
        };
        if hire {
            open -= 1;
            value += v;
        }
        hired.push(hire);
    }
    debug_assert_eq!(open, 0);
    Ok(PolicyOutcome { hired, hires: k - open, value })
}

/// Sum of the `k` largest valuations in `path`.
pub fn hindsight_value(path: &[f64], k: usize) -> Result<f64> {
    if k > path.len() {
        return Err(domain(format!("k = {k} exceeds path length {}", path.len())));
    }
    if k == 0 {
        return Ok(0.0);
    }
    let mut buf = path.to_vec();
    let (top, kth, _) = buf.select_nth_unstable_by(k - 1, |a, b| b.total_cmp(a));
    Ok(top.iter().sum::<f64>() + *kth)
}

/// Hindsight value minus the value of the hires in `hired`, summed over the
/// symmetric difference of the two selections so that a policy which picks
/// exactly the top `k` scores exactly 0.
pub fn path_regret(path: &[f64], hired: &[bool], k: usize) -> Result<f64> {
    let n = path.len();
    if hired.len() != n || k > n {
        return Err(domain("decisions do not match the path"));
    }
    let mut in_top = vec![false; n];
    if k > 0 {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.select_nth_unstable_by(k - 1, |&a, &b| path[b].total_cmp(&path[a]));
        for &i in &idx[..k] {
            in_top[i] = true;
        }
    }
    let missed: f64 = (0..n).filter(|&i| in_top[i] && !hired[i]).map(|i| path[i]).sum();
    let extra: f64 = (0..n).filter(|&i| hired[i] && !in_top[i]).map(|i| path[i]).sum();
    Ok(missed - extra)
}

/// Count decisions that disagree with hindsight: at an interior state (t, w)
/// the applicant should be hired iff he beats the `w`th best of the applicants
/// still to come.
pub fn count_mistakes(path: &[f64], hired: &[bool], k: usize) -> Result<usize> {
    let n = path.len();
    if hired.len() != n || k > n {
        return Err(domain("decisions do not match the path"));
    }

    let mut open_at = Vec::with_capacity(n);
    let mut open = k;
    for &h in hired {
        open_at.push(open);
        if h {
            open -= 1;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| path[a].total_cmp(&path[b]));
    let mut rank = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }

    let mut seen = Fenwick::new(n);
    let mut mistakes = 0;
    for i in (0..n).rev() {
        let t = n - i;
        let w = open_at[i];
        if w > 0 && w < t {
            // w-th largest of the t − 1 later applicants
            let bench = path[order[seen.kth_smallest(t - 1 - w + 1)]];
            let v = path[i];
            if (hired[i] && v < bench) || (!hired[i] && v > bench) {
                mistakes += 1;
            }
        }
        seen.add(rank[i]);
    }
    Ok(mistakes)
}

struct Fenwick {
    tree: Vec<usize>,
    log: usize,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        let mut log = 1;
        while (1 << log) <= n {
            log += 1;
        }
        Self { tree: vec![0; n + 1], log }
    }

    fn add(&mut self, idx: usize) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Zero-based index of the `k`th smallest inserted element (k ≥ 1).
    fn kth_smallest(&self, mut k: usize) -> usize {
        let mut pos = 0;
        for b in (0..self.log).rev() {
            let next = pos + (1 << b);
            if next < self.tree.len() && self.tree[next] < k {
                pos = next;
                k -= self.tree[next];
            }
        }
        pos
    }
}

#[derive(Debug, Clone, Copy)]
struct ReplicateResult {
    regret: f64,
    hires: usize,
    mistakes: usize,
}

/// Estimate the expected regret of `config.policy` by simulation.
///
/// `tables` must be supplied (and of the matching kind) for the optimal and
/// myopic rules; it is ignored for a fixed threshold.
pub fn estimate_regret(config: &SimConfig, tables: Option<&DpTables>) -> Result<SimSummary> {
    config.validate()?;
    let rule = match (config.policy, tables) {
        (SimPolicy::FixedThreshold(theta), _) => ThresholdRule::Fixed(theta),
        (policy, Some(tab)) => {
            let want = policy.table_kind().expect("table-driven policy");
            if tab.policy != want {
                return Err(domain(format!("policy {policy} needs {want} tables, got {}", tab.policy)));
            }
            if tab.n_max < config.n {
                return Err(domain(format!("tables up to {} do not cover n = {}", tab.n_max, config.n)));
            }
            ThresholdRule::Table(tab)
        }
        (policy, None) => return Err(domain(format!("policy {policy} needs DP tables"))),
    };

    let results: Vec<ReplicateResult> = (0..config.replicates as u64)
        .into_par_iter()
        .map(|i| -> Result<ReplicateResult> {
            let path = sample_path(config.n, PathSeed::new(config.seed, i));
            let outcome = run_policy(&path, rule, config.k)?;
            Ok(ReplicateResult {
                regret: path_regret(&path, &outcome.hired, config.k)?,
                hires: outcome.hires,
                mistakes: count_mistakes(&path, &outcome.hired, config.k)?,
            })
        })
        .collect::<Result<_>>()?;

    let count = results.len() as f64;
    let mean_regret = results.iter().map(|r| r.regret).sum::<f64>() / count;
    let std_error = if results.len() > 1 {
        let ss: f64 = results.iter().map(|r| (r.regret - mean_regret).powi(2)).sum();
        (ss / (count - 1.0) / count).sqrt()
    } else {
        0.0
    };

    Ok(SimSummary {
        schema_version: crate::SCHEMA_VERSION,
        n: config.n,
        k: config.k,
        policy: config.policy.to_string(),
        replicates: config.replicates,
        seed: config.seed,
        mean_regret,
        std_error,
        mean_hires: results.iter().map(|r| r.hires as f64).sum::<f64>() / count,
        mean_mistakes: results.iter().map(|r| r.mistakes as f64).sum::<f64>() / count,
        generator_version: GENERATOR_VERSION.to_string(),
    })
}
