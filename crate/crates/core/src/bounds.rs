//! Logarithmic regret bounds, regret curves over a grid of horizons, and the
//! fitted growth rate in ln n.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dp::{stream_rows, PolicyKind};
use crate::error::{domain, Error, Result};

/// ln(n + 1)/8, an upper bound on the optimal regret for every k.
pub fn upper_bound(n: usize) -> f64 {
    ((n + 1) as f64).ln() / 8.0
}

/// ln(n)/16 − 1/4, a lower bound on the optimal regret at k = n/2.
///
/// Only asserted for even n ≥ 16.
pub fn lower_bound(n: usize) -> Result<f64> {
    if n < 16 || n % 2 == 1 {
        return Err(domain(format!("lower bound only holds for even n >= 16, got {n}")));
    }
    Ok((n as f64).ln() / 16.0 - 0.25)
}

/// How the number of positions is chosen for each horizon in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KRule {
    /// k = n/2; n must be even.
    Half,
    Fixed(usize),
    /// k = round(ρ n).
    Ratio(f64),
}

impl KRule {
    pub fn positions(&self, n: usize) -> Result<usize> {
        let k = match *self {
            KRule::Half => {
                if n % 2 == 1 {
                    return Err(domain(format!("k = n/2 needs an even n, got {n}")));
                }
                n / 2
            }
            KRule::Fixed(k) => k,
            KRule::Ratio(rho) => (rho * n as f64).round() as usize,
        };
        if k < 1 || k + 1 > n {
            return Err(domain(format!("rule {self} gives k = {k}, outside 1..={}", n.saturating_sub(1))));
        }
        Ok(k)
    }
}

impl fmt::Display for KRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KRule::Half => f.write_str("half"),
            KRule::Fixed(k) => write!(f, "{k}"),
            KRule::Ratio(rho) => write!(f, "ratio:{rho}"),
        }
    }
}

impl FromStr for KRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "half" {
            return Ok(KRule::Half);
        }
        if let Some(rho) = s.strip_prefix("ratio:") {
            let rho: f64 = rho.parse().map_err(|_| domain(format!("bad ratio in {s:?}")))?;
            if !(rho > 0.0 && rho < 1.0) {
                return Err(domain(format!("ratio {rho} outside (0, 1)")));
            }
            return Ok(KRule::Ratio(rho));
        }
        s.parse::<usize>()
            .map(KRule::Fixed)
            .map_err(|_| domain(format!("k rule {s:?} is not half, an integer or ratio:<rho>")))
    }
}

/// A set of horizons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Grid {
    /// start, start·factor, … up to end.
    Geometric { start: usize, end: usize, factor: usize },
    /// start, start + step, … up to end.
    Arithmetic { start: usize, end: usize, step: usize },
    Explicit { values: Vec<usize> },
}

impl Grid {
    pub fn values(&self) -> Vec<usize> {
        match self {
            Grid::Geometric { start, end, factor } => {
                let mut out = Vec::new();
                let mut n = *start;
                while n <= *end {
                    out.push(n);
                    n *= factor;
                }
                out
            }
            Grid::Arithmetic { start, end, step } => (*start..=*end).step_by(*step).collect(),
            Grid::Explicit { values } => values.clone(),
        }
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::Geometric { start: 16, end: 4096, factor: 2 }
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// `a:b:xS` (geometric), `a:b:+d` (arithmetic) or a comma list.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || domain(format!("grid {s:?} is not a:b:xS, a:b:+d or a comma list"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [a, b, step] => {
                let start: usize = a.parse().map_err(|_| bad())?;
                let end: usize = b.parse().map_err(|_| bad())?;
                if start == 0 || end < start {
                    return Err(bad());
                }
                if let Some(f) = step.strip_prefix('x') {
                    let factor: usize = f.parse().map_err(|_| bad())?;
                    if factor < 2 {
                        return Err(domain("geometric grid factor must be at least 2"));
                    }
                    Ok(Grid::Geometric { start, end, factor })
                } else if let Some(d) = step.strip_prefix('+') {
                    let step: usize = d.parse().map_err(|_| bad())?;
                    if step == 0 {
                        return Err(domain("arithmetic grid step must be positive"));
                    }
                    Ok(Grid::Arithmetic { start, end, step })
                } else {
                    Err(bad())
                }
            }
            [list] => {
                let values = list
                    .split(',')
                    .filter(|v| !v.trim().is_empty())
                    .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Grid::Explicit { values })
            }
            _ => Err(bad()),
        }
    }
}

/// One horizon of a regret curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub n: usize,
    pub k: usize,
    pub regret_optimal: f64,
    pub regret_myopic: f64,
    pub upper_bound: f64,
    /// `None` where the lower bound is not asserted (k ≠ n/2 or n < 16).
    pub lower_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretCurve {
    pub grid: Grid,
    pub k_rule: KRule,
    pub entries: Vec<CurveEntry>,
}

/// Regret of both policies at each grid horizon.
///
/// States (t, w) with t ≤ n are exactly the subproblems of horizon n, so a
/// single streaming solve up to the largest horizon serves the whole grid.
pub fn sweep(grid: &Grid, k_rule: KRule) -> Result<RegretCurve> {
    let ns = grid.values();
    let mut targets = Vec::with_capacity(ns.len());
    for &n in &ns {
        if n < 2 {
            return Err(domain(format!("grid horizon {n} below 2")));
        }
        targets.push((n, k_rule.positions(n)?));
    }
    let Some(&n_max) = ns.iter().max() else {
        return Ok(RegretCurve { grid: grid.clone(), k_rule, entries: Vec::new() });
    };

    let read = |policy: PolicyKind| -> Result<Vec<f64>> {
        let mut out = vec![f64::NAN; targets.len()];
        stream_rows(policy, n_max, |row| {
            for (slot, &(n, k)) in out.iter_mut().zip(&targets) {
                if n == row.t {
                    *slot = row.r[k];
                }
            }
        })?;
        Ok(out)
    };
    let (optimal, myopic) = rayon::join(|| read(PolicyKind::Optimal), || read(PolicyKind::Myopic));
    let (optimal, myopic) = (optimal?, myopic?);

    let entries = targets
        .iter()
        .zip(optimal.iter().zip(&myopic))
        .map(|(&(n, k), (&ro, &rm))| CurveEntry {
            n,
            k,
            regret_optimal: ro,
            regret_myopic: rm,
            upper_bound: upper_bound(n),
            lower_bound: if 2 * k == n { lower_bound(n).ok() } else { None },
        })
        .collect();
    Ok(RegretCurve { grid: grid.clone(), k_rule, entries })
}

/// Least-squares line regret_optimal ≈ slope · ln n + intercept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute residual.
    pub max_residual: f64,
}

pub fn growth_fit(curve: &RegretCurve) -> Result<GrowthFit> {
    let distinct: BTreeSet<usize> = curve.entries.iter().map(|e| e.n).collect();
    if distinct.len() < 3 {
        return Err(domain(format!(
            "growth fit needs at least 3 distinct horizons, got {}",
            distinct.len()
        )));
    }
    let xs: Vec<f64> = curve.entries.iter().map(|e| (e.n as f64).ln()).collect();
    let ys: Vec<f64> = curve.entries.iter().map(|e| e.regret_optimal).collect();
    let m = xs.len() as f64;
    let x_bar = xs.iter().sum::<f64>() / m;
    let y_bar = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_bar) * (y - y_bar)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - x_bar).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    Ok(GrowthFit { slope, intercept, max_residual })
}

/// Every bound or ordering the curve breaks, described in words.
pub fn violations(curve: &RegretCurve) -> Vec<String> {
    let mut out = Vec::new();
    for e in &curve.entries {
        if !(e.regret_optimal >= 0.0) {
            out.push(format!("n={} k={}: negative optimal regret {}", e.n, e.k, e.regret_optimal));
        }
        if e.regret_optimal > e.regret_myopic {
            out.push(format!(
                "n={} k={}: optimal regret {} above myopic {}",
                e.n, e.k, e.regret_optimal, e.regret_myopic
            ));
        }
        if e.regret_optimal > e.upper_bound {
            out.push(format!(
                "n={} k={}: optimal regret {} above upper bound {}",
                e.n, e.k, e.regret_optimal, e.upper_bound
            ));
        }
        if let Some(lb) = e.lower_bound {
            if e.regret_optimal < lb {
                out.push(format!(
                    "n={} k={}: optimal regret {} below lower bound {lb}",
                    e.n, e.k, e.regret_optimal
                ));
            }
        }
    }
    out
}

/// A regret curve with its growth fit and any bound violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub curve: RegretCurve,
    pub fitted_slope: f64,
    pub fitted_intercept: f64,
    pub fit_residual: f64,
    pub violations: Vec<String>,
}

pub fn build_report(curve: RegretCurve) -> Result<BoundsReport> {
    let fit = growth_fit(&curve)?;
    let violations = violations(&curve);
    Ok(BoundsReport {
        schema_version: crate::SCHEMA_VERSION,
        artifact_version: crate::ARTIFACT_VERSION.to_string(),
        curve,
        fitted_slope: fit.slope,
        fitted_intercept: fit.intercept,
        fit_residual: fit.max_residual,
        violations,
    })
}
