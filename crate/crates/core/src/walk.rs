//! Exact law of the open-positions walk w(t) under a policy table.
//!
//! Time runs backwards: t is the number of applicants not yet interviewed,
//! including the current one, so interviews proceed t = n, n − 1, …, 1 and the
//! walk starts at w(n) = k. From state (t, w) it moves to (t − 1, w − 1) with
//! probability p_{t,w} (a hire) and to (t − 1, w) otherwise.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dp::DpTables;
use crate::error::{domain, Result};
use crate::math::{interior_myopic_regret, OrderStatIndex};

/// States whose walk mass is below this are left out of the mistake sums.
/// Mistake probabilities are at most 1, so across ≤ 10⁸ states the total moves
/// by less than 1e−12.
pub const NEGLIGIBLE_MASS: f64 = 1e-20;

/// Probability mass of w(t) over its support at one time t.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkSlice {
    /// Smallest reachable w; `mass[i]` is Pr(w(t) = w_lo + i).
    pub w_lo: usize,
    pub mass: Vec<f64>,
}

impl WalkSlice {
    pub fn w_hi(&self) -> usize {
        self.w_lo + self.mass.len() - 1
    }

    pub fn get(&self, w: usize) -> f64 {
        if w < self.w_lo {
            return 0.0;
        }
        self.mass.get(w - self.w_lo).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.mass.iter().enumerate().map(move |(i, &m)| (self.w_lo + i, m))
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }
}

/// Distribution of w(t) for every t in 0..=n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkDistribution {
    pub n: usize,
    pub k: usize,
    /// Indexed by t.
    pub slices: Vec<WalkSlice>,
}

impl WalkDistribution {
    pub fn slice(&self, t: usize) -> &WalkSlice {
        &self.slices[t]
    }

    pub fn mass(&self, t: usize, w: usize) -> f64 {
        self.slices.get(t).map_or(0.0, |s| s.get(w))
    }
}

fn support(n: usize, k: usize, t: usize) -> (usize, usize) {
    let lo = k.saturating_sub(n - t);
    let hi = t.min(k);
    (lo, hi)
}

/// Propagate the point mass at w(n) = k down to t = 0 through the policy's
/// hire probabilities. No sampling is involved.
pub fn forward_distribution(tables: &DpTables, n: usize, k: usize) -> Result<WalkDistribution> {
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    if n > tables.n_max {
        return Err(domain(format!("n = {n} beyond table horizon {}", tables.n_max)));
    }

    let mut slices = vec![WalkSlice { w_lo: 0, mass: Vec::new() }; n + 1];
    slices[n] = WalkSlice { w_lo: k, mass: vec![1.0] };

    for t in (1..=n).rev() {
        let (lo, hi) = support(n, k, t - 1);
        let mut next = vec![0.0; hi - lo + 1];
        let cur = &slices[t];
        let probs = tables.p.row(t);
        for (w, m) in cur.iter() {
            if m == 0.0 {
                continue;
            }
            let hire = probs[w];
            if w > 0 {
                next[w - 1 - lo] += m * hire;
            }
            // w == t forces a hire, so the stay branch has zero weight there
            if w < t {
                next[w - lo] += m * (1.0 - hire);
            }
        }
        slices[t - 1] = WalkSlice { w_lo: lo, mass: next };
    }

    Ok(WalkDistribution { n, k, slices })
}

/// Mean and variance of w(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkMoments {
    pub t: usize,
    pub mean: f64,
    pub variance: f64,
}

/// E(w(t)) and Var(w(t)) for t = 0..=n.
pub fn walk_moments(dist: &WalkDistribution) -> Vec<WalkMoments> {
    dist.slices
        .iter()
        .enumerate()
        .map(|(t, slice)| {
            let mean: f64 = slice.iter().map(|(w, m)| w as f64 * m).sum();
            let variance: f64 = slice
                .iter()
                .map(|(w, m)| {
                    let d = w as f64 - mean;
                    d * d * m
                })
                .sum();
            WalkMoments { t, mean, variance }
        })
        .collect()
}

/// Var of the fair-coin walk started at time n, observed at time t: the
/// variance of a Binomial(n − t, 1/2), i.e. (n − t)/4.
pub fn reference_variance(n: usize, t: usize) -> f64 {
    n.saturating_sub(t) as f64 / 4.0
}

fn check_pair(dist: &WalkDistribution, tables: &DpTables) -> Result<()> {
    if dist.n > tables.n_max || dist.slices.len() != dist.n + 1 {
        return Err(domain(format!(
            "walk over horizon {} does not fit tables up to {}",
            dist.n, tables.n_max
        )));
    }
    Ok(())
}

/// E[(1/2 − p_{t,w(t)})(w(t) − t/2)], the covariance of the step
/// w(t − 1) − w(t) with w(t) when E w(t) = t/2.
pub fn step_covariance(dist: &WalkDistribution, tables: &DpTables, t: usize) -> Result<f64> {
    check_pair(dist, tables)?;
    if t == 0 || t > dist.n {
        return Err(domain(format!("time t = {t} outside 1..={}", dist.n)));
    }
    let probs = tables.p.row(t);
    let half = t as f64 / 2.0;
    Ok(dist
        .slice(t)
        .iter()
        .map(|(w, m)| m * (0.5 - probs[w]) * (w as f64 - half))
        .sum())
}

/// Probability that the decision at (t, w) with hire probability p is a
/// hiring mistake against the hindsight benchmark s = s_{t−1,w}, the `w`th
/// best of the other t − 1 applicants.
///
/// With y = 1 − p the threshold and F the CDF of s:
/// rejecting v < y is wrong when v > s, Pr = ∫₀^y F;
/// hiring v ≥ y is wrong when v < s, Pr = ∫_y^1 (1 − F).
/// Boundary states return 0.
pub fn mistake_probability(t: usize, w: usize, p: f64) -> Result<f64> {
    if w > t {
        return Err(domain(format!("w = {w} exceeds t = {t}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("hire probability p = {p} outside [0, 1]")));
    }
    if w == 0 || w == t {
        return Ok(0.0);
    }
    let benchmark = OrderStatIndex::new(t - 1, w)?;
    let y = 1.0 - p;
    let below = benchmark.integrated_cdf(y)?;
    // ∫₀¹ F = 1 − μ_{t−1,w} = w/t
    let whole = w as f64 / t as f64;
    let reject_wrong = below;
    let hire_wrong = (1.0 - y) - (whole - below);
    Ok((reject_wrong + hire_wrong).clamp(0.0, 1.0))
}

/// Expected mistake counts along the walk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MistakeStats {
    /// Indexed by t; entry 0 is always 0.
    pub per_period: Vec<f64>,
    pub total: f64,
}

/// Expected number of hiring mistakes at each t, and in total, for the walk
/// `dist` driven by `tables`.
pub fn expected_mistakes(dist: &WalkDistribution, tables: &DpTables) -> Result<MistakeStats> {
    check_pair(dist, tables)?;
    let per_period: Vec<f64> = (0..=dist.n)
        .into_par_iter()
        .map(|t| -> Result<f64> {
            if t == 0 {
                return Ok(0.0);
            }
            let probs = tables.p.row(t);
            let mut acc = 0.0;
            for (w, m) in dist.slice(t).iter() {
                if m < NEGLIGIBLE_MASS || w == 0 || w == t {
                    continue;
                }
                acc += m * mistake_probability(t, w, probs[w])?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = per_period.iter().sum();
    Ok(MistakeStats { per_period, total })
}

/// Σ_t E[m_{t,w(t)}(p_{t,w(t)})]: the total regret rebuilt from the expected
/// one-step regrets along the walk.
pub fn decomposed_regret(dist: &WalkDistribution, tables: &DpTables) -> Result<f64> {
    check_pair(dist, tables)?;
    let mut total = 0.0;
    for t in 1..=dist.n {
        let probs = tables.p.row(t);
        for (w, m) in dist.slice(t).iter() {
            if w == 0 || w == t {
                continue;
            }
            total += m * interior_myopic_regret(t, w, probs[w]);
        }
    }
    Ok(total)
}

/// One line of the walk dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkRow {
    pub t: usize,
    pub mean: f64,
    pub variance: f64,
    pub variance_bound: f64,
    pub covariance: f64,
    pub mistake_probability: f64,
}

/// Per-t summary rows for t = 1..=n in increasing order.
pub fn walk_rows(dist: &WalkDistribution, tables: &DpTables) -> Result<Vec<WalkRow>> {
    let moments = walk_moments(dist);
    let mistakes = expected_mistakes(dist, tables)?;
    (1..=dist.n)
        .map(|t| {
            Ok(WalkRow {
                t,
                mean: moments[t].mean,
                variance: moments[t].variance,
                variance_bound: reference_variance(dist.n, t),
                covariance: step_covariance(dist, tables, t)?,
                mistake_probability: mistakes.per_period[t],
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::{solve_myopic, solve_optimal};
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_one_walk() {
        let tab = solve_optimal(2).unwrap();
        let dist = forward_distribution(&tab, 2, 1).unwrap();
        assert_eq!(dist.slice(2).iter().collect::<Vec<_>>(), vec![(1, 1.0)]);
        assert_abs_diff_eq!(dist.mass(1, 0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.mass(1, 1), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.mass(0, 0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn forced_hires_walk() {
        let tab = solve_optimal(2).unwrap();
        let dist = forward_distribution(&tab, 2, 2).unwrap();
        assert_eq!(dist.slice(1).iter().collect::<Vec<_>>(), vec![(1, 1.0)]);
        let stats = expected_mistakes(&dist, &tab).unwrap();
        assert_eq!(stats.total, 0.0);
    }

    #[test]
    fn rejects_bad_shapes() {
        let tab = solve_optimal(10).unwrap();
        assert!(forward_distribution(&tab, 4, 5).is_err());
        assert!(forward_distribution(&tab, 11, 5).is_err());
        let dist = forward_distribution(&tab, 10, 5).unwrap();
        assert!(step_covariance(&dist, &tab, 0).is_err());
        assert!(step_covariance(&dist, &tab, 11).is_err());
        let small = solve_optimal(5).unwrap();
        assert!(step_covariance(&dist, &small, 3).is_err());
        assert!(expected_mistakes(&dist, &small).is_err());
    }

    #[test]
    fn start_is_point_mass_and_slices_sum_to_one() {
        let tab = solve_myopic(60).unwrap();
        for k in 0..=60 {
            let dist = forward_distribution(&tab, 60, k).unwrap();
            assert_eq!(dist.slice(60).iter().collect::<Vec<_>>(), vec![(k, 1.0)]);
            for (t, s) in dist.slices.iter().enumerate() {
                assert_abs_diff_eq!(s.total(), 1.0, epsilon = 1e-12);
                let (lo, hi) = support(60, k, t);
                assert_eq!((s.w_lo, s.w_hi()), (lo, hi));
            }
            let m = walk_moments(&dist);
            assert_eq!(m[60].variance, 0.0);
        }
    }

    #[test]
    fn reference_variance_examples() {
        assert_eq!(reference_variance(9, 9), 0.0);
        assert_eq!(reference_variance(16, 0), 4.0);
        assert_eq!(reference_variance(100, 36), 16.0);
    }

    #[test]
    fn covariance_examples() {
        let tab = solve_optimal(64).unwrap();
        let dist = forward_distribution(&tab, 64, 32).unwrap();
        assert_eq!(step_covariance(&dist, &tab, 64).unwrap(), 0.0);
        for t in 1..=64 {
            assert!(step_covariance(&dist, &tab, t).unwrap() <= 1e-12);
        }
        // two-point mass at t = 1 with p_{1,0} = 0 and p_{1,1} = 1:
        // (1/2)(1/2)(-1/2) + (1/2)(-1/2)(1/2) = -1/4
        let small = solve_optimal(2).unwrap();
        let d2 = forward_distribution(&small, 2, 1).unwrap();
        assert_abs_diff_eq!(step_covariance(&d2, &small, 1).unwrap(), -0.25, epsilon = 1e-15);
    }

    #[test]
    fn mistake_probability_examples() {
        assert_abs_diff_eq!(mistake_probability(2, 1, 0.5).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(mistake_probability(2, 1, 0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mistake_probability(2, 1, 1.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(mistake_probability(5, 0, 0.3).unwrap(), 0.0);
        assert_eq!(mistake_probability(5, 5, 1.0).unwrap(), 0.0);
        assert!(mistake_probability(5, 2, 1.5).is_err());
        assert!(mistake_probability(5, 6, 0.5).is_err());
    }

    #[test]
    fn expected_mistakes_two_one() {
        let tab = solve_optimal(2).unwrap();
        let dist = forward_distribution(&tab, 2, 1).unwrap();
        let stats = expected_mistakes(&dist, &tab).unwrap();
        assert_abs_diff_eq!(stats.total, 0.25, epsilon = 1e-15);
        assert_eq!(stats.per_period[1], 0.0);
        assert_abs_diff_eq!(stats.total, stats.per_period.iter().sum::<f64>(), epsilon = 1e-12);
    }

    #[test]
    fn decomposition_small() {
        let tab = solve_optimal(3).unwrap();
        let dist = forward_distribution(&tab, 3, 1).unwrap();
        assert_abs_diff_eq!(decomposed_regret(&dist, &tab).unwrap(), 7.0 / 128.0, epsilon = 1e-15);
    }
}
