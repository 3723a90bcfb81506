//! Backward induction over states (t, w): t applicants left, w positions open.
//!
//! The primary solvers work directly with regret r = v* − v. Substituting
//! v = v* − r into the value-space maximizer gives the hire probability
//! p_{t,w} = w/t + (r_{t−1,w} − r_{t−1,w−1}), and the regret then satisfies
//! r_{t,w} = m_{t,w}(p) + p r_{t−1,w−1} + (1 − p) r_{t−1,w}. Working in regret
//! space keeps an O(log n) quantity from being formed as the difference of two
//! O(n) values. [`solve_value_direct`] runs the plain value recursion and is
//! kept as an independent cross-check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::math::{interior_myopic_regret, offline_value};
use crate::table::TriangularTable;

/// Largest horizon for which full tables are materialized; beyond this use
/// [`stream_rows`].
pub const FULL_TABLE_LIMIT: usize = 1 << 13;

/// Which hiring rule a table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    /// Bellman-optimal thresholds.
    Optimal,
    /// Hire with probability w/t, the minimizer of the one-step regret.
    Myopic,
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyKind::Optimal => f.write_str("optimal"),
            PolicyKind::Myopic => f.write_str("myopic"),
        }
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimal" => Ok(PolicyKind::Optimal),
            "myopic" => Ok(PolicyKind::Myopic),
            other => Err(domain(format!("unknown policy kind {other:?}"))),
        }
    }
}

/// Regret, hire-probability and (optionally) value tables for one policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DpTables {
    pub n_max: usize,
    pub policy: PolicyKind,
    pub r: TriangularTable,
    pub p: TriangularTable,
    pub v: Option<TriangularTable>,
}

impl DpTables {
    /// Regret at (t, w).
    pub fn regret(&self, t: usize, w: usize) -> Result<f64> {
        self.r
            .try_get(t, w)
            .ok_or_else(|| domain(format!("state ({t}, {w}) not covered by tables up to {}", self.n_max)))
    }

    /// Hire probability at (t, w).
    pub fn hire_probability(&self, t: usize, w: usize) -> Result<f64> {
        self.p
            .try_get(t, w)
            .ok_or_else(|| domain(format!("state ({t}, {w}) not covered by tables up to {}", self.n_max)))
    }

    /// Fill `v` as v* − r if it is not present yet.
    pub fn with_values(mut self) -> Self {
        if self.v.is_none() {
            let mut v = TriangularTable::zeros(self.n_max);
            for t in 0..=self.n_max {
                for w in 0..=t {
                    v.set(t, w, offline_unchecked(t, w) - self.r.get(t, w));
                }
            }
            self.v = Some(v);
        }
        self
    }

    /// Check the structural invariants every table must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        for t in 0..=self.n_max {
            if self.r.get(t, 0) != 0.0 || self.r.get(t, t) != 0.0 {
                return Err(Error::Invariant(format!("boundary regret nonzero at t = {t}")));
            }
            if t > 0 && (self.p.get(t, 0) != 0.0 || self.p.get(t, t) != 1.0) {
                return Err(Error::Invariant(format!("boundary hire probability wrong at t = {t}")));
            }
            for w in 0..=t {
                let (r, p) = (self.r.get(t, w), self.p.get(t, w));
                if !(r >= 0.0) {
                    return Err(Error::Invariant(format!("negative regret {r} at ({t}, {w})")));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Invariant(format!("hire probability {p} at ({t}, {w})")));
                }
                if let Some(v) = &self.v {
                    let gap = (v.get(t, w) + r - offline_unchecked(t, w)).abs();
                    if gap > 1e-9 {
                        return Err(Error::Invariant(format!(
                            "v + r differs from the offline value by {gap:e} at ({t}, {w})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn offline_unchecked(t: usize, w: usize) -> f64 {
    offline_value(t, w).expect("w <= t by construction")
}

/// One finished row of the regret recursion.
#[derive(Debug, Clone, Copy)]
pub struct RowView<'a> {
    pub t: usize,
    pub r: &'a [f64],
    pub p: &'a [f64],
}

/// Run the regret recursion for rows t = 0..=n_max keeping only two rows in
/// memory, handing each finished row to `visit`.
pub fn stream_rows<F>(policy: PolicyKind, n_max: usize, mut visit: F) -> Result<()>
where
    F: FnMut(RowView<'_>),
{
    if n_max < 1 {
        return Err(domain("horizon n_max must be at least 1"));
    }
    let mut r_prev = vec![0.0; n_max + 1];
    let mut r_cur = vec![0.0; n_max + 1];
    let mut p_cur = vec![0.0; n_max + 1];

    // t = 0: the empty state.
    visit(RowView { t: 0, r: &r_prev[..1], p: &p_cur[..1] });

    for t in 1..=n_max {
        fill_row(policy, t, &r_prev[..t], &mut r_cur[..=t], &mut p_cur[..=t]);
        visit(RowView { t, r: &r_cur[..=t], p: &p_cur[..=t] });
        std::mem::swap(&mut r_prev, &mut r_cur);
    }
    Ok(())
}

/// Compute row t from row t − 1. `r_prev` has length t, the outputs t + 1.
fn fill_row(policy: PolicyKind, t: usize, r_prev: &[f64], r: &mut [f64], p: &mut [f64]) {
    r[0] = 0.0;
    p[0] = 0.0;
    r[t] = 0.0;
    p[t] = 1.0;
    let tf = t as f64;
    for w in 1..t {
        let myopic = w as f64 / tf;
        let hire = match policy {
            PolicyKind::Optimal => (myopic + (r_prev[w] - r_prev[w - 1])).clamp(0.0, 1.0),
            PolicyKind::Myopic => myopic,
        };
        p[w] = hire;
        r[w] = interior_myopic_regret(t, w, hire) + hire * r_prev[w - 1] + (1.0 - hire) * r_prev[w];
    }
}

fn solve_full(policy: PolicyKind, n_max: usize) -> Result<DpTables> {
    if n_max > FULL_TABLE_LIMIT {
        return Err(domain(format!(
            "full tables are limited to n_max <= {FULL_TABLE_LIMIT}; use stream_rows for n_max = {n_max}"
        )));
    }
    let mut r = TriangularTable::zeros(n_max.max(1));
    let mut p = TriangularTable::zeros(n_max.max(1));
    stream_rows(policy, n_max, |row| {
        r.row_mut(row.t).copy_from_slice(row.r);
        p.row_mut(row.t).copy_from_slice(row.p);
    })?;
    Ok(DpTables { n_max, policy, r, p, v: None })
}

/// Bellman-optimal regret and hire probabilities for every state up to `n_max`.
pub fn solve_optimal(n_max: usize) -> Result<DpTables> {
    solve_full(PolicyKind::Optimal, n_max)
}

/// Regret of the myopic rule p = w/t for every state up to `n_max`.
pub fn solve_myopic(n_max: usize) -> Result<DpTables> {
    solve_full(PolicyKind::Myopic, n_max)
}

/// Solve either policy.
pub fn solve(policy: PolicyKind, n_max: usize) -> Result<DpTables> {
    solve_full(policy, n_max)
}

/// Value-space Bellman recursion
/// v_{t,w} = max_p p(1 − p/2) + p v_{t−1,w−1} + (1 − p) v_{t−1,w},
/// maximized at p = 1 − (v_{t−1,w} − v_{t−1,w−1}) clamped to [0, 1].
///
/// `r` is reported as v* − v so the result can be compared against
/// [`solve_optimal`] state by state.
pub fn solve_value_direct(n_max: usize) -> Result<DpTables> {
    if n_max < 1 {
        return Err(domain("horizon n_max must be at least 1"));
    }
    if n_max > FULL_TABLE_LIMIT {
        return Err(domain(format!("full tables are limited to n_max <= {FULL_TABLE_LIMIT}")));
    }
    let mut v = TriangularTable::zeros(n_max);
    let mut p = TriangularTable::zeros(n_max);
    for t in 1..=n_max {
        p.set(t, 0, 0.0);
        v.set(t, 0, 0.0);
        // forced hire of every remaining applicant
        p.set(t, t, 1.0);
        v.set(t, t, 0.5 + v.get(t - 1, t - 1));
        for w in 1..t {
            let keep = v.get(t - 1, w);
            let take = v.get(t - 1, w - 1);
            let hire = (1.0 - (keep - take)).clamp(0.0, 1.0);
            p.set(t, w, hire);
            v.set(t, w, hire * (1.0 - 0.5 * hire) + hire * take + (1.0 - hire) * keep);
        }
    }
    let mut r = TriangularTable::zeros(n_max);
    for t in 0..=n_max {
        for w in 0..=t {
            let gap = offline_unchecked(t, w) - v.get(t, w);
            // boundary states are exact; elsewhere keep rounding noise visible
            r.set(t, w, if w == 0 || w == t { 0.0 } else { gap });
        }
    }
    Ok(DpTables { n_max, policy: PolicyKind::Optimal, r, p, v: Some(v) })
}
