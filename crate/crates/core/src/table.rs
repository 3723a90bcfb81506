//! Flat storage for arrays indexed by (t, w) with 0 ≤ w ≤ t ≤ n_max.

use serde::{Deserialize, Serialize};

#[inline]
pub(crate) fn row_start(t: usize) -> usize {
    t * (t + 1) / 2
}

/// Lower-triangular array stored row-major at offset t(t+1)/2 + w.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangularTable {
    n_max: usize,
    data: Vec<f64>,
}

impl TriangularTable {
    pub fn zeros(n_max: usize) -> Self {
        Self {
            n_max,
            data: vec![0.0; row_start(n_max + 1)],
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of stored states, (n_max + 1)(n_max + 2)/2.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, t: usize, w: usize) -> f64 {
        debug_assert!(w <= t && t <= self.n_max, "({t}, {w}) out of range");
        self.data[row_start(t) + w]
    }

    /// Checked access; `None` when w > t or t > n_max.
    pub fn try_get(&self, t: usize, w: usize) -> Option<f64> {
        (w <= t && t <= self.n_max).then(|| self.data[row_start(t) + w])
    }

    #[inline]
    pub fn set(&mut self, t: usize, w: usize, value: f64) {
        debug_assert!(w <= t && t <= self.n_max, "({t}, {w}) out of range");
        self.data[row_start(t) + w] = value;
    }

    /// Row t as a slice of length t + 1.
    pub fn row(&self, t: usize) -> &[f64] {
        &self.data[row_start(t)..row_start(t + 1)]
    }

    pub fn row_mut(&mut self, t: usize) -> &mut [f64] {
        &mut self.data[row_start(t)..row_start(t + 1)]
    }

    /// All states in increasing (t, w) order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.n_max).flat_map(move |t| self.row(t).iter().enumerate().map(move |(w, &v)| (t, w, v)))
    }
}
