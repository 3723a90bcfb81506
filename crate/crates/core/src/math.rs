//! Closed-form quantities for uniform valuations: order-statistic means and
//! CDFs, the option value of one more applicant, the offline optimum, and the
//! one-step (myopic) regret.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special::beta_reg;

/// A state of the hiring problem: `n` applicants left, `k` positions open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemSize {
    n: usize,
    k: usize,
}

impl ProblemSize {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("problem size needs at least one applicant"));
        }
        if k > n {
            return Err(domain(format!("k = {k} exceeds n = {n}")));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// No decision is left to make: either nothing to fill or everyone must be hired.
    pub fn is_boundary(&self) -> bool {
        self.k == 0 || self.k == self.n
    }
}

/// The `j`th largest of `n` standard uniforms, distributed Beta(n − j + 1, j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderStatIndex {
    n: usize,
    j: usize,
}

impl OrderStatIndex {
    pub fn new(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(domain(format!("rank j = {j} outside 1..={n}")));
        }
        Ok(Self { n, j })
    }

    /// Shape parameters (a, b) of the Beta law.
    pub fn shapes(&self) -> (f64, f64) {
        ((self.n - self.j + 1) as f64, self.j as f64)
    }

    pub fn mean(&self) -> f64 {
        (self.n - self.j + 1) as f64 / (self.n + 1) as f64
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.shapes();
        beta_reg(x, a, b)
    }

    /// ∫₀^y F(x) dx, from the incomplete-beta antiderivative
    /// [B(y, a, b+1) − (1 − y) B(y, a, b)] / B(1, a, b).
    ///
    /// With B(1, a, b+1) / B(1, a, b) = b / (a + b) this becomes
    /// I_y(a, b+1) · b/(a+b) − (1 − y) I_y(a, b).
    pub fn integrated_cdf(&self, y: f64) -> Result<f64> {
        let (a, b) = self.shapes();
        let upper = beta_reg(y, a, b + 1.0)?;
        let lower = beta_reg(y, a, b)?;
        Ok((upper * b / (a + b) - (1.0 - y) * lower).max(0.0))
    }
}

/// μ_{n,j} = (n − j + 1)/(n + 1), the mean of the `j`th best of `n` uniforms.
pub fn mu(n: usize, j: usize) -> Result<f64> {
    Ok(OrderStatIndex::new(n, j)?.mean())
}

/// λ_{n,k} = k(k+1) / (2n(n+1)): the expected gain from being allowed to swap
/// the `k`th best of the other n − 1 applicants for the current one.
pub fn lambda(n: usize, k: usize) -> Result<f64> {
    ProblemSize::new(n, k)?;
    let (n, k) = (n as f64, k as f64);
    Ok(k * (k + 1.0) / (2.0 * n * (n + 1.0)))
}

/// CDF of the `j`th largest of `n` uniforms at `x`.
pub fn orderstat_cdf(n: usize, j: usize, x: f64) -> Result<f64> {
    OrderStatIndex::new(n, j)?.cdf(x)
}

/// v*_{n,k}: expected sum of the `k` largest of `n` uniforms,
/// k(2n − k + 1) / (2(n + 1)).
pub fn offline_value(n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    let (n, k) = (n as f64, k as f64);
    Ok(k * (2.0 * n - k + 1.0) / (2.0 * (n + 1.0)))
}

/// Expected cost of the current accept/reject decision when the applicant is
/// hired with probability `p` (i.e. whenever his value exceeds 1 − p),
/// measured against the `k`th best of the remaining n − 1 applicants:
/// λ_{n,k} + p(μ_{n−1,k} − 1 + p/2).
///
/// Boundary states (k = 0 or k = n) carry no decision and return 0.
pub fn myopic_regret(n: usize, k: usize, p: f64) -> Result<f64> {
    let size = ProblemSize::new(n, k)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("hire probability p = {p} outside [0, 1]")));
    }
    if size.is_boundary() {
        return Ok(0.0);
    }
    Ok(interior_myopic_regret(n, k, p))
}

/// Unchecked form for interior states, 1 ≤ k ≤ n − 1.
#[inline]
pub(crate) fn interior_myopic_regret(n: usize, k: usize, p: f64) -> f64 {
    let nf = n as f64;
    let kf = k as f64;
    let lam = kf * (kf + 1.0) / (2.0 * nf * (nf + 1.0));
    // μ_{n−1,k} = (n − k)/n
    let mu_next = (nf - kf) / nf;
    lam + p * (mu_next - 1.0 + 0.5 * p)
}

/// The hire probability that minimizes [`myopic_regret`]: 1 − μ_{n−1,k} = k/n.
pub fn myopic_hire_probability(n: usize, k: usize) -> Result<f64> {
    ProblemSize::new(n, k)?;
    Ok(k as f64 / n as f64)
}

/// Minimum of the myopic regret over p, k(n − k) / (2n²(n + 1)).
pub fn min_myopic_regret(n: usize, k: usize) -> Result<f64> {
    ProblemSize::new(n, k)?;
    let (nf, kf) = (n as f64, k as f64);
    Ok(kf * (nf - kf) / (2.0 * nf * nf * (nf + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use approx::assert_abs_diff_eq;

    #[test]
    fn mu_examples() {
        assert_abs_diff_eq!(mu(2, 1).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mu(1, 1).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mu(3, 3).unwrap(), 0.25, epsilon = 1e-15);
        assert!(matches!(mu(3, 0), Err(Error::Domain(_))));
        assert!(matches!(mu(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn lambda_examples() {
        assert_abs_diff_eq!(lambda(2, 1).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
        for n in 1..20 {
            assert_eq!(lambda(n, 0).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(lambda(3, 2).unwrap(), 0.25, epsilon = 1e-15);
        assert!(lambda(3, 4).is_err());
        assert!(lambda(0, 0).is_err());
    }

    #[test]
    fn orderstat_cdf_examples() {
        assert_abs_diff_eq!(orderstat_cdf(1, 1, 0.7).unwrap(), 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(orderstat_cdf(2, 1, 0.5).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(orderstat_cdf(2, 2, 0.5).unwrap(), 0.75, epsilon = 1e-15);
        assert!(orderstat_cdf(2, 3, 0.5).is_err());
        assert!(orderstat_cdf(2, 1, 1.5).is_err());
    }

    #[test]
    fn offline_value_examples() {
        assert_abs_diff_eq!(offline_value(2, 1).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        for n in 1..50 {
            assert_abs_diff_eq!(offline_value(n, n).unwrap(), n as f64 / 2.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(offline_value(3, 1).unwrap(), 0.75, epsilon = 1e-15);
        assert!(offline_value(3, 4).is_err());
    }

    #[test]
    fn offline_value_matches_sum_of_means() {
        for n in 1..40 {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += mu(n, k).unwrap();
                assert_abs_diff_eq!(offline_value(n, k).unwrap(), acc, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn myopic_regret_examples() {
        assert_abs_diff_eq!(myopic_regret(2, 1, 0.5).unwrap(), 1.0 / 24.0, epsilon = 1e-15);
        for n in 2..30 {
            for k in 1..n {
                assert_abs_diff_eq!(
                    myopic_regret(n, k, 0.0).unwrap(),
                    lambda(n, k).unwrap(),
                    epsilon = 1e-15
                );
            }
        }
        assert_abs_diff_eq!(myopic_regret(3, 1, 1.0 / 3.0).unwrap(), 1.0 / 36.0, epsilon = 1e-15);
    }

    #[test]
    fn myopic_regret_boundaries_and_errors() {
        assert_eq!(myopic_regret(5, 0, 0.3).unwrap(), 0.0);
        assert_eq!(myopic_regret(5, 5, 1.0).unwrap(), 0.0);
        assert!(matches!(myopic_regret(5, 2, 1.2), Err(Error::Domain(_))));
        assert!(matches!(myopic_regret(5, 2, -0.1), Err(Error::Domain(_))));
        assert!(myopic_regret(5, 6, 0.5).is_err());
    }

    #[test]
    fn integrated_cdf_small_case() {
        // F_{1,1}(v) = v, so the integral to 1/2 is 1/8.
        let s = OrderStatIndex::new(1, 1).unwrap();
        assert_abs_diff_eq!(s.integrated_cdf(0.5).unwrap(), 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(s.integrated_cdf(1.0).unwrap(), 0.5, epsilon = 1e-15);
    }

    proptest::proptest! {
        #[test]
        fn myopic_regret_minimized_at_k_over_n(n in 2usize..1000, kfrac in 0.0f64..1.0, p in 0.0f64..1.0) {
            let k = 1 + ((n - 2) as f64 * kfrac) as usize;
            let best = myopic_hire_probability(n, k).unwrap();
            let m_best = myopic_regret(n, k, best).unwrap();
            proptest::prop_assert!((m_best - min_myopic_regret(n, k).unwrap()).abs() < 1e-15);
            proptest::prop_assert!(myopic_regret(n, k, p).unwrap() >= m_best - 1e-15);
            proptest::prop_assert!(m_best >= 0.0);
        }
    }
}
