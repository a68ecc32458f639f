use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `(P_n(cos θ), dP_n(cos θ)/dθ)` for `n = 0..=n_max`.
///
/// The derivative goes through `P'_n = P'_{n−2} + (2n−1)·P_{n−1}`, which has
/// no `1/sin θ` and so stays exact at the poles.
pub fn legendre_table(n_max: usize, theta: f64) -> Result<Vec<(f64, f64)>> {
    if !theta.is_finite() {
        return Err(Error::Domain("theta must be finite"));
    }
    let (mut sin_t, x) = libm::sincos(theta);
    if theta == core::f64::consts::PI {
        // sin(π) rounds to 1.2e-16; the pole derivative is exactly zero
        sin_t = 0.0;
    }
    let mut p = Vec::with_capacity(n_max + 1);
    let mut dp = Vec::with_capacity(n_max + 1);
    p.push(1.0);
    dp.push(0.0);
    if n_max >= 1 {
        p.push(x);
        dp.push(1.0);
    }
    for n in 2..=n_max {
        let nf = n as f64;
        p.push(((2.0 * nf - 1.0) * x * p[n - 1] - (nf - 1.0) * p[n - 2]) / nf);
        dp.push(dp[n - 2] + (2.0 * nf - 1.0) * p[n - 1]);
    }
    Ok(p.into_iter().zip(dp).map(|(p, dp)| (p, -sin_t * dp)).collect())
}
