//! Cylindrical Bessel functions `J_μ`, `Y_μ` of real order in scaled form.
//!
//! Only what the spherical functions of non-integer order need: orders
//! `μ ≥ 1/2` (plus the auxiliary `1 − μ₀ ∈ (0, 1)`), arguments in the right
//! half plane with moderate imaginary part.

use core::f64::consts::PI;

use num_complex::Complex64;

use super::kernels::{ln_gamma, miller, miller_top, power_series, recur_up};
use super::scaled::Scaled;

/// Series results losing more than three digits are discarded.
const SERIES_CANCELLATION_LIMIT: f64 = 1e3;

/// Orders this close to an integer take the interpolated second-kind path.
pub(crate) const NEAR_INTEGER: f64 = 1e-6;

fn j_series(mu: f64, z: Complex64) -> (Scaled, f64) {
    let half = z * 0.5;
    let log_prefactor = half.ln() * mu - ln_gamma(mu + 1.0);
    let q = -(half * half);
    power_series(log_prefactor, |k| {
        let k = k as f64;
        q / (k * (mu + k))
    })
}

/// `(J_μ(z), J_{μ+1}(z))` for real `μ ≥ 0`.
pub(crate) fn j_pair(mu: f64, z: Complex64) -> (Scaled, Scaled) {
    if z.norm() < mu + 2.0 {
        let (a, ca) = j_series(mu, z);
        let (b, cb) = j_series(mu + 1.0, z);
        if ca <= SERIES_CANCELLATION_LIMIT && cb <= SERIES_CANCELLATION_LIMIT {
            return (a, b);
        }
    }
    j_pair_miller(mu, z)
}

/// Miller run on the ladder `μ₀ + i`, `μ₀ ∈ [0, 1)`, normalised with
/// `(z/2)^μ₀ = Σ_k (μ₀ + 2k)·Γ(μ₀ + k)/k!·J_{μ₀+2k}(z)`.
fn j_pair_miller(mu: f64, z: Complex64) -> (Scaled, Scaled) {
    let base = mu - libm::floor(mu);
    let target = libm::floor(mu) as usize;
    let top = (libm::ceil(miller_top(mu + 1.0, z) - base) as usize).max(target + 2);
    let inv_z = z.inv();
    let run = miller(
        top,
        target,
        |i| inv_z * (2.0 * (base + i as f64)),
        |i| {
            if i % 2 != 0 {
                return None;
            }
            let k = (i / 2) as f64;
            // k = 0 uses μ₀Γ(μ₀) = Γ(μ₀ + 1), which also covers μ₀ = 0
            let log_c = if i == 0 {
                ln_gamma(base + 1.0)
            } else {
                libm::log(base + 2.0 * k) + ln_gamma(base + k) - ln_gamma(k + 1.0)
            };
            Some(Complex64::new(libm::exp(log_c), 0.0))
        },
    );
    let norm = Scaled::from_log((z * 0.5).ln() * base).div(run.weighted_sum);
    (run.target.mul(norm), run.target_next.mul(norm))
}

/// `(Y_μ(z), Y_{μ+1}(z))` for real `μ ≥ 1/2`.
pub(crate) fn y_pair(mu: f64, z: Complex64) -> (Scaled, Scaled) {
    let m = libm::round(mu);
    if (mu - m).abs() < NEAR_INTEGER {
        let lo = m - NEAR_INTEGER;
        let hi = m + NEAR_INTEGER;
        let (a0, a1) = y_pair_reflected(lo, z);
        let (b0, b1) = y_pair_reflected(hi, z);
        let t = (mu - lo) / (hi - lo);
        return (lerp(a0, b0, t), lerp(a1, b1, t));
    }
    y_pair_reflected(mu, z)
}

fn lerp(a: Scaled, b: Scaled, t: f64) -> Scaled {
    let log = a.log_scale().max(b.log_scale());
    Scaled::from_parts(a.mantissa_at(log) * (1.0 - t) + b.mantissa_at(log) * t, log)
}

/// Reflection `Y_μ₀ = (J_μ₀ cos μ₀π − J_{−μ₀})/sin μ₀π` at the fractional
/// part, then upward recurrence to `μ`.
fn y_pair_reflected(mu: f64, z: Complex64) -> (Scaled, Scaled) {
    let frac = mu - libm::floor(mu);
    let steps = libm::floor(mu) as usize;
    let inv_z = z.inv();

    let (j_f, j_f1) = j_pair(frac, z);
    let (j_g, j_g1) = j_pair(1.0 - frac, z);
    // J_{ν−1} = (2ν/z)J_ν − J_{ν+1}, stepped down to orders −μ₀ and −μ₀ − 1
    let j_neg = j_g.scale(inv_z * (2.0 * (1.0 - frac))).add(j_g1.neg());
    let j_neg1 = j_neg.scale(inv_z * (-2.0 * frac)).add(j_g.neg());

    let (s, c) = libm::sincos(PI * frac);
    let inv_s = Complex64::new(1.0 / s, 0.0);
    let y0 = j_f.scale(Complex64::new(c, 0.0)).add(j_neg.neg()).scale(inv_s);
    let y1 = j_f1.scale(Complex64::new(c, 0.0)).add(j_neg1).scale(inv_s);

    recur_up(y0, y1, steps, |k| inv_z * (2.0 * (frac + k as f64)))
}
