//! Recurrence and series drivers shared by the cylindrical and spherical paths.

use num_complex::Complex64;

use super::scaled::Scaled;

const GROW: f64 = 1e150;
const TERM_TOL: f64 = 1e-17;
const MAX_SERIES_TERMS: usize = 20_000;

pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// Sums `exp(log_prefactor) · Σ t_k` with `t_0 = 1`, `t_k = t_{k−1}·ratio(k)`.
///
/// Returns the scaled sum and the cancellation ratio `max|t_k| / |Σ t_k|`;
/// callers reject the result when that ratio says too many digits were lost.
pub(crate) fn power_series(
    log_prefactor: Complex64,
    ratio: impl Fn(usize) -> Complex64,
) -> (Scaled, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_term = 1.0_f64;
    for k in 1..MAX_SERIES_TERMS {
        term *= ratio(k);
        sum += term;
        let t = term.norm();
        max_term = max_term.max(t);
        if !(max_term < 1e250) {
            return (Scaled::ZERO, f64::INFINITY);
        }
        let s = sum.norm();
        if t <= TERM_TOL * s && ratio(k + 1).norm() < 1.0 {
            break;
        }
    }
    let s = sum.norm();
    let cancellation = if s > 0.0 { max_term / s } else { f64::INFINITY };
    (Scaled::from_log(log_prefactor).scale(sum), cancellation)
}

/// Unnormalised output of a downward (Miller) recurrence.
pub(crate) struct MillerRun {
    pub target: Scaled,
    pub target_next: Scaled,
    pub f0: Scaled,
    pub f1: Scaled,
    pub weighted_sum: Scaled,
}

/// Runs `f_{i−1} = coeff(i)·f_i − f_{i+1}` from `f_{top+1} = 0`, `f_top = 1`
/// down to `f_0`, capturing `f_target`, `f_{target+1}` and `Σ weight(i)·f_i`.
pub(crate) fn miller(
    top: usize,
    target: usize,
    coeff: impl Fn(usize) -> Complex64,
    weight: impl Fn(usize) -> Option<Complex64>,
) -> MillerRun {
    debug_assert!(top > target + 1);
    let mut log = 0.0_f64;
    let mut upper = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    let mut sum = weight(top).map_or(Complex64::new(0.0, 0.0), |w| w * cur);
    let mut cap_target = Scaled::ZERO;
    let mut cap_next = Scaled::ZERO;
    let mut f1 = Scaled::ZERO;
    for i in (1..=top).rev() {
        if i == target + 1 {
            cap_next = Scaled::from_parts(cur, log);
        }
        if i == 1 {
            f1 = Scaled::from_parts(cur, log);
        }
        let lower = coeff(i) * cur - upper;
        upper = cur;
        cur = lower;
        if let Some(w) = weight(i - 1) {
            sum += w * cur;
        }
        let m = cur.norm();
        if m > GROW {
            upper /= m;
            cur /= m;
            sum /= m;
            log += libm::log(m);
        }
        if i - 1 == target {
            cap_target = Scaled::from_parts(cur, log);
        }
    }
    MillerRun {
        target: cap_target,
        target_next: cap_next,
        f0: Scaled::from_parts(cur, log),
        f1,
        weighted_sum: Scaled::from_parts(sum, log),
    }
}

/// Starting index for a Miller run that must resolve orders up to `order`
/// at argument `z`, relative to a base order.
pub(crate) fn miller_top(order: f64, z: Complex64) -> f64 {
    let a = z.norm();
    order.max(a) + 1.0 + 20.0 + 15.0 * libm::cbrt(a.max(1.0)) + z.im.abs()
}

/// Upward recurrence `f_{k+1} = coeff(k)·f_k − f_{k−1}` for `steps` steps
/// from `(f_0, f_1)`; returns `(f_steps, f_{steps+1})`.
pub(crate) fn recur_up(
    f0: Scaled,
    f1: Scaled,
    steps: usize,
    coeff: impl Fn(usize) -> Complex64,
) -> (Scaled, Scaled) {
    let mut log = f0.log_scale().max(f1.log_scale());
    let mut a = f0.mantissa_at(log);
    let mut b = f1.mantissa_at(log);
    for k in 1..=steps {
        let c = coeff(k) * b - a;
        a = b;
        b = c;
        let m = b.norm();
        if m > GROW {
            a /= m;
            b /= m;
            log += libm::log(m);
        }
    }
    (Scaled::from_parts(a, log), Scaled::from_parts(b, log))
}
