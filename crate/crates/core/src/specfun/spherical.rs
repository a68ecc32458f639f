//! Spherical Bessel functions as scaled consecutive-order pairs.

use core::f64::consts::PI;

use num_complex::Complex64;

use super::cylinder;
use super::kernels::{ln_gamma, miller, miller_top, power_series, recur_up};
use super::scaled::Scaled;
use super::Kind;

const SERIES_CANCELLATION_LIMIT: f64 = 1e3;
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(z_ν(x), z_{ν+1}(x))`; `x ≠ 0` unless `kind` is first.
pub(crate) fn pair(kind: Kind, nu: f64, x: Complex64, integer: Option<usize>) -> (Scaled, Scaled) {
    match integer {
        Some(n) => match kind {
            Kind::First => int_j_pair(n, x),
            Kind::Second => int_y_pair(n, x),
            Kind::Third => int_h_pair(n, x),
        },
        None => {
            let mu = nu + 0.5;
            let pre = (Complex64::new(PI / 2.0, 0.0) / x).sqrt();
            let (a, b) = match kind {
                Kind::First => cylinder::j_pair(mu, x),
                Kind::Second => cylinder::y_pair(mu, x),
                Kind::Third => {
                    let (j0, j1) = cylinder::j_pair(mu, x);
                    let (y0, y1) = cylinder::y_pair(mu, x);
                    (j0.add(y0.scale(I)), j1.add(y1.scale(I)))
                }
            };
            (a.scale(pre), b.scale(pre))
        }
    }
}

fn int_j_series(n: usize, x: Complex64) -> (Scaled, f64) {
    let nf = n as f64;
    // ln (2n+1)!! = ln Γ(2n+2) − n ln 2 − ln Γ(n+1)
    let log_double_fact =
        ln_gamma(2.0 * nf + 2.0) - nf * core::f64::consts::LN_2 - ln_gamma(nf + 1.0);
    let log_prefactor = x.ln() * nf - log_double_fact;
    let q = -(x * x) * 0.5;
    power_series(log_prefactor, |k| {
        let k = k as f64;
        q / (k * (2.0 * nf + 2.0 * k + 1.0))
    })
}

fn int_j_pair(n: usize, x: Complex64) -> (Scaled, Scaled) {
    if x.re == 0.0 && x.im == 0.0 {
        let one = Scaled::new(Complex64::new(1.0, 0.0));
        return if n == 0 { (one, Scaled::ZERO) } else { (Scaled::ZERO, Scaled::ZERO) };
    }
    if x.norm() < n as f64 + 2.0 {
        let (a, ca) = int_j_series(n, x);
        let (b, cb) = int_j_series(n + 1, x);
        if ca <= SERIES_CANCELLATION_LIMIT && cb <= SERIES_CANCELLATION_LIMIT {
            return (a, b);
        }
    }
    let top = (libm::ceil(miller_top(n as f64 + 1.0, x)) as usize).max(n + 2);
    let inv_x = x.inv();
    let run = miller(top, n, |i| inv_x * (2 * i + 1) as f64, |_| None);
    let (s, c) = (x.sin(), x.cos());
    let j0 = s * inv_x;
    let j1 = (s * inv_x - c) * inv_x;
    let norm = if j0.norm() >= j1.norm() {
        Scaled::new(j0).div(run.f0)
    } else {
        Scaled::new(j1).div(run.f1)
    };
    (run.target.mul(norm), run.target_next.mul(norm))
}

fn int_y_pair(n: usize, x: Complex64) -> (Scaled, Scaled) {
    let inv_x = x.inv();
    let (s, c) = (x.sin(), x.cos());
    let y0 = -c * inv_x;
    let y1 = (-c * inv_x - s) * inv_x;
    recur_up(Scaled::new(y0), Scaled::new(y1), n, |k| inv_x * (2 * k + 1) as f64)
}

fn int_h_pair(n: usize, x: Complex64) -> (Scaled, Scaled) {
    let inv_x = x.inv();
    let e = Scaled::from_log(I * x);
    let h0 = e.scale(-I * inv_x);
    let h1 = e.scale(-(x + I) * inv_x * inv_x);
    recur_up(h0, h1, n, |k| inv_x * (2 * k + 1) as f64)
}
