//! Closed-form field of a point dipole in free space.

use num_complex::Complex64 as C;

/// `(r̂, θ̂)` components of `4π·G₀(r, r_A)·ẑ` with the dipole on the z axis
/// at height `r_a`, observer at `(r, θ)`, wavenumber `k`.
/// `G₀ = e^{ikR}/(4πR)·[(1 + i/kR − 1/(kR)²)·I + (−1 − 3i/kR + 3/(kR)²)·R̂R̂]`.
pub fn field(k: f64, r_a: f64, r: f64, theta: f64) -> (C, C) {
    let (s, c) = theta.sin_cos();
    let d = [r * s, 0.0, r * c - r_a];
    let big_r = (d[0] * d[0] + d[2] * d[2]).sqrt();
    let u = [d[0] / big_r, 0.0, d[2] / big_r];
    let kr = k * big_r;
    let phase = C::new(0.0, kr).exp() / big_r;
    let a = C::new(1.0 - 1.0 / (kr * kr), 1.0 / kr);
    let b = C::new(-1.0 + 3.0 / (kr * kr), -3.0 / kr);
    // G·ẑ up to the 1/4π, which cancels against the 4π
    let e = [phase * b * u[0] * u[2], C::new(0.0, 0.0), phase * (a + b * u[2] * u[2])];
    let r_hat = [s, 0.0, c];
    let t_hat = [c, 0.0, -s];
    (e[0] * r_hat[0] + e[2] * r_hat[2], e[0] * t_hat[0] + e[2] * t_hat[2])
}
