//! Upper-state probability amplitude `C_u(t)`.
//!
//! With a Lorentzian environment (centre `ω_c`, half width `δω_c`) the
//! memory kernel is `K(τ) = −½·Γ·δω_c·e^{−i(ω_c−ω_A)τ}·e^{−δω_c τ}`, which
//! turns `Ċ = ∫₀ᵗ K(t−t')·C(t') dt'` into the damped oscillator
//! `C̈ + (iΔ + δω_c)·Ċ + (Ω/2)²·C = 0` with `Δ = ω_c − ω_A` and
//! `Ω = √(2Γ·δω_c)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `C_u(t) = exp[(−Γ/2 + iδω)·t]`.
pub fn amplitude_weak(t: f64, gamma: f64, delta_omega: f64) -> Complex64 {
    Complex64::new(-0.5 * gamma * t, delta_omega * t).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub omega_c: f64,
    pub delta_omega_c: f64,
    pub gamma: f64,
    /// `Ω = √(2Γ·δω_c)`.
    pub rabi: f64,
}

impl CouplingParams {
    pub fn new(omega_c: f64, delta_omega_c: f64, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter { name: "gamma", reason: "must be finite and >= 0" });
        }
        Self::check(omega_c, delta_omega_c)?;
        Ok(CouplingParams { omega_c, delta_omega_c, gamma, rabi: libm::sqrt(2.0 * gamma * delta_omega_c) })
    }

    pub fn from_rabi(omega_c: f64, delta_omega_c: f64, rabi: f64) -> Result<Self> {
        if !(rabi >= 0.0 && rabi.is_finite()) {
            return Err(Error::InvalidParameter { name: "rabi", reason: "must be finite and >= 0" });
        }
        Self::check(omega_c, delta_omega_c)?;
        Ok(CouplingParams { omega_c, delta_omega_c, gamma: rabi * rabi / (2.0 * delta_omega_c), rabi })
    }

    fn check(omega_c: f64, delta_omega_c: f64) -> Result<()> {
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::InvalidParameter { name: "omega_c", reason: "must be finite and > 0" });
        }
        if !(delta_omega_c > 0.0 && delta_omega_c.is_finite()) {
            return Err(Error::InvalidParameter { name: "delta_omega_c", reason: "must be finite and > 0" });
        }
        Ok(())
    }
}

/// Solution of the damped oscillator with `C(0) = 1`, `Ċ(0) = 0`.
///
/// With `m = −(iΔ + δω_c)/2` and `q = √(m² − Ω²/4)` this is
/// `e^{mt}·[cosh(qt) − m·sinh(qt)/q]`. On resonance it is the two-exponential
/// form with roots `(−δω_c ± √(δω_c² − Ω²))/2`; the same expression also
/// covers detuning. Near critical damping (`|qt|` small) a Taylor series
/// replaces the exponentials.
pub fn amplitude_strong(t: f64, params: &CouplingParams, omega_a: f64) -> Complex64 {
    let detuning = params.omega_c - omega_a;
    let m = Complex64::new(-0.5 * params.delta_omega_c, -0.5 * detuning);
    let q = (m * m - 0.25 * params.rabi * params.rabi).sqrt();
    let qt = q * t;
    if qt.norm() < 0.5 {
        // cosh(qt) and sinh(qt)/q as even series in (qt)²
        let w = qt * qt;
        let mut cosh = Complex64::new(1.0, 0.0);
        let mut sinc = Complex64::new(1.0, 0.0);
        let mut c_term = cosh;
        let mut s_term = sinc;
        for k in 1..12 {
            let k = k as f64;
            c_term = c_term * w / ((2.0 * k - 1.0) * (2.0 * k));
            s_term = s_term * w / ((2.0 * k) * (2.0 * k + 1.0));
            cosh += c_term;
            sinc += s_term;
        }
        return (m * t).exp() * (cosh - m * t * sinc);
    }
    let r = m / q;
    0.5 * (1.0 - r) * ((m + q) * t).exp() + 0.5 * (1.0 + r) * ((m - q) * t).exp()
}
