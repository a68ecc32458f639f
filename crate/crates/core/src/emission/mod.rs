//! Normalised decay rates, upper-state amplitudes and far-field patterns.
//!
//! Decay rates follow from the imaginary part of the scattering Green tensor
//! at the atom's position:
//!
//! - radial dipole: `Γ⊥/Γ₀ = 1 + (6π/ω)·Im G_s,rr`
//! - tangential dipole: `Γ∥/Γ₀ = 1 + (6π/ω)·Im G_s,θθ`
//!
//! The free-space part of the tensor contributes the `1`. The Lamb shift is
//! not evaluated, so rates are taken at the bare transition frequency.

mod dynamics;
mod pattern;

use core::f64::consts::PI;
use core::fmt;

use crate::error::{Error, Result};
use crate::green::{green_scatter_radial, green_scatter_tangential, Method, ScatteringSource, TruncationPolicy};

pub use dynamics::{amplitude_strong, amplitude_weak, CouplingParams};
pub use pattern::{default_theta_grid, far_field_pattern, intensity, EmissionPattern, Regime, DEFAULT_THETA_POINTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Radial,
    Tangential,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Radial => f.write_str("radial"),
            Orientation::Tangential => f.write_str("tangential"),
        }
    }
}

/// A two-level atom outside the scatterer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpec {
    pub r_a: f64,
    pub orientation: Orientation,
    pub omega_a: f64,
    /// Only enters absolute rates; normalised results do not depend on it.
    pub dipole: f64,
}

impl AtomSpec {
    pub fn new(r_a: f64, orientation: Orientation, omega_a: f64, dipole: f64) -> Result<Self> {
        if !(r_a > 0.0 && r_a.is_finite()) {
            return Err(Error::InvalidParameter { name: "r_a", reason: "must be finite and > 0" });
        }
        if !(omega_a > 0.0 && omega_a.is_finite()) {
            return Err(Error::InvalidParameter { name: "omega_a", reason: "must be finite and > 0" });
        }
        if !(dipole > 0.0 && dipole.is_finite()) {
            return Err(Error::InvalidParameter { name: "dipole", reason: "must be finite and > 0" });
        }
        Ok(AtomSpec { r_a, orientation, omega_a, dipole })
    }
}

/// `Γ₀ = ω³d²/(3π)` in units with `ħ = ε₀ = c = 1`.
pub fn free_space_rate(omega_a: f64, dipole: f64) -> f64 {
    omega_a * omega_a * omega_a * dipole * dipole / (3.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayResult {
    /// `Γ/Γ₀`.
    pub gamma_norm: f64,
    pub orientation: Orientation,
    pub method: Method,
    pub omega: f64,
    pub r_a: f64,
}

/// Normalised decay rate of `atom` at frequency `omega`. Failures carry the
/// `(ω, r_A)` point.
pub fn decay_rate(
    atom: &AtomSpec,
    omega: f64,
    source: &dyn ScatteringSource,
    policy: &TruncationPolicy,
) -> Result<DecayResult> {
    let g = match atom.orientation {
        Orientation::Radial => green_scatter_radial(atom.r_a, omega, source, policy),
        Orientation::Tangential => green_scatter_tangential(atom.r_a, omega, source, policy),
    }
    .map_err(|e| e.at_point(omega, atom.r_a))?;
    Ok(DecayResult {
        gamma_norm: 1.0 + 6.0 * PI / omega * g.im,
        orientation: atom.orientation,
        method: source.method(),
        omega,
        r_a: atom.r_a,
    })
}
