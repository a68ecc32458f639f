//! Far-field emission pattern of a radial dipole and the time-dependent
//! intensity built on it.
//!
//! In units of `k³d/4π` the field at `(r, θ)` is
//!
//! ```text
//! F = Σ_n (2n+1)/x_A · [j_n(x_A) + B_N·h_n(x_A)]
//!       · [ r̂ · n(n+1)·h_n(x)/x · P_n(cos θ) + θ̂ · Dh_n(x) · dP_n/dθ ]
//! ```
//!
//! with `x_A = k·r_A`, `x = k·r` and `Dz = (1/x)·d[x·z]/dx`. In the strong
//! coupling regime each component is replaced by `(δω_c/Ω)·Im F`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use super::{AtomSpec, CouplingParams, Orientation};
use crate::error::{Error, Result};
use crate::green::{ScatteringSource, TruncationPolicy};
use crate::specfun::{legendre_table, spherical_pair_scaled, BesselOrder, Kind};

pub const DEFAULT_THETA_POINTS: usize = 721;

/// Uniform grid over `[0, π]` with both end points.
pub fn default_theta_grid() -> Vec<f64> {
    let last = (DEFAULT_THETA_POINTS - 1) as f64;
    (0..DEFAULT_THETA_POINTS).map(|i| if i + 1 == DEFAULT_THETA_POINTS { PI } else { PI * i as f64 / last }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    Weak,
    Strong(CouplingParams),
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Weak => f.write_str("weak"),
            Regime::Strong(_) => f.write_str("strong"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmissionPattern {
    pub theta: Vec<f64>,
    /// `|F|²` in units of `(k³d/4π)²`.
    pub values: Vec<f64>,
    pub regime: Regime,
}

impl EmissionPattern {
    pub fn peak(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Per-multipole weights of the `r̂` and `θ̂` components.
fn multipole_weights(
    atom: &AtomSpec,
    omega: f64,
    detector_radius: f64,
    source: &dyn ScatteringSource,
    policy: &TruncationPolicy,
) -> Result<Vec<(Complex64, Complex64)>> {
    let x_a = omega * atom.r_a;
    let x = omega * detector_radius;
    let start = policy.start(x);
    let mut weights = Vec::new();
    let mut bound_sum = 0.0_f64;
    let mut previous = f64::INFINITY;
    for n in 1..=policy.hard_cap {
        let nf = n as f64;
        let order = BesselOrder::integer(n);
        let b = source.coeffs(n, omega)?.b_n;
        let (j_a, _) = spherical_pair_scaled(Kind::First, order, Complex64::new(x_a, 0.0))?;
        let (h_a, _) = spherical_pair_scaled(Kind::Third, order, Complex64::new(x_a, 0.0))?;
        let (h, h_next) = spherical_pair_scaled(Kind::Third, order, Complex64::new(x, 0.0))?;
        let dh = h.scale(Complex64::new((nf + 1.0) / x, 0.0)).add(h_next.neg());

        let mut source_factor = j_a;
        if b != Complex64::new(0.0, 0.0) {
            source_factor = source_factor.add(h_a.scale(b));
        }
        let source_factor = source_factor.scale(Complex64::new((2.0 * nf + 1.0) / x_a, 0.0));
        let radial = source_factor.mul(h).scale(Complex64::new(nf * (nf + 1.0) / x, 0.0)).value()?;
        let polar = source_factor.mul(dh).value()?;
        weights.push((radial, polar));

        // |P_n| ≤ 1 and |dP_n/dθ| ≤ √(n(n+1)) bound each term's contribution
        let bound = radial.norm() + libm::sqrt(nf * (nf + 1.0)) * polar.norm();
        bound_sum += bound;
        let limit = policy.tail_tol * bound_sum;
        if n >= start && bound <= limit && previous <= limit {
            return Ok(weights);
        }
        previous = bound;
    }
    Err(Error::Convergence { n_max: policy.hard_cap, last_term: previous })
}

/// Normalised pattern `|F|²` of a radial dipole at `atom.r_a`, observed on a
/// sphere of radius `detector_radius > r_A`.
pub fn far_field_pattern(
    theta: &[f64],
    atom: &AtomSpec,
    omega: f64,
    detector_radius: f64,
    source: &dyn ScatteringSource,
    regime: Regime,
    policy: &TruncationPolicy,
) -> Result<EmissionPattern> {
    if atom.orientation != Orientation::Radial {
        return Err(Error::InvalidParameter { name: "orientation", reason: "patterns are defined for a radial dipole" });
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain("frequency must be positive and finite"));
    }
    if !(atom.r_a > source.outer_radius()) {
        return Err(Error::Domain("atom must lie outside every interface"));
    }
    if !(detector_radius > atom.r_a && detector_radius.is_finite()) {
        return Err(Error::InvalidParameter { name: "detector_radius", reason: "must exceed r_A" });
    }
    if let Regime::Strong(c) = regime {
        if !(c.rabi > 0.0) {
            return Err(Error::InvalidParameter { name: "rabi", reason: "strong-coupling pattern needs a nonzero Rabi frequency" });
        }
    }
    if theta.iter().any(|t| !(0.0..=PI).contains(t)) {
        return Err(Error::Domain("theta must lie in [0, pi]"));
    }
    let weights =
        multipole_weights(atom, omega, detector_radius, source, policy).map_err(|e| e.at_point(omega, atom.r_a))?;
    let n_max = weights.len();

    let mut values = Vec::with_capacity(theta.len());
    for &t in theta {
        let table = legendre_table(n_max, t)?;
        let mut f_r = Complex64::new(0.0, 0.0);
        let mut f_t = Complex64::new(0.0, 0.0);
        for (n, (radial, polar)) in weights.iter().enumerate() {
            let (p, dp) = table[n + 1];
            f_r += radial * p;
            f_t += polar * dp;
        }
        values.push(match regime {
            Regime::Weak => f_r.norm_sqr() + f_t.norm_sqr(),
            Regime::Strong(c) => {
                let s = c.delta_omega_c / c.rabi;
                s * s * (f_r.im * f_r.im + f_t.im * f_t.im)
            }
        });
    }
    Ok(EmissionPattern { theta: theta.to_vec(), values, regime })
}

/// Intensity at time `t` from a pattern value `|F|²`: `|F_w|²·e^{−Γt}` in
/// the weak regime (`gamma` is the absolute decay rate), and
/// `|F_s|²·e^{−2δω_c t}·sin²(Ωt/2)` in the strong regime.
pub fn intensity(pattern_value: f64, t: f64, gamma: f64, regime: &Regime) -> f64 {
    match regime {
        Regime::Weak => pattern_value * libm::exp(-gamma * t),
        Regime::Strong(c) => {
            let s = libm::sin(0.5 * c.rabi * t);
            pattern_value * libm::exp(-2.0 * c.delta_omega_c * t) * s * s
        }
    }
}
