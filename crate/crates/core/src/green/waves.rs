//! Radial wave functions `u = ρ·z(ρ)` and the normalised boundary columns
//! built from them.
//!
//! At an interface the continuous quantities are `u` and `u'/p`, with
//! `p = μ_t` for TE and `p = ε_t` for TM. Since `u' = k·d(ρz)/dρ`, the
//! second row of every column is `(k/p)·d(ρz)/dρ`.

use num_complex::Complex64;

use super::Polarization;
use crate::error::Result;
use crate::materials::MaterialTensors;
use crate::specfun::{spherical_pair_scaled, BesselOrder, Kind, Scaled};

/// `ρ·z_ν(ρ)` and `d[ρ·z_ν(ρ)]/dρ`, unnormalised.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Wavefn {
    pub u: Scaled,
    pub du: Scaled,
}

pub(crate) fn wavefn(kind: Kind, order: BesselOrder, rho: Complex64) -> Result<Wavefn> {
    let (z, z_next) = spherical_pair_scaled(kind, order, rho)?;
    // d[ρz_ν]/dρ = (ν+1)·z_ν − ρ·z_{ν+1}
    let du = z
        .scale(Complex64::new(order.value() + 1.0, 0.0))
        .add(z_next.scale(-rho));
    Ok(Wavefn { u: z.scale(rho), du })
}

/// Wavenumber and admittance factor `k/p` of a medium with isotropic
/// tangential components.
pub(crate) fn wave(t: &MaterialTensors, omega: f64, pol: Polarization) -> (Complex64, Complex64) {
    let k = (t.eps_t * t.mu_t).sqrt() * omega;
    let p = match pol {
        Polarization::Te => t.mu_t,
        Polarization::Tm => t.eps_t,
    };
    (k, k / p)
}

/// `(u, u'/p)` of one basis function at one radius, on a shared scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Column {
    pub value: Complex64,
    pub flux: Complex64,
}

impl Column {
    pub fn cross(self, other: Column) -> Complex64 {
        self.value * other.flux - self.flux * other.value
    }
}

fn largest(items: &[Scaled]) -> Scaled {
    let mut best = items[0];
    for s in &items[1..] {
        if best.is_zero() || (!s.is_zero() && s.ln_abs() > best.ln_abs()) {
            best = *s;
        }
    }
    best
}

/// Evaluates one basis function at several radii and normalises all the
/// resulting columns by the largest entry. Returns the columns and the
/// normalisation.
pub(crate) fn columns<const M: usize>(
    fns: [Wavefn; M],
    admittance: Complex64,
) -> Result<([Column; M], Scaled)> {
    let mut all = [Scaled::ZERO; 8];
    for (i, f) in fns.iter().enumerate() {
        all[2 * i] = f.u;
        all[2 * i + 1] = f.du;
    }
    let norm = largest(&all[..2 * M]);
    let mut out = [Column { value: Complex64::new(0.0, 0.0), flux: Complex64::new(0.0, 0.0) }; M];
    for (c, f) in out.iter_mut().zip(fns.iter()) {
        c.value = f.u.ratio(norm)?;
        c.flux = f.du.ratio(norm)? * admittance;
    }
    Ok((out, norm))
}

/// Free-space side of the outermost interface: normalised `j` (incident)
/// and `h` (scattered) columns.
pub(crate) struct Outside {
    pub j: Column,
    pub h: Column,
    /// `B = B̃ · j_norm / h_norm`.
    j_norm: Scaled,
    h_norm: Scaled,
}

impl Outside {
    pub fn new(n: usize, omega: f64, radius: f64) -> Result<Self> {
        let order = BesselOrder::integer(n);
        let rho = Complex64::new(omega * radius, 0.0);
        let y = Complex64::new(omega, 0.0);
        let ([j], j_norm) = columns([wavefn(Kind::First, order, rho)?], y)?;
        let ([h], h_norm) = columns([wavefn(Kind::Third, order, rho)?], y)?;
        Ok(Outside { j, h, j_norm, h_norm })
    }

    /// `B̃` for an interior presenting the boundary vector `v`: the outside
    /// field `ĵ + B̃·ĥ` must be parallel to `v`.
    pub fn reflect(&self, v: Column) -> Complex64 {
        -self.j.cross(v) / self.h.cross(v)
    }

    pub fn coefficient(&self, b_tilde: Complex64) -> Result<Complex64> {
        if b_tilde == Complex64::new(0.0, 0.0) {
            return Ok(b_tilde);
        }
        Scaled::new(b_tilde).mul(self.j_norm).div(self.h_norm).value()
    }
}
