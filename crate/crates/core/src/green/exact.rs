//! Boundary-condition solves for the continuously graded shell and for the
//! bare sphere.

use num_complex::Complex64;

use super::linalg;
use super::waves::{columns, wave, wavefn, Column, Outside};
use super::{check_omega, Polarization, ScatteringCoeffs, SystemSpec, CONDITION_LIMIT};
use crate::error::{Error, Result};
use crate::materials::{object_params, CloakSpec, LorentzModel, MaterialTensors, ObjectSpec};
use crate::specfun::{BesselOrder, Kind};

const POLARIZATIONS: [Polarization; 2] = [Polarization::Te, Polarization::Tm];

/// Shell `R1 < r < R2` with `ε_t = μ_t = c·κ_L` and
/// `ε_r = μ_r = ε_t·((r−s)/r)²`.
///
/// Its TE and TM radial equations are solved by `z_n(k_t(r−s))` with
/// `k_t = ω·c·κ_L`. The transformation-optics cloak is `s = R1`,
/// `c = R2/(R2−R1)`; free space is `s = 0`, `c = 1`, `κ_L ≡ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradedShell {
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub shift: f64,
    pub scale: f64,
    pub dispersion: LorentzModel,
}

impl GradedShell {
    pub fn cloak(cloak: &CloakSpec) -> Self {
        GradedShell {
            inner_radius: cloak.inner_radius,
            outer_radius: cloak.outer_radius,
            shift: cloak.inner_radius,
            scale: cloak.tangential_scale(),
            dispersion: cloak.dispersion,
        }
    }

    /// The cloak's volume with every parameter overridden to free space.
    pub fn vacuum(inner_radius: f64, outer_radius: f64) -> Self {
        GradedShell {
            inner_radius,
            outer_radius,
            shift: 0.0,
            scale: 1.0,
            dispersion: LorentzModel::vacuum(),
        }
    }

    pub fn new(
        inner_radius: f64,
        outer_radius: f64,
        shift: f64,
        scale: f64,
        dispersion: LorentzModel,
    ) -> Result<Self> {
        if !(inner_radius > 0.0 && outer_radius > inner_radius && outer_radius.is_finite()) {
            return Err(Error::InvalidParameter { name: "radii", reason: "need 0 < R1 < R2" });
        }
        if !(shift >= 0.0 && shift <= inner_radius) {
            return Err(Error::InvalidParameter { name: "shift", reason: "need 0 <= s <= R1" });
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter { name: "scale", reason: "must be finite and > 0" });
        }
        Ok(GradedShell { inner_radius, outer_radius, shift, scale, dispersion })
    }

    /// `s = R1`: the radial components vanish at the inner surface.
    pub fn is_ideal(&self) -> bool {
        self.shift == self.inner_radius
    }

    fn wave(&self, omega: f64, pol: Polarization) -> Result<(Complex64, Complex64)> {
        let t = self.dispersion.factor(omega)? * self.scale;
        Ok(wave(&MaterialTensors::isotropic(t, t), omega, pol))
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", reason: "multipole order starts at 1" });
    }
    Ok(())
}

pub(crate) fn finish(
    n: usize,
    omega: f64,
    [b_m, b_n]: [Complex64; 2],
    condition: f64,
) -> Result<ScatteringCoeffs> {
    if !(condition <= CONDITION_LIMIT) {
        return Err(Error::Conditioning { n, omega, condition });
    }
    if !b_m.is_finite() || !b_n.is_finite() {
        return Err(Error::Range("non-finite scattering coefficient"));
    }
    Ok(ScatteringCoeffs { n, b_m, b_n, condition })
}

/// `(u, u'/p)` of the regular solution inside a homogeneous sphere.
pub(crate) fn object_column(
    n: usize,
    omega: f64,
    object: &ObjectSpec,
    radius: f64,
    pol: Polarization,
) -> Result<Column> {
    let eps = object_params(omega, object)?;
    let (k, y) = wave(&MaterialTensors::isotropic(eps, eps), omega, pol);
    let f = wavefn(Kind::First, BesselOrder::integer(n), k * radius)?;
    Ok(columns([f], y)?.0[0])
}

/// Region 1 against a single interior column, as a 2×2 system in `(B̃, t)`.
fn two_by_two(out: &Outside, inner: Column) -> (Complex64, f64) {
    let a = [[-out.h.value, inner.value], [-out.h.flux, inner.flux]];
    let (x, cond) = linalg::solve(a, [out.j.value, out.j.flux]);
    (x[0], cond)
}

/// Homogeneous sphere `ε = μ = α·κ_L` of the given radius in vacuum.
pub fn bare_object_coeffs(
    n: usize,
    omega: f64,
    object: &ObjectSpec,
    radius: f64,
) -> Result<ScatteringCoeffs> {
    check_omega(omega)?;
    check_n(n)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter { name: "radius", reason: "must be finite and > 0" });
    }
    let out = Outside::new(n, omega, radius)?;
    let mut pair = [Complex64::new(0.0, 0.0); 2];
    let mut condition = 1.0_f64;
    for (slot, pol) in pair.iter_mut().zip(POLARIZATIONS) {
        let (b, cond) = two_by_two(&out, object_column(n, omega, object, radius, pol)?);
        condition = condition.max(cond);
        *slot = out.coefficient(b)?;
    }
    finish(n, omega, pair, condition)
}

/// Exact coefficients of the cloaked system.
pub fn exact_scatter_coeffs(n: usize, omega: f64, system: &SystemSpec) -> Result<ScatteringCoeffs> {
    let cloak = system.cloak.as_ref().ok_or(Error::InvalidParameter {
        name: "cloak",
        reason: "the exact method needs a cloak",
    })?;
    graded_shell_coeffs(n, omega, &GradedShell::cloak(cloak), &system.object)
}

/// Shell basis columns at `[R2, R1]`, each function normalised by its
/// largest entry.
struct ShellColumns {
    j: [Column; 2],
    h: [Column; 2],
}

fn shell_columns(n: usize, omega: f64, shell: &GradedShell, pol: Polarization) -> Result<ShellColumns> {
    let order = BesselOrder::integer(n);
    let (kt, yt) = shell.wave(omega, pol)?;
    let rho2 = kt * (shell.outer_radius - shell.shift);
    let rho1 = kt * (shell.inner_radius - shell.shift);
    let (j, _) = columns([wavefn(Kind::First, order, rho2)?, wavefn(Kind::First, order, rho1)?], yt)?;
    let (h, _) = columns([wavefn(Kind::Third, order, rho2)?, wavefn(Kind::Third, order, rho1)?], yt)?;
    Ok(ShellColumns { j, h })
}

/// Only the regular shell solution survives when `s = R1`.
fn ideal_shell_column(n: usize, omega: f64, shell: &GradedShell, pol: Polarization) -> Result<Column> {
    let (kt, yt) = shell.wave(omega, pol)?;
    let rho = kt * (shell.outer_radius - shell.shift);
    Ok(columns([wavefn(Kind::First, BesselOrder::integer(n), rho)?], yt)?.0[0])
}

/// Boundary-condition solve for a graded shell around a sphere.
///
/// For `s < R1` this is the 4×4 system in (region-1 coefficient, shell `j`
/// amplitude, shell `h` amplitude, object amplitude). For `s = R1` the shell
/// argument vanishes on the inner surface: only `j_n` stays finite there,
/// `ρ·j_n(ρ)` and its derivative vanish, the object decouples, and the
/// system shrinks to 2×2 at `R2`.
pub fn graded_shell_coeffs(
    n: usize,
    omega: f64,
    shell: &GradedShell,
    object: &ObjectSpec,
) -> Result<ScatteringCoeffs> {
    check_omega(omega)?;
    check_n(n)?;
    let out = Outside::new(n, omega, shell.outer_radius)?;
    let mut pair = [Complex64::new(0.0, 0.0); 2];
    let mut condition = 1.0_f64;
    for (slot, pol) in pair.iter_mut().zip(POLARIZATIONS) {
        let (b, cond) = if shell.is_ideal() {
            two_by_two(&out, ideal_shell_column(n, omega, shell, pol)?)
        } else {
            four_by_four(n, omega, shell, object, &out, pol)?
        };
        condition = condition.max(cond);
        *slot = out.coefficient(b)?;
    }
    finish(n, omega, pair, condition)
}

fn four_by_four(
    n: usize,
    omega: f64,
    shell: &GradedShell,
    object: &ObjectSpec,
    out: &Outside,
    pol: Polarization,
) -> Result<(Complex64, f64)> {
    let s = shell_columns(n, omega, shell, pol)?;
    let o = object_column(n, omega, object, shell.inner_radius, pol)?;
    let zero = Complex64::new(0.0, 0.0);
    let [j2, j1] = s.j;
    let [h2, h1] = s.h;
    let a = [
        [-out.h.value, j2.value, h2.value, zero],
        [-out.h.flux, j2.flux, h2.flux, zero],
        [zero, j1.value, h1.value, -o.value],
        [zero, j1.flux, h1.flux, -o.flux],
    ];
    let b = [out.j.value, out.j.flux, zero, zero];
    let (x, cond) = linalg::solve(a, b);
    Ok((x[0], cond))
}

/// Nested local-reflection form of the same coefficients, by Cramer's rule:
/// the object's boundary vector is expanded in the shell basis at `R1`,
/// carried to `R2`, and reflected into region 1. Cross-checks the solve.
pub fn closed_form_coeffs(
    n: usize,
    omega: f64,
    shell: &GradedShell,
    object: &ObjectSpec,
) -> Result<ScatteringCoeffs> {
    check_omega(omega)?;
    check_n(n)?;
    let out = Outside::new(n, omega, shell.outer_radius)?;
    let mut pair = [Complex64::new(0.0, 0.0); 2];
    for (slot, pol) in pair.iter_mut().zip(POLARIZATIONS) {
        let v2 = if shell.is_ideal() {
            ideal_shell_column(n, omega, shell, pol)?
        } else {
            let s = shell_columns(n, omega, shell, pol)?;
            let v = object_column(n, omega, object, shell.inner_radius, pol)?;
            let [j2, j1] = s.j;
            let [h2, h1] = s.h;
            let det = j1.cross(h1);
            let a = v.cross(h1) / det;
            let b = j1.cross(v) / det;
            Column { value: a * j2.value + b * h2.value, flux: a * j2.flux + b * h2.flux }
        };
        *slot = out.coefficient(out.reflect(v2))?;
    }
    finish(n, omega, pair, 1.0)
}
