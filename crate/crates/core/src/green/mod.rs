//! Scattering coefficients of the cloak/object system and the
//! coincident-point scattering Green tensor outside it.
//!
//! Outside the outermost interface the radial field functions are
//! `j_n(k₁r) + B·h_n(k₁r)`, so `B` is minus the usual Mie coefficient:
//! `B_M` belongs to TE (magnetic multipole) waves, `B_N` to TM waves.

mod exact;
mod layered;
mod linalg;
mod waves;

use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::materials::{discretize_layers, CloakSpec, LayerStack, ObjectSpec};
use crate::specfun::{spherical_pair_scaled, BesselOrder, Kind, Scaled};

pub use exact::{
    bare_object_coeffs, closed_form_coeffs, exact_scatter_coeffs, graded_shell_coeffs, GradedShell,
};
pub use layered::layered_scatter_coeffs;

/// Boundary systems with a larger (equilibrated) condition number are
/// rejected.
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Polarization {
    Te,
    Tm,
}

pub(crate) fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain("frequency must be positive and finite"));
    }
    Ok(())
}

/// Object sphere, optionally inside a cloak, surrounded by vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub cloak: Option<CloakSpec>,
    pub object: ObjectSpec,
    /// Equal to the cloak's inner radius when a cloak is present.
    pub object_radius: f64,
}

impl SystemSpec {
    pub fn cloaked(cloak: CloakSpec, object: ObjectSpec) -> Self {
        SystemSpec { cloak: Some(cloak), object, object_radius: cloak.inner_radius }
    }

    pub fn bare(object: ObjectSpec, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter { name: "object_radius", reason: "must be finite and > 0" });
        }
        Ok(SystemSpec { cloak: None, object, object_radius: radius })
    }

    /// Radius of the outermost interface.
    pub fn outer_radius(&self) -> f64 {
        self.cloak.map_or(self.object_radius, |c| c.outer_radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoeffs {
    pub n: usize,
    pub b_m: Complex64,
    pub b_n: Complex64,
    /// Condition number of the boundary system (1 for closed forms).
    pub condition: f64,
}

/// How scattering coefficients are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Continuous cloak, boundary-condition solve.
    Exact,
    /// Cloak replaced by this many homogeneous layers.
    Layered(usize),
    /// Object alone, no cloak.
    Bare,
    /// The cloak and object volumes with every material set to free space,
    /// run through the exact solver.
    Vacuum,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => f.write_str("exact"),
            Method::Layered(n) => write!(f, "layered:{n}"),
            Method::Bare => f.write_str("bare"),
            Method::Vacuum => f.write_str("vacuum"),
        }
    }
}

/// Anything that yields per-multipole coefficients for a scatterer of known
/// outer radius.
pub trait ScatteringSource: Sync {
    fn coeffs(&self, n: usize, omega: f64) -> Result<ScatteringCoeffs>;
    fn outer_radius(&self) -> f64;
    fn method(&self) -> Method;
}

/// A [`Method`] bound to a [`SystemSpec`], with any per-method setup
/// (layer discretisation) done once.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientProvider {
    method: Method,
    kind: ProviderKind,
}

#[derive(Debug, Clone, PartialEq)]
enum ProviderKind {
    Shell { shell: GradedShell, object: ObjectSpec },
    Layered { stack: LayerStack, object: ObjectSpec },
    Bare { object: ObjectSpec, radius: f64 },
}

impl CoefficientProvider {
    pub fn new(system: &SystemSpec, method: Method) -> Result<Self> {
        let need_cloak = || {
            system.cloak.ok_or(Error::InvalidParameter {
                name: "cloak",
                reason: "this method needs a cloak",
            })
        };
        let kind = match method {
            Method::Exact => ProviderKind::Shell {
                shell: GradedShell::cloak(&need_cloak()?),
                object: system.object,
            },
            Method::Vacuum => match system.cloak {
                Some(c) => ProviderKind::Shell {
                    shell: GradedShell::vacuum(c.inner_radius, c.outer_radius),
                    object: ObjectSpec::vacuum(),
                },
                None => ProviderKind::Bare { object: ObjectSpec::vacuum(), radius: system.object_radius },
            },
            Method::Layered(count) => ProviderKind::Layered {
                stack: discretize_layers(&need_cloak()?, count)?,
                object: system.object,
            },
            Method::Bare => ProviderKind::Bare { object: system.object, radius: system.object_radius },
        };
        Ok(CoefficientProvider { method, kind })
    }

    pub fn from_stack(stack: LayerStack, object: ObjectSpec) -> Self {
        CoefficientProvider {
            method: Method::Layered(stack.len()),
            kind: ProviderKind::Layered { stack, object },
        }
    }

    pub fn from_shell(shell: GradedShell, object: ObjectSpec) -> Self {
        CoefficientProvider { method: Method::Exact, kind: ProviderKind::Shell { shell, object } }
    }
}

impl ScatteringSource for CoefficientProvider {
    fn coeffs(&self, n: usize, omega: f64) -> Result<ScatteringCoeffs> {
        match &self.kind {
            ProviderKind::Shell { shell, object } => graded_shell_coeffs(n, omega, shell, object),
            ProviderKind::Layered { stack, object } => layered_scatter_coeffs(n, omega, stack, object),
            ProviderKind::Bare { object, radius } => bare_object_coeffs(n, omega, object, *radius),
        }
    }

    fn outer_radius(&self) -> f64 {
        match &self.kind {
            ProviderKind::Shell { shell, .. } => shell.outer_radius,
            ProviderKind::Layered { stack, .. } => stack.outer_radius(),
            ProviderKind::Bare { radius, .. } => *radius,
        }
    }

    fn method(&self) -> Method {
        self.method
    }
}

/// Where to stop the multipole sums.
///
/// Summation runs to at least `max(min_terms, ⌈x + 4.05·x^{1/3} + 2⌉)` with
/// `x = k₁·r_A`, then continues until two successive terms are both below
/// `tail_tol` times the running sum, failing past `hard_cap`. The sums used
/// here are in units of `Γ₀`, so the reference is never taken below 1: a
/// vanishing sum (vacuum) would otherwise never converge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub tail_tol: f64,
    pub min_terms: usize,
    pub hard_cap: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { tail_tol: 1e-12, min_terms: 10, hard_cap: 200 }
    }
}

impl TruncationPolicy {
    pub fn start(&self, x: f64) -> usize {
        let w = libm::ceil(x + 4.05 * libm::cbrt(x) + 2.0);
        (w as usize).max(self.min_terms)
    }

    /// Sums `term(n)` for `n = 1, 2, …` under this policy.
    pub fn sum(
        &self,
        x: f64,
        mut term: impl FnMut(usize) -> Result<Complex64>,
    ) -> Result<Complex64> {
        let start = self.start(x);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut previous = f64::INFINITY;
        for n in 1..=self.hard_cap {
            let t = term(n)?;
            sum += t;
            let tn = t.norm();
            let bound = self.tail_tol * sum.norm().max(1.0);
            if n >= start && tn <= bound && previous <= bound {
                return Ok(sum);
            }
            previous = tn;
        }
        Err(Error::Convergence { n_max: self.hard_cap, last_term: previous })
    }
}

fn check_position(r_a: f64, omega: f64, source: &dyn ScatteringSource) -> Result<()> {
    check_omega(omega)?;
    if !(r_a > source.outer_radius() && r_a.is_finite()) {
        return Err(Error::Domain("atom must lie outside every interface"));
    }
    Ok(())
}

/// `h_n(x)` and `d[x·h_n(x)]/dx / x` as scaled values.
fn hankel_terms(n: usize, x: f64) -> Result<(Scaled, Scaled)> {
    let xc = Complex64::new(x, 0.0);
    let (h, h_next) = spherical_pair_scaled(Kind::Third, BesselOrder::integer(n), xc)?;
    let dh = h.scale(Complex64::new((n as f64 + 1.0) / x, 0.0)).add(h_next.neg());
    Ok((h, dh))
}

fn product(b: Complex64, f: Scaled, g: Scaled) -> Result<Complex64> {
    if b == Complex64::new(0.0, 0.0) {
        return Ok(b);
    }
    Scaled::new(b).mul(f).mul(g).value()
}

/// `G_s,rr(r_A, r_A) = (ik₁/4π)·Σ n(n+1)(2n+1)·B_N·(h_n(x)/x)²`, `x = k₁r_A`.
pub fn green_scatter_radial(
    r_a: f64,
    omega: f64,
    source: &dyn ScatteringSource,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    check_position(r_a, omega, source)?;
    let x = omega * r_a;
    let sum = policy.sum(x, |n| {
        let c = source.coeffs(n, omega)?;
        let (h, _) = hankel_terms(n, x)?;
        let h_over_x = h.scale(Complex64::new(1.0 / x, 0.0));
        let weight = (n * (n + 1) * (2 * n + 1)) as f64;
        Ok(product(c.b_n, h_over_x, h_over_x)? * weight)
    })?;
    Ok(Complex64::new(0.0, omega / (4.0 * PI)) * sum)
}

/// `G_s,θθ(r_A, r_A) = (ik₁/8π)·Σ (2n+1)·[B_M·h_n(x)² + B_N·(Dh_n(x))²]`
/// with `D z = (1/x)·d[x z]/dx`.
pub fn green_scatter_tangential(
    r_a: f64,
    omega: f64,
    source: &dyn ScatteringSource,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    check_position(r_a, omega, source)?;
    let x = omega * r_a;
    let sum = policy.sum(x, |n| {
        let c = source.coeffs(n, omega)?;
        let (h, dh) = hankel_terms(n, x)?;
        let weight = (2 * n + 1) as f64;
        Ok((product(c.b_m, h, h)? + product(c.b_n, dh, dh)?) * weight)
    })?;
    Ok(Complex64::new(0.0, omega / (8.0 * PI)) * sum)
}
