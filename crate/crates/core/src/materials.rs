//! Lorentz dispersion, cloak and object material parameters, and the
//! piecewise-constant layer discretisation of the cloak.
//!
//! Radii follow the usual transformation-optics convention: `R1` is the
//! inner (hidden-region) radius and `R2` the outer one, with
//!
//! ```text
//! ε_t = μ_t = R2/(R2−R1)·κ_L(ω)
//! ε_r = μ_r = ε_t·((r−R1)/r)²
//! ```

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Single-resonance Lorentz model `κ_L(ω) = 1 + ω_p²/(ω₀² − ω² − iγω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzModel {
    pub omega_p: f64,
    pub omega_0: f64,
    pub gamma: f64,
}

impl LorentzModel {
    /// Resonance at the frequency unit `ω₀ = 1`.
    pub fn new(omega_p: f64, gamma: f64) -> Result<Self> {
        Self::with_resonance(omega_p, 1.0, gamma)
    }

    pub fn with_resonance(omega_p: f64, omega_0: f64, gamma: f64) -> Result<Self> {
        if !(omega_p >= 0.0 && omega_p.is_finite()) {
            return Err(Error::InvalidParameter { name: "omega_p", reason: "must be finite and >= 0" });
        }
        if !(omega_0 > 0.0 && omega_0.is_finite()) {
            return Err(Error::InvalidParameter { name: "omega_0", reason: "must be finite and > 0" });
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter { name: "gamma", reason: "must be finite and > 0" });
        }
        Ok(LorentzModel { omega_p, omega_0, gamma })
    }

    /// `ω_p = 0`: the factor is exactly one at every frequency.
    pub fn vacuum() -> Self {
        LorentzModel { omega_p: 0.0, omega_0: 1.0, gamma: 1.0 }
    }

    pub fn factor(&self, omega: f64) -> Result<Complex64> {
        lorentz_factor(omega, self)
    }
}

pub fn lorentz_factor(omega: f64, model: &LorentzModel) -> Result<Complex64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain("frequency must be positive and finite"));
    }
    let denom = Complex64::new(
        model.omega_0 * model.omega_0 - omega * omega,
        -model.gamma * omega,
    );
    Ok(Complex64::new(1.0, 0.0) + model.omega_p * model.omega_p / denom)
}

/// Spherical shell cloak between `inner_radius` (R1) and `outer_radius` (R2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloakSpec {
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub dispersion: LorentzModel,
}

impl CloakSpec {
    pub fn new(inner_radius: f64, outer_radius: f64, dispersion: LorentzModel) -> Result<Self> {
        if !(inner_radius > 0.0 && inner_radius.is_finite()) {
            return Err(Error::InvalidParameter { name: "inner_radius", reason: "must be finite and > 0" });
        }
        if !(outer_radius > inner_radius && outer_radius.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "outer_radius",
                reason: "must be finite and exceed inner_radius",
            });
        }
        Ok(CloakSpec { inner_radius, outer_radius, dispersion })
    }

    /// `R2/(R2−R1)`, the tangential factor multiplying `κ_L`.
    pub fn tangential_scale(&self) -> f64 {
        self.outer_radius / (self.outer_radius - self.inner_radius)
    }

    /// Radial factor `R2/(R2−R1)·((r−R1)/r)²`, without `κ_L`.
    pub fn radial_scale(&self, r: f64) -> f64 {
        let s = (r - self.inner_radius) / r;
        self.tangential_scale() * s * s
    }

    /// `β = ε_t/ε_r = (r/(r−R1))²`; infinite at `r = R1`.
    pub fn anisotropy(&self, r: f64) -> f64 {
        let s = r / (r - self.inner_radius);
        s * s
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r >= self.inner_radius && r <= self.outer_radius) {
            return Err(Error::Domain("radius outside the cloak shell"));
        }
        Ok(())
    }
}

/// Hidden sphere with `ε_c = μ_c = α·κ_L(ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectSpec {
    pub alpha: f64,
    pub dispersion: LorentzModel,
}

impl ObjectSpec {
    pub fn new(alpha: f64, dispersion: LorentzModel) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter { name: "alpha", reason: "must be finite and > 0" });
        }
        Ok(ObjectSpec { alpha, dispersion })
    }

    pub fn vacuum() -> Self {
        ObjectSpec { alpha: 1.0, dispersion: LorentzModel::vacuum() }
    }
}

/// Relative permittivity and permeability components of a uniaxial
/// (radial/tangential) medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialTensors {
    pub eps_r: Complex64,
    pub eps_t: Complex64,
    pub mu_r: Complex64,
    pub mu_t: Complex64,
}

impl MaterialTensors {
    pub fn isotropic(eps: Complex64, mu: Complex64) -> Self {
        MaterialTensors { eps_r: eps, eps_t: eps, mu_r: mu, mu_t: mu }
    }

    pub fn vacuum() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::isotropic(one, one)
    }

    /// `ε_t/ε_r`, the anisotropy seen by TM waves.
    pub fn anisotropy(&self) -> Complex64 {
        self.eps_t / self.eps_r
    }

    fn scaled(self, k: Complex64) -> Self {
        MaterialTensors {
            eps_r: self.eps_r * k,
            eps_t: self.eps_t * k,
            mu_r: self.mu_r * k,
            mu_t: self.mu_t * k,
        }
    }
}

pub fn cloak_tensors(r: f64, omega: f64, cloak: &CloakSpec) -> Result<MaterialTensors> {
    cloak.check_radius(r)?;
    let k = cloak.dispersion.factor(omega)?;
    let t = k * cloak.tangential_scale();
    let rad = k * cloak.radial_scale(r);
    Ok(MaterialTensors { eps_r: rad, eps_t: t, mu_r: rad, mu_t: t })
}

/// `ε_c = μ_c = α·κ_L(ω)`.
pub fn object_params(omega: f64, object: &ObjectSpec) -> Result<Complex64> {
    Ok(object.dispersion.factor(omega)? * object.alpha)
}

/// One homogeneous layer. Material entries are static factors; the stack's
/// dispersion multiplies all four.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub r_inner: f64,
    pub r_outer: f64,
    pub factors: MaterialTensors,
}

/// Concentric homogeneous layers filling `[r_0, r_N]`, innermost first.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    layers: Vec<Layer>,
    dispersion: LorentzModel,
}

impl LayerStack {
    /// Validates that the layers are contiguous, ordered and non-degenerate.
    pub fn from_layers(layers: Vec<Layer>, dispersion: LorentzModel) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidParameter { name: "layers", reason: "at least one layer is required" });
        }
        for (i, l) in layers.iter().enumerate() {
            if !(l.r_inner > 0.0 && l.r_outer > l.r_inner && l.r_outer.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "layers",
                    reason: "layer radii must be positive and increasing",
                });
            }
            if i > 0 && layers[i - 1].r_outer != l.r_inner {
                return Err(Error::InvalidParameter { name: "layers", reason: "layers must be contiguous" });
            }
        }
        Ok(LayerStack { layers, dispersion })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn dispersion(&self) -> &LorentzModel {
        &self.dispersion
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn inner_radius(&self) -> f64 {
        self.layers[0].r_inner
    }

    pub fn outer_radius(&self) -> f64 {
        self.layers[self.layers.len() - 1].r_outer
    }

    /// Boundaries `r_0 < r_1 < … < r_N`.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.layers.iter().map(|l| l.r_inner).collect();
        b.push(self.outer_radius());
        b
    }

    pub fn tensors(&self, index: usize, omega: f64) -> Result<MaterialTensors> {
        let k = self.dispersion.factor(omega)?;
        Ok(self.layers[index].factors.scaled(k))
    }

    /// Piecewise-constant radial factor `ε_r/κ_L` at radius `r`.
    pub fn radial_factor_at(&self, r: f64) -> Option<Complex64> {
        self.layers
            .iter()
            .find(|l| r >= l.r_inner && r < l.r_outer)
            .or_else(|| self.layers.last().filter(|l| r == l.r_outer))
            .map(|l| l.factors.eps_r)
    }

    /// Table rows `(index from 1, r_inner, r_outer, ε_r/κ_L, ε_t/κ_L)`.
    pub fn rows(&self) -> impl Iterator<Item = LayerRow> + '_ {
        self.layers.iter().enumerate().map(|(i, l)| LayerRow {
            layer_index: i + 1,
            r_inner: l.r_inner,
            r_outer: l.r_outer,
            eps_r_over_kl: l.factors.eps_r.re,
            eps_t_over_kl: l.factors.eps_t.re,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerRow {
    pub layer_index: usize,
    pub r_inner: f64,
    pub r_outer: f64,
    pub eps_r_over_kl: f64,
    pub eps_t_over_kl: f64,
}

/// Equal-thickness layers with the radial component frozen at each layer's
/// inner boundary. The innermost layer therefore has `ε_r = μ_r = 0`.
///
/// A single layer would be entirely `ε_r = 0` and is rejected.
pub fn discretize_layers(cloak: &CloakSpec, num_layers: usize) -> Result<LayerStack> {
    if num_layers < 2 {
        return Err(Error::InvalidParameter {
            name: "num_layers",
            reason: "at least 2 layers are required (a single layer has eps_r = 0 throughout)",
        });
    }
    let (r1, r2) = (cloak.inner_radius, cloak.outer_radius);
    let step = (r2 - r1) / num_layers as f64;
    let boundary = |f: usize| if f == num_layers { r2 } else { r1 + step * f as f64 };
    let t = Complex64::new(cloak.tangential_scale(), 0.0);
    let layers = (1..=num_layers)
        .map(|f| {
            let r_inner = boundary(f - 1);
            let rad = Complex64::new(cloak.radial_scale(r_inner), 0.0);
            Layer {
                r_inner,
                r_outer: boundary(f),
                factors: MaterialTensors { eps_r: rad, eps_t: t, mu_r: rad, mu_t: t },
            }
        })
        .collect();
    LayerStack::from_layers(layers, cloak.dispersion)
}
