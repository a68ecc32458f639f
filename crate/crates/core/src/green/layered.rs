//! Transfer-matrix coefficients for a stack of homogeneous anisotropic
//! layers.
//!
//! In layer `f` the radial equation is solved by `z_ν(k_t r)` with
//! `ν(ν+1) = β_f·n(n+1)`. The solution is tracked as a row vector `ℓ` with
//! `ℓ·c = 0` for the layer's coefficient pair `c`; crossing an interface
//! maps `ℓ ← ℓ·W_f(r_f)⁻¹·W_{f+1}(r_f)`, and in free space `ℓ·(1, B̃) = 0`
//! gives `B̃ = −ℓ₁/ℓ₂`.
//!
//! A layer whose radial component vanishes has `β = ∞`: fields cannot
//! enter it and `u` vanishes on its outer surface, decoupling everything
//! inside. With the standard discretisation this is the innermost layer.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::exact::{check_n, finish, object_column};
use super::linalg;
use super::waves::{columns, wave, wavefn, Column, Outside};
use super::{check_omega, Polarization, ScatteringCoeffs};
use crate::error::{Error, Result};
use crate::materials::{LayerStack, ObjectSpec};
use crate::specfun::{BesselOrder, Kind};

/// Static anisotropy factors with an imaginary part above this are refused.
const REAL_BETA_TOL: f64 = 1e-12;

pub fn layered_scatter_coeffs(
    n: usize,
    omega: f64,
    stack: &LayerStack,
    object: &ObjectSpec,
) -> Result<ScatteringCoeffs> {
    check_omega(omega)?;
    check_n(n)?;
    if stack.len() < 2 {
        return Err(Error::InvalidParameter { name: "num_layers", reason: "at least 2 layers are required" });
    }
    let out = Outside::new(n, omega, stack.outer_radius())?;
    let mut pair = [Complex64::new(0.0, 0.0); 2];
    let mut condition = 1.0_f64;
    for (slot, pol) in pair.iter_mut().zip([Polarization::Te, Polarization::Tm]) {
        let (b, cond) = cascade(n, omega, stack, object, &out, pol)?;
        condition = condition.max(cond);
        *slot = out.coefficient(b)?;
    }
    finish(n, omega, pair, condition)
}

/// Per-layer basis columns at `[r_inner, r_outer]`.
struct LayerColumns {
    j: [Column; 2],
    h: [Column; 2],
}

impl LayerColumns {
    fn at_inner(&self) -> [[Complex64; 2]; 2] {
        matrix(self.j[0], self.h[0])
    }

    fn at_outer(&self) -> [[Complex64; 2]; 2] {
        matrix(self.j[1], self.h[1])
    }
}

fn matrix(j: Column, h: Column) -> [[Complex64; 2]; 2] {
    [[j.value, h.value], [j.flux, h.flux]]
}

fn radial_and_tangential(stack: &LayerStack, f: usize, pol: Polarization) -> (Complex64, Complex64) {
    let t = stack.layers()[f].factors;
    match pol {
        Polarization::Te => (t.mu_r, t.mu_t),
        Polarization::Tm => (t.eps_r, t.eps_t),
    }
}

fn layer_columns(
    n: usize,
    omega: f64,
    stack: &LayerStack,
    f: usize,
    pol: Polarization,
) -> Result<LayerColumns> {
    let (radial, tangential) = radial_and_tangential(stack, f, pol);
    let beta = tangential / radial;
    if beta.im.abs() > REAL_BETA_TOL * beta.re.abs() {
        return Err(Error::InvalidParameter {
            name: "layers",
            reason: "anisotropy ratio must be real",
        });
    }
    let order = BesselOrder::from_anisotropy(n, beta.re)?;
    let layer = &stack.layers()[f];
    let (k, y) = wave(&stack.tensors(f, omega)?, omega, pol);
    let (ri, ro) = (k * layer.r_inner, k * layer.r_outer);
    let (j, _) = columns([wavefn(Kind::First, order, ri)?, wavefn(Kind::First, order, ro)?], y)?;
    let (h, _) = columns([wavefn(Kind::Third, order, ri)?, wavefn(Kind::Third, order, ro)?], y)?;
    Ok(LayerColumns { j, h })
}

/// `ℓ·W⁻¹` as the solve `Wᵀ·vᵀ = ℓᵀ`.
fn left_divide(l: [Complex64; 2], w: [[Complex64; 2]; 2]) -> ([Complex64; 2], f64) {
    let wt = [[w[0][0], w[1][0]], [w[0][1], w[1][1]]];
    linalg::solve(wt, l)
}

fn times(l: [Complex64; 2], w: [[Complex64; 2]; 2]) -> [Complex64; 2] {
    [l[0] * w[0][0] + l[1] * w[1][0], l[0] * w[0][1] + l[1] * w[1][1]]
}

fn normalised(l: [Complex64; 2]) -> [Complex64; 2] {
    let s = l[0].norm().max(l[1].norm());
    if s > 0.0 && s.is_finite() {
        [l[0] / s, l[1] / s]
    } else {
        l
    }
}

fn cascade(
    n: usize,
    omega: f64,
    stack: &LayerStack,
    object: &ObjectSpec,
    out: &Outside,
    pol: Polarization,
) -> Result<(Complex64, f64)> {
    let count = stack.len();
    let wall = (0..count).rev().find(|&f| radial_and_tangential(stack, f, pol).0 == Complex64::new(0.0, 0.0));
    let outside = matrix(out.j, out.h);
    let mut condition = 1.0_f64;

    let first = wall.map_or(0, |w| w + 1);
    if first == count {
        // u vanishes on the outer surface itself
        return Ok((out.reflect(Column { value: Complex64::new(0.0, 0.0), flux: Complex64::new(1.0, 0.0) }), condition));
    }

    let layers: Vec<LayerColumns> =
        (first..count).map(|f| layer_columns(n, omega, stack, f, pol)).collect::<Result<_>>()?;

    let mut l = match wall {
        Some(_) => {
            let w = layers[0].at_inner();
            [w[0][0], w[0][1]]
        }
        None => {
            let v = object_column(n, omega, object, stack.inner_radius(), pol)?;
            [layers[0].j[0].cross(v), layers[0].h[0].cross(v)]
        }
    };
    l = normalised(l);

    for (i, layer) in layers.iter().enumerate() {
        let (v, cond) = left_divide(l, layer.at_outer());
        condition = condition.max(cond);
        let next = match layers.get(i + 1) {
            Some(nl) => nl.at_inner(),
            None => outside,
        };
        l = normalised(times(v, next));
    }
    Ok((-l[0] / l[1], condition))
}
