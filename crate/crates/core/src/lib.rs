//! Spontaneous emission of a two-level atom next to a lossy, dispersive
//! spherical invisibility cloak.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerics:
//!
//! - [`specfun`]: spherical Bessel/Hankel functions of real order and complex
//!   argument, Riccati-Bessel derivative factors and Legendre polynomials.
//! - [`materials`]: Lorentz dispersion, the anisotropic cloak tensors and
//!   their discretisation into homogeneous layers.
//! - [`green`]: scattering coefficients (exact graded shell, layered
//!   transfer matrices, bare sphere) and the coincident-point scattering
//!   Green tensor.
//! - [`emission`]: normalised decay rates, upper-state amplitudes in the weak
//!   and strong coupling regimes, far-field emission patterns.
//!
//! All quantities use the nondimensional system `c = ω₀ = ħ = ε₀ = 1`:
//! frequencies are in units of the Lorentz resonance `ω₀`, lengths in `c/ω₀`.

#![no_std]

extern crate alloc;

pub mod emission;
pub mod error;
pub mod green;
pub mod materials;
pub mod specfun;

pub use error::{Error, Result};

pub use num_complex::Complex64;
