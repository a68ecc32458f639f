//! Spherical Bessel and Hankel functions of real order, Riccati-Bessel
//! derivative factors, Legendre polynomials.
//!
//! Integer orders run on closed-form starts (`j` by series or normalised
//! Miller recurrence, `y` and `h` upward from the trigonometric forms).
//! Non-integer orders go through `J_{ν+1/2}` and `Y_{ν+1/2}`; the second kind
//! uses the reflection formula, with orders within `1e-6` of an integer
//! handled by linear interpolation between `±1e-6` neighbours.
//!
//! Everything is also available in [`Scaled`] form, which the layered solver
//! needs once `ν` climbs into the thousands.

mod cylinder;
mod kernels;
mod legendre;
mod scaled;
mod spherical;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use legendre::legendre_table;
pub use scaled::Scaled;

/// Largest accepted `|Im arg|`; beyond it `e^{|Im arg|}` leaves `f64`.
pub const MAX_IMAG_ARG: f64 = 600.0;
/// Largest accepted `|arg|`.
pub const MAX_ARG: f64 = 1e5;

/// Real, non-negative order of a spherical Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Domain("Bessel order must be finite"));
        }
        if value < 0.0 {
            return Err(Error::Domain("Bessel order must be non-negative"));
        }
        Ok(BesselOrder(value))
    }

    pub fn integer(n: usize) -> Self {
        BesselOrder(n as f64)
    }

    /// Order of a homogeneous anisotropic layer with `ν(ν+1) = β·n(n+1)`.
    pub fn from_anisotropy(n: usize, beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::Domain("anisotropy ratio must be positive"));
        }
        let s = (n * (n + 1)) as f64 * beta;
        // rationalised √(s + 1/4) − 1/2, exact for β = 1
        let nu = s / (libm::sqrt(s + 0.25) + 0.5);
        if !nu.is_finite() {
            return Err(Error::Range("effective multipole order overflows"));
        }
        Ok(BesselOrder(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn as_integer(self) -> Option<usize> {
        (self.0 == libm::floor(self.0) && self.0 < 1e9).then_some(self.0 as usize)
    }
}

/// Which spherical Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `j_ν`
    First,
    /// `y_ν`
    Second,
    /// `h_ν^{(1)} = j_ν + i·y_ν`
    Third,
}

/// `z(ρ)` together with `(1/ρ)·d[ρ·z(ρ)]/dρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiPair {
    pub value: Complex64,
    pub derivative_factor: Complex64,
}

/// Scaled `z(ρ)` together with `(1/ρ)·d[ρ·z]/dρ / z`, the logarithmic
/// derivative of the Riccati function `ρ·z(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledRiccati {
    pub value: Scaled,
    pub derivative_ratio: Complex64,
}

fn check_arg(kind: Kind, order: BesselOrder, arg: Complex64) -> Result<()> {
    if !arg.is_finite() {
        return Err(Error::Domain("argument must be finite"));
    }
    if arg.norm() > MAX_ARG || arg.im.abs() > MAX_IMAG_ARG {
        return Err(Error::Range("argument outside the overflow-safe region"));
    }
    if arg.re == 0.0 && arg.im == 0.0 {
        let regular = kind == Kind::First && order.as_integer().is_some();
        if !regular {
            return Err(Error::Domain("function diverges or is undefined at the origin"));
        }
    }
    Ok(())
}

/// `(z_ν(x), z_{ν+1}(x))` in scaled form.
pub fn spherical_pair_scaled(
    kind: Kind,
    order: BesselOrder,
    arg: Complex64,
) -> Result<(Scaled, Scaled)> {
    check_arg(kind, order, arg)?;
    let (a, b) = spherical::pair(kind, order.0, arg, order.as_integer());
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Range("Bessel evaluation overflowed"));
    }
    Ok((a, b))
}

fn eval(kind: Kind, order: BesselOrder, arg: Complex64) -> Result<Complex64> {
    spherical_pair_scaled(kind, order, arg)?.0.value()
}

pub fn spherical_bessel_j(order: BesselOrder, arg: Complex64) -> Result<Complex64> {
    eval(Kind::First, order, arg)
}

pub fn spherical_bessel_y(order: BesselOrder, arg: Complex64) -> Result<Complex64> {
    eval(Kind::Second, order, arg)
}

pub fn spherical_hankel1(order: BesselOrder, arg: Complex64) -> Result<Complex64> {
    eval(Kind::Third, order, arg)
}

/// Value and Riccati derivative factor, via
/// `(1/ρ)·d[ρ z_ν]/dρ = ((ν+1)/ρ)·z_ν − z_{ν+1}`.
pub fn riccati_pair(kind: Kind, order: BesselOrder, arg: Complex64) -> Result<RiccatiPair> {
    if arg.re == 0.0 && arg.im == 0.0 {
        return Err(Error::Domain("Riccati derivative factor needs a nonzero argument"));
    }
    let (a, b) = spherical_pair_scaled(kind, order, arg)?;
    let value = a.value()?;
    let next = b.value()?;
    let derivative_factor = value * ((order.0 + 1.0) / arg) - next;
    Ok(RiccatiPair { value, derivative_factor })
}

pub fn riccati_scaled(kind: Kind, order: BesselOrder, arg: Complex64) -> Result<ScaledRiccati> {
    if arg.re == 0.0 && arg.im == 0.0 {
        return Err(Error::Domain("Riccati derivative factor needs a nonzero argument"));
    }
    let (a, b) = spherical_pair_scaled(kind, order, arg)?;
    if a.is_zero() {
        return Err(Error::Range("Bessel value underflowed to zero"));
    }
    let derivative_ratio = (order.0 + 1.0) / arg - b.ratio(a)?;
    Ok(ScaledRiccati { value: a, derivative_ratio })
}

/// `(P_n(cos θ), dP_n(cos θ)/dθ)`.
pub fn legendre_terms(n: usize, theta: f64) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::Domain("Legendre degree must be at least 1"));
    }
    Ok(legendre_table(n, theta)?[n])
}
