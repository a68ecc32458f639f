use num_complex::Complex64;

use crate::error::{Error, Result};

const RESCALE_HIGH: f64 = 1e150;
const RESCALE_LOW: f64 = 1e-150;

/// A complex number stored as `mantissa · e^log_scale`.
///
/// Bessel functions of order ~10⁴ at moderate arguments sit far outside
/// the `f64` range; only ratios of them are ever needed, so they travel in
/// this form until the final division.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mantissa: Complex64,
    log_scale: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mantissa: Complex64::new(0.0, 0.0), log_scale: 0.0 };

    pub fn new(value: Complex64) -> Self {
        Scaled { mantissa: value, log_scale: 0.0 }.normalized()
    }

    pub fn from_parts(mantissa: Complex64, log_scale: f64) -> Self {
        Scaled { mantissa, log_scale }.normalized()
    }

    /// `e^log_modulus · e^{i·phase}` without ever forming the modulus.
    pub fn from_log(log_value: Complex64) -> Self {
        let (s, c) = libm::sincos(log_value.im);
        Scaled { mantissa: Complex64::new(c, s), log_scale: log_value.re }
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.is_finite() && self.log_scale.is_finite()
    }

    /// Natural log of the modulus.
    pub fn ln_abs(&self) -> f64 {
        libm::log(self.mantissa.norm()) + self.log_scale
    }

    fn normalized(mut self) -> Self {
        let m = self.mantissa.norm();
        if m == 0.0 || !m.is_finite() {
            return self;
        }
        if !(RESCALE_LOW..=RESCALE_HIGH).contains(&m) {
            self.mantissa /= m;
            self.log_scale += libm::log(m);
        }
        self
    }

    /// Plain complex value; errors if it does not fit in `f64`.
    pub fn value(&self) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if !self.is_finite() {
            return Err(Error::Range("non-finite scaled value"));
        }
        let v = self.mantissa * libm::exp(self.log_scale);
        if !v.is_finite() {
            return Err(Error::Range("value overflows f64"));
        }
        Ok(v)
    }

    pub fn scale(self, factor: Complex64) -> Self {
        Scaled { mantissa: self.mantissa * factor, log_scale: self.log_scale }.normalized()
    }

    pub fn mul(self, other: Scaled) -> Self {
        Scaled {
            mantissa: self.mantissa * other.mantissa,
            log_scale: self.log_scale + other.log_scale,
        }
        .normalized()
    }

    pub fn div(self, other: Scaled) -> Self {
        Scaled {
            mantissa: self.mantissa / other.mantissa,
            log_scale: self.log_scale - other.log_scale,
        }
        .normalized()
    }

    /// `self / other` as a plain complex number.
    pub fn ratio(self, other: Scaled) -> Result<Complex64> {
        self.div(other).value()
    }

    pub fn add(self, other: Scaled) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) =
            if self.log_scale >= other.log_scale { (self, other) } else { (other, self) };
        let shift = small.log_scale - big.log_scale;
        // below e^-745 the smaller term cannot affect the larger one
        let m = if shift < -745.0 {
            big.mantissa
        } else {
            big.mantissa + small.mantissa * libm::exp(shift)
        };
        Scaled { mantissa: m, log_scale: big.log_scale }.normalized()
    }

    pub fn neg(self) -> Self {
        Scaled { mantissa: -self.mantissa, log_scale: self.log_scale }
    }

    /// Mantissa re-expressed relative to another log scale.
    pub(crate) fn mantissa_at(&self, log_scale: f64) -> Complex64 {
        let shift = self.log_scale - log_scale;
        if shift < -745.0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.mantissa * libm::exp(shift)
        }
    }
}
