//! Direct solution of `Ċ(t) = ∫₀ᵗ K(t−s)·C(s) ds` with
//! `K(τ) = −(Ω²/4)·e^{−aτ}`, `a = iΔ + δω_c`.
//!
//! The memory integral `I(t) = ∫₀ᵗ e^{−a(t−s)}·C(s) ds` obeys
//! `I(t+h) = e^{−ah}·I(t) + ∫_t^{t+h} e^{−a(t+h−s)}·C(s) ds`, and the
//! trapezoid rule on the last piece plus trapezoid on `Ċ = −(Ω²/4)·I` gives
//! an implicit 2×2 step. Two step sizes are combined by Richardson
//! extrapolation.

use num_complex::Complex64 as C;

fn march(t_end: f64, steps: usize, rabi: f64, detuning: f64, width: f64) -> C {
    let h = t_end / steps as f64;
    let a = C::new(width, detuning);
    let decay = (-a * h).exp();
    let w = 0.25 * rabi * rabi;
    let (mut c, mut i) = (C::new(1.0, 0.0), C::new(0.0, 0.0));
    for _ in 0..steps {
        // i1 = decay·i + (h/2)(decay·c + c1)
        // c1 = c + (h/2)(−w·i − w·i1)
        let i_known = decay * i + 0.5 * h * decay * c;
        // c1 = c − (h/2)w·i − (h/2)w·(i_known + (h/2)c1)
        let c1 = (c - 0.5 * h * w * i - 0.5 * h * w * i_known) / (1.0 + 0.25 * h * h * w);
        i = i_known + 0.5 * h * c1;
        c = c1;
    }
    c
}

/// `C(t_end)` for `C(0) = 1`.
pub fn amplitude(t_end: f64, rabi: f64, detuning: f64, width: f64, steps: usize) -> C {
    let coarse = march(t_end, steps, rabi, detuning, width);
    let fine = march(t_end, 2 * steps, rabi, detuning, width);
    (4.0 * fine - coarse) / 3.0
}
