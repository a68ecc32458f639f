//! Textbook Mie recursion for concentric isotropic spheres.
//!
//! Riccati-Bessel functions follow the usual light-scattering recipe:
//! `D_n = ψ_n'/ψ_n` by downward recurrence, `ψ_n` upward through
//! `ψ_n = ψ_{n−1}/(D_n + n/z)`, `χ_n = −z·y_n` by plain upward recurrence,
//! `ξ_n = ψ_n − iχ_n = z·h_n`.
//!
//! The returned coefficient `B` multiplies `ξ_n` in the outside field
//! `ψ_n + B·ξ_n` (minus the conventional `a_n`, `b_n`).

use num_complex::Complex64 as C;

pub struct Riccati {
    pub psi: Vec<C>,
    pub chi: Vec<C>,
}

impl Riccati {
    pub fn xi(&self, n: usize) -> C {
        self.psi[n] - C::i() * self.chi[n]
    }

    fn dpsi(&self, n: usize, z: C) -> C {
        self.psi[n - 1] - self.psi[n] * (n as f64) / z
    }

    fn dchi(&self, n: usize, z: C) -> C {
        self.chi[n - 1] - self.chi[n] * (n as f64) / z
    }

    pub fn dxi(&self, n: usize, z: C) -> C {
        self.dpsi(n, z) - C::i() * self.dchi(n, z)
    }
}

pub fn riccati(z: C, n_max: usize) -> Riccati {
    let start = n_max + 20 + z.norm().ceil() as usize;
    let mut d = vec![C::new(0.0, 0.0); start + 1];
    for n in (1..=start).rev() {
        let nz = (n as f64) / z;
        d[n - 1] = nz - 1.0 / (d[n] + nz);
    }
    let mut psi = vec![z.sin()];
    let mut chi = vec![z.cos(), z.cos() / z + z.sin()];
    for n in 1..=n_max {
        let prev = psi[n - 1];
        psi.push(prev / (d[n] + (n as f64) / z));
        if n < n_max {
            let next = chi[n] * ((2 * n + 1) as f64) / z - chi[n - 1];
            chi.push(next);
        }
    }
    chi.truncate(n_max + 1);
    Riccati { psi, chi }
}

/// One region of a layered sphere, from the previous radius out to `radius`.
#[derive(Clone, Copy)]
pub struct Region {
    pub radius: f64,
    pub eps: C,
    pub mu: C,
}

/// `B` for multipole `n`. `te = true` gives the magnetic (TE) coefficient,
/// whose interface flux is `u'/μ`; TM uses `u'/ε`.
pub fn coefficient(n: usize, omega: f64, regions: &[Region], te: bool) -> C {
    let n_max = n + 1;
    // (value, flux) of the field at the current radius, up to scale
    let core = regions[0];
    let k = (core.eps * core.mu).sqrt() * omega;
    let y = k / if te { core.mu } else { core.eps };
    let z = k * core.radius;
    let r = riccati(z, n_max);
    let mut value = r.psi[n];
    let mut flux = y * r.dpsi(n, z);

    for pair in regions.windows(2) {
        let (inner, shell) = (pair[0], pair[1]);
        let k = (shell.eps * shell.mu).sqrt() * omega;
        let y = k / if te { shell.mu } else { shell.eps };
        let za = k * inner.radius;
        let zb = k * shell.radius;
        let ra = riccati(za, n_max);
        let rb = riccati(zb, n_max);
        // A·ψ + Cc·χ matches (value, flux) at the inner radius
        let (p, pd) = (ra.psi[n], y * ra.dpsi(n, za));
        let (q, qd) = (ra.chi[n], y * ra.dchi(n, za));
        let det = p * qd - pd * q;
        let a = (value * qd - flux * q) / det;
        let c = (p * flux - pd * value) / det;
        value = a * rb.psi[n] + c * rb.chi[n];
        flux = y * (a * rb.dpsi(n, zb) + c * rb.dchi(n, zb));
    }

    let outer = regions[regions.len() - 1].radius;
    let x = C::new(omega * outer, 0.0);
    let r = riccati(x, n_max);
    let (p, pd) = (r.psi[n], omega * r.dpsi(n, x));
    let (s, sd) = (r.xi(n), omega * r.dxi(n, x));
    (flux * p - pd * value) / (sd * value - flux * s)
}

/// Normalised decay rates `(Γ⊥/Γ₀, Γ∥/Γ₀)` outside a layered sphere:
/// `Γ⊥ = 1 + (3/2)·Re Σ n(n+1)(2n+1)·B_N·(ξ_n/x²)²` and
/// `Γ∥ = 1 + (3/4)·Re Σ (2n+1)·[B_M·(ξ_n/x)² + B_N·(ξ_n'/x)²]`.
pub fn decay_rates(omega: f64, r_a: f64, regions: &[Region]) -> (f64, f64) {
    let x = omega * r_a;
    let xc = C::new(x, 0.0);
    let n_top = (x + 4.0 * x.cbrt() + 60.0) as usize;
    let r = riccati(xc, n_top + 1);
    let (mut perp, mut para) = (C::new(0.0, 0.0), C::new(0.0, 0.0));
    let mut quiet = 0;
    for n in 1..=n_top {
        let nf = n as f64;
        let bm = coefficient(n, omega, regions, true);
        let bn = coefficient(n, omega, regions, false);
        let xi = r.xi(n);
        let dxi = r.dxi(n, xc);
        let tp = bn * (xi / (x * x)).powi(2) * (nf * (nf + 1.0) * (2.0 * nf + 1.0));
        let tt = (bm * (xi / x).powi(2) + bn * (dxi / x).powi(2)) * (2.0 * nf + 1.0);
        if !(tp.is_finite() && tt.is_finite()) {
            break;
        }
        perp += tp;
        para += tt;
        if tp.norm() <= 1e-17 * perp.norm() && tt.norm() <= 1e-17 * para.norm() && nf > x {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (1.0 + 1.5 * perp.re, 1.0 + 0.75 * para.re)
}
