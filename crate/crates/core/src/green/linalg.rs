//! Dense complex solves for the tiny boundary systems (2×2, 4×4).

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Solves `A·x = b` after row and column equilibration, returning `x` and
/// the 1-norm condition number of the equilibrated matrix (infinite when a
/// pivot vanishes).
pub(crate) fn solve<const N: usize>(
    a: [[Complex64; N]; N],
    b: [Complex64; N],
) -> ([Complex64; N], f64) {
    let mut m = a;
    let mut rhs = b;
    for i in 0..N {
        let s = m[i].iter().map(|v| v.norm()).fold(0.0, f64::max);
        if s == 0.0 || !s.is_finite() {
            return ([ZERO; N], f64::INFINITY);
        }
        for v in m[i].iter_mut() {
            *v /= s;
        }
        rhs[i] /= s;
    }
    let mut col = [1.0; N];
    for (j, c) in col.iter_mut().enumerate() {
        let s = (0..N).map(|i| m[i][j].norm()).fold(0.0, f64::max);
        if s == 0.0 {
            return ([ZERO; N], f64::INFINITY);
        }
        *c = 1.0 / s;
        for row in m.iter_mut() {
            row[j] *= *c;
        }
    }

    let Some(lu) = Lu::factor(m) else {
        return ([ZERO; N], f64::INFINITY);
    };
    let y = lu.solve(rhs);
    let mut x = [ZERO; N];
    for j in 0..N {
        x[j] = y[j] * col[j];
    }

    let mut inv_norm = 0.0_f64;
    for j in 0..N {
        let mut e = [ZERO; N];
        e[j] = Complex64::new(1.0, 0.0);
        let c = lu.solve(e);
        inv_norm = inv_norm.max(c.iter().map(|v| v.norm()).sum());
    }
    let a_norm = (0..N).map(|j| (0..N).map(|i| m[i][j].norm()).sum::<f64>()).fold(0.0, f64::max);
    (x, a_norm * inv_norm)
}

struct Lu<const N: usize> {
    m: [[Complex64; N]; N],
    perm: [usize; N],
}

impl<const N: usize> Lu<N> {
    fn factor(mut m: [[Complex64; N]; N]) -> Option<Self> {
        let mut perm = [0; N];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        for k in 0..N {
            let p = (k..N).max_by(|&a, &b| m[a][k].norm().total_cmp(&m[b][k].norm()))?;
            if m[p][k].norm() == 0.0 || !m[p][k].is_finite() {
                return None;
            }
            m.swap(k, p);
            perm.swap(k, p);
            for i in k + 1..N {
                let f = m[i][k] / m[k][k];
                m[i][k] = f;
                for j in k + 1..N {
                    let t = m[k][j];
                    m[i][j] -= f * t;
                }
            }
        }
        Some(Lu { m, perm })
    }

    fn solve(&self, b: [Complex64; N]) -> [Complex64; N] {
        let mut y = [ZERO; N];
        for i in 0..N {
            let mut s = b[self.perm[i]];
            for j in 0..i {
                s -= self.m[i][j] * y[j];
            }
            y[i] = s;
        }
        for i in (0..N).rev() {
            let mut s = y[i];
            for j in i + 1..N {
                s -= self.m[i][j] * y[j];
            }
            y[i] = s / self.m[i][i];
        }
        y
    }
}
