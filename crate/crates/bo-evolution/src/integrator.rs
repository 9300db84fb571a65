//! Fourth-order exponential integrators for `φ_t = Λφ + N(t, φ)` with the
//! stiff dispersive part `Λ = −iξ|ξ|` treated exactly.
//!
//! Integrating-factor RK4 (`E = e^{Λdt/2}`):
//!
//! ```text
//! k1 = N(t,        v)
//! k2 = N(t + dt/2, E(v + dt/2·k1))
//! k3 = N(t + dt/2, E v + dt/2·k2)
//! k4 = N(t + dt,   E² v + dt·E k3)
//! v ← E² v + dt/6·(E² k1 + 2E(k2 + k3) + k4)
//! ```
//!
//! ETDRK4 (Cox–Matthews, coefficients by the contour-integral average of
//! Kassam–Trefethen, `z = Λdt`, 32 points on the unit circle around `z`):
//!
//! ```text
//! a = e^{z/2} v + Q N(v),        Q  = dt (e^{z/2} − 1)/z
//! b = e^{z/2} v + Q N(a)
//! c = e^{z/2} a + Q (2N(b) − N(v))
//! v ← e^{z} v + f1 N(v) + 2 f2 (N(a) + N(b)) + f3 N(c)
//! f1 = dt (−4 − z + e^z(4 − 3z + z²))/z³
//! f2 = dt ( 2 + z + e^z(−2 + z))/z³
//! f3 = dt (−4 − 3z − z² + e^z(4 − z))/z³
//! ```

use bo_spectral::ops::{dealias_in_place, derivative_symbol};
use bo_spectral::{Complex64, Grid};

use crate::propagator::linear_symbol;

/// Available time-stepping schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Integrating-factor RK4 (default).
    IfRk4,
    /// Exponential time differencing RK4.
    Etdrk4,
}

impl Scheme {
    /// Stable identifier used in configs and metadata.
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::IfRk4 => "if-rk4",
            Scheme::Etdrk4 => "etdrk4",
        }
    }

    /// Parses an identifier produced by [`Scheme::name`].
    pub fn from_name(s: &str) -> Option<Scheme> {
        match s {
            "if-rk4" => Some(Scheme::IfRk4),
            "etdrk4" => Some(Scheme::Etdrk4),
            _ => None,
        }
    }
}

/// Per-mode exponential coefficients for one `(scheme, dt)` pair.
#[derive(Debug, Clone)]
pub struct ExpCoefficients {
    scheme: Scheme,
    dt: f64,
    e_half: Vec<Complex64>,
    e_full: Vec<Complex64>,
    q: Vec<Complex64>,
    f1: Vec<Complex64>,
    f2: Vec<Complex64>,
    f3: Vec<Complex64>,
}

const CONTOUR_POINTS: usize = 32;

impl ExpCoefficients {
    /// Precomputes the coefficients for the BO linear symbol on `grid`.
    pub fn new(grid: &Grid, scheme: Scheme, dt: f64) -> Self {
        let n = grid.n();
        let mut c = ExpCoefficients {
            scheme,
            dt,
            e_half: Vec::with_capacity(n),
            e_full: Vec::with_capacity(n),
            q: Vec::new(),
            f1: Vec::new(),
            f2: Vec::new(),
            f3: Vec::new(),
        };
        for (j, &xi) in grid.xi().iter().enumerate() {
            let z = linear_symbol(grid, j, xi) * dt;
            c.e_half.push((z * 0.5).exp());
            c.e_full.push(z.exp());
            if scheme == Scheme::Etdrk4 {
                let (q, f1, f2, f3) = etd_coefficients(z, dt);
                c.q.push(q);
                c.f1.push(f1);
                c.f2.push(f2);
                c.f3.push(f3);
            }
        }
        c
    }

    /// The step these coefficients were built for.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// The scheme these coefficients were built for.
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Advances `v` (spectral) from `t` to `t + dt`; `nonlinear(t, v)` returns
    /// the spectrum of `N(t, v)`.
    pub fn step(
        &self,
        v: &[Complex64],
        t: f64,
        mut nonlinear: impl FnMut(f64, &[Complex64]) -> Vec<Complex64>,
    ) -> Vec<Complex64> {
        let dt = self.dt;
        let n = v.len();
        match self.scheme {
            Scheme::IfRk4 => {
                let e = &self.e_half;
                let e2 = &self.e_full;
                let k1 = nonlinear(t, v);
                let s2: Vec<Complex64> = (0..n).map(|j| e[j] * (v[j] + k1[j] * (0.5 * dt))).collect();
                let k2 = nonlinear(t + 0.5 * dt, &s2);
                let s3: Vec<Complex64> = (0..n).map(|j| e[j] * v[j] + k2[j] * (0.5 * dt)).collect();
                let k3 = nonlinear(t + 0.5 * dt, &s3);
                let s4: Vec<Complex64> = (0..n).map(|j| e2[j] * v[j] + e[j] * k3[j] * dt).collect();
                let k4 = nonlinear(t + dt, &s4);
                (0..n)
                    .map(|j| e2[j] * v[j] + (e2[j] * k1[j] + e[j] * (k2[j] + k3[j]) * 2.0 + k4[j]) * (dt / 6.0))
                    .collect()
            }
            Scheme::Etdrk4 => {
                let e = &self.e_half;
                let nv = nonlinear(t, v);
                let a: Vec<Complex64> = (0..n).map(|j| e[j] * v[j] + self.q[j] * nv[j]).collect();
                let na = nonlinear(t + 0.5 * dt, &a);
                let b: Vec<Complex64> = (0..n).map(|j| e[j] * v[j] + self.q[j] * na[j]).collect();
                let nb = nonlinear(t + 0.5 * dt, &b);
                let c: Vec<Complex64> = (0..n)
                    .map(|j| e[j] * a[j] + self.q[j] * (nb[j] * 2.0 - nv[j]))
                    .collect();
                let nc = nonlinear(t + dt, &c);
                (0..n)
                    .map(|j| {
                        self.e_full[j] * v[j]
                            + nv[j] * self.f1[j]
                            + (na[j] + nb[j]) * self.f2[j] * 2.0
                            + nc[j] * self.f3[j]
                    })
                    .collect()
            }
        }
    }
}

fn etd_coefficients(z: Complex64, dt: f64) -> (Complex64, Complex64, Complex64, Complex64) {
    let mut q = Complex64::new(0.0, 0.0);
    let mut f1 = q;
    let mut f2 = q;
    let mut f3 = q;
    for k in 0..CONTOUR_POINTS {
        let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / CONTOUR_POINTS as f64;
        let r = z + Complex64::from_polar(1.0, theta);
        let er = r.exp();
        let r3 = r * r * r;
        q += ((r * 0.5).exp() - 1.0) / r;
        f1 += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
        f2 += (2.0 + r + er * (r - 2.0)) / r3;
        f3 += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
    }
    let s = dt / CONTOUR_POINTS as f64;
    (q * s, f1 * s, f2 * s, f3 * s)
}

/// Spectrum of the conservative nonlinearity `½∂ₓ(u·w)` with `u`, `w` given
/// by their spectra, the product de-aliased by the 2/3 rule.
pub fn half_dx_product(grid: &Grid, u: &[Complex64], w: &[Complex64]) -> Vec<Complex64> {
    let us = grid.ifft_real(u);
    let ws = grid.ifft_real(w);
    let prod: Vec<f64> = us.iter().zip(&ws).map(|(a, b)| a * b).collect();
    let mut spec = grid.fft_real(&prod);
    dealias_in_place(grid, &mut spec);
    for (j, (c, &xi)) in spec.iter_mut().zip(grid.xi()).enumerate() {
        *c *= derivative_symbol(grid, j, xi, 1) * 0.5;
    }
    spec
}

/// Spectrum of `½∂ₓ(φ²)`.
pub fn bo_nonlinearity(grid: &Grid, v: &[Complex64]) -> Vec<Complex64> {
    let s = grid.ifft_real(v);
    let sq: Vec<f64> = s.iter().map(|a| a * a).collect();
    let mut spec = grid.fft_real(&sq);
    dealias_in_place(grid, &mut spec);
    for (j, (c, &xi)) in spec.iter_mut().zip(grid.xi()).enumerate() {
        *c *= derivative_symbol(grid, j, xi, 1) * 0.5;
    }
    spec
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn etd_coefficients_small_z_limits() {
        // z → 0: Q → dt/2, f1 → dt/6, f2 → dt/6, f3 → dt/6.
        let (q, f1, f2, f3) = etd_coefficients(Complex64::new(0.0, 0.0), 0.1);
        assert!((q - 0.05).norm() < 1e-14);
        assert!((f1 - 0.1 / 6.0).norm() < 1e-14);
        assert!((f2 - 0.1 / 6.0).norm() < 1e-14);
        assert!((f3 - 0.1 / 6.0).norm() < 1e-14);
    }

    #[test]
    fn etd_coefficients_match_direct_formula() {
        let z = Complex64::new(0.0, 3.0);
        let dt = 0.01;
        let (q, f1, _, _) = etd_coefficients(z, dt);
        let qd = ((z * 0.5).exp() - 1.0) / z * dt;
        let f1d = (-4.0 - z + z.exp() * (4.0 - 3.0 * z + z * z)) / (z * z * z) * dt;
        assert!((q - qd).norm() < 1e-13);
        assert!((f1 - f1d).norm() < 1e-13);
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in [Scheme::IfRk4, Scheme::Etdrk4] {
            assert_eq!(Scheme::from_name(s.name()), Some(s));
        }
        assert_eq!(Scheme::from_name("euler"), None);
    }
}
