//! The linearized flow `(∂ₜ + H∂²ₓ)v = ∂ₓ(φv)` around a sampled background.
//!
//! The background is interpolated linearly in time between its snapshots, so
//! it should be sampled at the stepping cadence (or finer) for the fourth
//! order of the integrator to be visible.

use bo_spectral::ops::{dealias_in_place, derivative_symbol};
use bo_spectral::{Complex64, Grid, RealField};

use crate::error::{EvolutionError, Result};
use crate::integrator::{ExpCoefficients, Scheme};
use crate::solver::Trajectory;

/// A solution of the linearized equation at one time.
#[derive(Debug, Clone)]
pub struct LinearizedState {
    /// The perturbation `v`.
    pub v: RealField,
    /// Current time (inside the background span).
    pub time: f64,
}

/// Fixed-step integrator for the linearized equation.
#[derive(Debug)]
pub struct LinearizedSolver<'a> {
    background: &'a Trajectory,
    coeffs: ExpCoefficients,
}

fn dx_product(grid: &Grid, phi: &[f64], v: &[Complex64]) -> Vec<Complex64> {
    let vs = grid.ifft_real(v);
    let prod: Vec<f64> = phi.iter().zip(&vs).map(|(a, b)| a * b).collect();
    let mut spec = grid.fft_real(&prod);
    dealias_in_place(grid, &mut spec);
    for (j, (c, &xi)) in spec.iter_mut().zip(grid.xi()).enumerate() {
        *c *= derivative_symbol(grid, j, xi, 1);
    }
    spec
}

impl<'a> LinearizedSolver<'a> {
    /// Builds a stepper for the given background and step.
    pub fn new(background: &'a Trajectory, scheme: Scheme, dt: f64) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(EvolutionError::InvalidDt(dt));
        }
        Ok(LinearizedSolver {
            background,
            coeffs: ExpCoefficients::new(background.grid(), scheme, dt),
        })
    }

    /// Advances one step.
    pub fn step(&self, state: &LinearizedState) -> Result<LinearizedState> {
        let grid = self.background.grid();
        state.v.grid().check_same(grid)?;
        let dt = self.coeffs.dt();
        let (start, end) = self.background.span();
        let t_end = state.time + dt;
        for t in [state.time, t_end] {
            if t < start - 1e-12 || t > end + 1e-9 * (1.0 + end.abs()) {
                return Err(EvolutionError::OutOfRange { t, start, end });
            }
        }
        let mut failure = None;
        let v = self.coeffs.step(state.v.dft().coeffs(), state.time, |t, u| {
            match self.background.interpolate(t.min(end)) {
                Ok(phi) => dx_product(grid, &phi, u),
                Err(e) => {
                    failure.get_or_insert(e);
                    vec![Complex64::new(0.0, 0.0); u.len()]
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let v = RealField::new(grid, grid.ifft_real(&v)).map_err(|_| EvolutionError::Divergence {
            time: t_end,
            last_good_time: state.time,
            reason: "non-finite sample in linearized flow".into(),
        })?;
        Ok(LinearizedState { v, time: t_end })
    }
}

/// One step of the linearized flow.
pub fn step_linearized(
    state: &LinearizedState,
    background: &Trajectory,
    dt: f64,
    scheme: Scheme,
) -> Result<LinearizedState> {
    LinearizedSolver::new(background, scheme, dt)?.step(state)
}
