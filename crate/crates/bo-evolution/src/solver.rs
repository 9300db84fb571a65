//! The nonlinear Benjamin–Ono solver `φ_t + H∂²ₓφ = ½∂ₓ(φ²)` and trajectories.

use std::sync::Arc;

use bo_spectral::{Complex64, Grid, RealField};

use crate::error::{EvolutionError, Result};
use crate::integrator::{bo_nonlinearity, ExpCoefficients, Scheme};

/// The state of a run: field, time and number of steps taken.
#[derive(Debug, Clone)]
pub struct SolverState {
    /// Current field.
    pub field: RealField,
    /// Current time.
    pub time: f64,
    /// Steps taken so far.
    pub step_count: u64,
}

impl SolverState {
    /// Initial state at `t = 0`.
    pub fn initial(field: RealField) -> Self {
        SolverState {
            field,
            time: 0.0,
            step_count: 0,
        }
    }
}

/// Metadata attached to every trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    /// Integrator identifier ([`Scheme::name`]).
    pub integrator: String,
    /// Time step actually used.
    pub dt: f64,
    /// Whether products were de-aliased (always true for this solver).
    pub dealiased: bool,
    /// Grid size.
    pub n_points: usize,
    /// Box length.
    pub length: f64,
}

/// Time-stamped snapshots on a common grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    snapshots: Vec<(f64, RealField)>,
    meta: TrajectoryMeta,
}

impl Trajectory {
    /// Builds a trajectory, checking strictly increasing times and a uniform
    /// grid.
    pub fn new(snapshots: Vec<(f64, RealField)>, meta: TrajectoryMeta) -> Result<Self> {
        if snapshots.is_empty() {
            return Err(EvolutionError::BadTrajectory("no snapshots".into()));
        }
        for w in snapshots.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(EvolutionError::BadTrajectory(format!(
                    "times not strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
            if !w[0].1.grid().same_as(w[1].1.grid()) {
                return Err(EvolutionError::BadTrajectory("snapshots on different grids".into()));
            }
        }
        Ok(Trajectory { snapshots, meta })
    }

    /// Snapshots in time order.
    pub fn snapshots(&self) -> &[(f64, RealField)] {
        &self.snapshots
    }

    /// Snapshot times.
    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|(t, _)| *t).collect()
    }

    /// Metadata.
    pub fn meta(&self) -> &TrajectoryMeta {
        &self.meta
    }

    /// The common grid.
    pub fn grid(&self) -> &Arc<Grid> {
        self.snapshots[0].1.grid()
    }

    /// First and last time.
    pub fn span(&self) -> (f64, f64) {
        (self.snapshots[0].0, self.snapshots[self.snapshots.len() - 1].0)
    }

    /// The last snapshot.
    pub fn last(&self) -> &(f64, RealField) {
        &self.snapshots[self.snapshots.len() - 1]
    }

    /// Samples linearly interpolated in time between the bracketing
    /// snapshots.
    pub fn interpolate(&self, t: f64) -> Result<Vec<f64>> {
        let (start, end) = self.span();
        let slack = 1e-12 * (1.0 + end.abs());
        if t < start - slack || t > end + slack {
            return Err(EvolutionError::OutOfRange { t, start, end });
        }
        let t = t.clamp(start, end);
        let idx = self.snapshots.partition_point(|(s, _)| *s <= t);
        if idx == 0 {
            return Ok(self.snapshots[0].1.samples().to_vec());
        }
        if idx >= self.snapshots.len() {
            return Ok(self.last().1.samples().to_vec());
        }
        let (t0, f0) = &self.snapshots[idx - 1];
        let (t1, f1) = &self.snapshots[idx];
        let w = (t - t0) / (t1 - t0);
        Ok(f0
            .samples()
            .iter()
            .zip(f1.samples())
            .map(|(a, b)| (1.0 - w) * a + w * b)
            .collect())
    }
}

/// Options for [`evolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct EvolveOptions {
    /// Requested time step (adjusted down so that an integer number of steps
    /// reaches `t_end`).
    pub dt: f64,
    /// Final time.
    pub t_end: f64,
    /// Integrator.
    pub scheme: Scheme,
    /// Record a snapshot (and call the observer) every this many steps.
    pub snapshot_every: u64,
    /// Stability heuristic `dt ≤ cfl·h/sup|φ₀|`; `None` disables the check.
    pub cfl: Option<f64>,
}

impl EvolveOptions {
    /// IF-RK4 with the given step and final time, snapshots every step.
    pub fn new(dt: f64, t_end: f64) -> Self {
        EvolveOptions {
            dt,
            t_end,
            scheme: Scheme::IfRk4,
            snapshot_every: 1,
            cfl: Some(DEFAULT_CFL),
        }
    }
}

/// Default stability factor of the heuristic `dt ≤ cfl·h/sup|φ|`.
pub const DEFAULT_CFL: f64 = 1.0;

/// Largest step accepted by the stability heuristic for data `f`.
pub fn dt_max(f: &RealField, cfl: f64) -> f64 {
    let peak = f.peak();
    if peak == 0.0 {
        f64::INFINITY
    } else {
        cfl * f.grid().spacing() / peak
    }
}

/// Steps needed to reach `t_end` and the step actually used.
pub fn step_plan(dt: f64, t_end: f64) -> Result<(u64, f64)> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(EvolutionError::InvalidDt(dt));
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(EvolutionError::InvalidEndTime(t_end));
    }
    if t_end == 0.0 {
        return Ok((0, dt));
    }
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as u64;
    Ok((steps, t_end / steps as f64))
}

/// Single-scheme, fixed-step BO stepper.
#[derive(Debug, Clone)]
pub struct Solver {
    grid: Arc<Grid>,
    coeffs: ExpCoefficients,
}

impl Solver {
    /// Precomputes the exponential coefficients for `(grid, scheme, dt)`.
    pub fn new(grid: &Arc<Grid>, scheme: Scheme, dt: f64) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(EvolutionError::InvalidDt(dt));
        }
        Ok(Solver {
            grid: grid.clone(),
            coeffs: ExpCoefficients::new(grid, scheme, dt),
        })
    }

    /// The step size.
    pub fn dt(&self) -> f64 {
        self.coeffs.dt()
    }

    /// Advances a spectrum by one step.
    pub fn step_spectral(&self, v: &[Complex64], t: f64) -> Vec<Complex64> {
        let g = &self.grid;
        self.coeffs.step(v, t, |_, u| bo_nonlinearity(g, u))
    }

    /// Advances a state by one step.
    pub fn step(&self, state: &SolverState) -> Result<SolverState> {
        state.field.grid().check_same(&self.grid)?;
        let v = self.step_spectral(state.field.dft().coeffs(), state.time);
        let samples = self.grid.ifft_real(&v);
        let time = state.time + self.dt();
        let field = RealField::new(&self.grid, samples).map_err(|_| EvolutionError::Divergence {
            time,
            last_good_time: state.time,
            reason: "non-finite sample".into(),
        })?;
        Ok(SolverState {
            field,
            time,
            step_count: state.step_count + 1,
        })
    }
}

/// One BO step from `state` with step `dt` and the given scheme.
pub fn step(state: &SolverState, dt: f64, scheme: Scheme) -> Result<SolverState> {
    Solver::new(state.field.grid(), scheme, dt)?.step(state)
}

fn mass_of_spectrum(grid: &Grid, v: &[Complex64]) -> f64 {
    let n = grid.n() as f64;
    grid.length() / (n * n) * v.iter().map(|c| c.norm_sqr()).sum::<f64>()
}

/// Evolves `initial` to `t_end`, recording snapshots at `t = 0`, every
/// `snapshot_every` steps, and at the final time. The observer sees every
/// recorded state.
///
/// Divergence (any non-finite sample, or mass growth above 10%) aborts with
/// [`EvolutionError::Divergence`].
pub fn evolve(
    initial: &RealField,
    opts: &EvolveOptions,
    mut observer: Option<&mut dyn FnMut(&SolverState)>,
) -> Result<Trajectory> {
    let (steps, dt) = step_plan(opts.dt, opts.t_end)?;
    if let Some(cfl) = opts.cfl {
        let limit = dt_max(initial, cfl);
        if dt > limit {
            return Err(EvolutionError::DtTooLarge { dt, dt_max: limit });
        }
    }
    let grid = initial.grid().clone();
    let solver = Solver::new(&grid, opts.scheme, dt)?;
    let every = opts.snapshot_every.max(1);
    let mut state = SolverState::initial(initial.clone());
    if let Some(obs) = observer.as_mut() {
        obs(&state);
    }
    let mut snapshots = vec![(0.0, initial.clone())];
    let mut v = initial.dft().into_coeffs();
    let mass0 = mass_of_spectrum(&grid, &v);
    let mut last_good = 0.0;
    for s in 1..=steps {
        let t_prev = (s - 1) as f64 * dt;
        v = solver.step_spectral(&v, t_prev);
        let time = s as f64 * dt;
        if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(EvolutionError::Divergence {
                time,
                last_good_time: last_good,
                reason: "non-finite coefficient".into(),
            });
        }
        let mass = mass_of_spectrum(&grid, &v);
        if mass0 > 0.0 && mass > 1.1 * mass0 {
            return Err(EvolutionError::Divergence {
                time,
                last_good_time: last_good,
                reason: format!("mass grew by {:.3}%", 100.0 * (mass / mass0 - 1.0)),
            });
        }
        last_good = time;
        if s % every == 0 || s == steps {
            let field = RealField::new(&grid, grid.ifft_real(&v)).map_err(|_| EvolutionError::Divergence {
                time,
                last_good_time: t_prev,
                reason: "non-finite sample".into(),
            })?;
            state = SolverState {
                field,
                time,
                step_count: s,
            };
            if let Some(obs) = observer.as_mut() {
                obs(&state);
            }
            snapshots.push((time, state.field.clone()));
        }
    }
    Trajectory::new(
        snapshots,
        TrajectoryMeta {
            integrator: opts.scheme.name().to_string(),
            dt,
            dealiased: true,
            n_points: grid.n(),
            length: grid.length(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_plan_hits_end_time() {
        let (s, dt) = step_plan(1e-3, 5.0).unwrap();
        assert_eq!(s, 5000);
        assert!((dt - 1e-3).abs() < 1e-15);
        let (s, dt) = step_plan(0.3, 1.0).unwrap();
        assert_eq!(s, 4);
        assert!((dt - 0.25).abs() < 1e-15);
        assert!(step_plan(0.0, 1.0).is_err());
        assert!(step_plan(0.1, -1.0).is_err());
    }

    #[test]
    fn zero_data_stays_zero() {
        let g = Grid::new(64, 20.0).unwrap();
        let traj = evolve(&RealField::zeros(&g), &EvolveOptions::new(0.01, 0.1), None).unwrap();
        assert!(traj.last().1.peak() == 0.0);
        assert_eq!(traj.snapshots().len(), 11);
    }

    #[test]
    fn trajectory_rejects_unsorted_times() {
        let g = Grid::new(8, 1.0).unwrap();
        let f = RealField::zeros(&g);
        let meta = TrajectoryMeta {
            integrator: "if-rk4".into(),
            dt: 0.1,
            dealiased: true,
            n_points: 8,
            length: 1.0,
        };
        assert!(Trajectory::new(vec![(1.0, f.clone()), (0.5, f)], meta).is_err());
    }

    #[test]
    fn interpolation_is_linear_in_time() {
        let g = Grid::new(8, 1.0).unwrap();
        let a = RealField::new(&g, vec![0.0; 8]).unwrap();
        let b = RealField::new(&g, vec![2.0; 8]).unwrap();
        let meta = TrajectoryMeta {
            integrator: "if-rk4".into(),
            dt: 1.0,
            dealiased: true,
            n_points: 8,
            length: 1.0,
        };
        let tr = Trajectory::new(vec![(0.0, a), (1.0, b)], meta).unwrap();
        assert_eq!(tr.interpolate(0.25).unwrap()[3], 0.5);
        assert!(matches!(tr.interpolate(1.5), Err(EvolutionError::OutOfRange { .. })));
    }
}
