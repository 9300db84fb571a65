//! Grids and initial data built from a configuration.

use std::sync::Arc;

use bo_evolution::{gaussian, normalize_data, random_band_limited, random_localized, soliton};
use bo_spectral::{Grid, Guards, RealField, Snapshot};

use crate::config::{GridConfig, InitialData, Profile};
use crate::error::RunError;

/// The configured grid with its localization tolerance.
pub fn build_grid(g: &GridConfig) -> Result<Arc<Grid>, RunError> {
    let guards = Guards {
        boundary_tol: g.boundary_tol,
        ..Guards::default()
    };
    Ok(Grid::with_guards(g.n_points, g.length, guards)?)
}

fn profile(grid: &Arc<Grid>, p: &Profile, shape: impl Fn(f64) -> f64) -> Result<RealField, RunError> {
    let w2 = p.width * p.width;
    let f = RealField::from_fn(grid, |x| {
        let y = x - p.center;
        shape(y) * (-(y * y) / w2).exp()
    })?;
    Ok(match p.eps {
        Some(eps) => normalize_data(&f, eps)?,
        None => f.scale(p.amplitude),
    })
}

/// Samples the initial data; `seed` drives the random kinds.
pub fn build_initial(data: &InitialData, grid: &Arc<Grid>, seed: u64) -> Result<RealField, RunError> {
    match data {
        InitialData::Soliton { c, x0 } => Ok(soliton(*c, *x0, grid)?),
        InitialData::Gaussian(p) => match p.eps {
            Some(_) => profile(grid, p, |_| 1.0),
            None => Ok(gaussian(p.amplitude, p.width, p.center, grid)?),
        },
        InitialData::OddGaussian(p) => profile(grid, p, |y| y),
        // `signum` is +1 at the center point itself.
        InitialData::SignedGaussian(p) => profile(grid, p, f64::signum),
        InitialData::RandomLocalized { eps } => Ok(random_localized(seed, *eps, grid)?),
        InitialData::BandLimited { k, amplitude } => Ok(random_band_limited(seed, *k, *amplitude, grid)?),
        InitialData::File { path } => {
            let file = std::fs::File::open(path).map_err(|e| RunError::io(path.as_ref(), e))?;
            let snap = Snapshot::read_from(std::io::BufReader::new(file))?;
            if snap.n as usize != grid.n() || snap.length != grid.length() {
                return Err(RunError::Data(format!(
                    "{path}: snapshot grid (n = {}, L = {}) differs from the configured grid (n = {}, L = {})",
                    snap.n,
                    snap.length,
                    grid.n(),
                    grid.length()
                )));
            }
            Ok(snap.to_real(grid)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bo_evolution::data_norm;

    fn grid() -> Arc<Grid> {
        Grid::new(1024, 64.0).unwrap()
    }

    fn p(eps: Option<f64>) -> Profile {
        Profile {
            amplitude: 2.0,
            width: 1.5,
            center: 0.5,
            eps,
        }
    }

    #[test]
    fn profiles_match_their_formulas() {
        let g = grid();
        let f = build_initial(&InitialData::OddGaussian(p(None)), &g, 0).unwrap();
        for (x, v) in g.x().iter().zip(f.samples()) {
            let y = x - 0.5;
            assert!((v - 2.0 * y * (-(y * y) / 2.25).exp()).abs() < 1e-15);
        }
        let s = build_initial(&InitialData::SignedGaussian(p(None)), &g, 0).unwrap();
        let gs = build_initial(&InitialData::Gaussian(p(None)), &g, 0).unwrap();
        for ((x, a), b) in g.x().iter().zip(s.samples()).zip(gs.samples()) {
            assert!((a.abs() - b.abs()).abs() <= 1e-12 * b.abs());
            assert_eq!(*a >= 0.0, *x >= 0.5);
        }
    }

    #[test]
    fn eps_normalization_overrides_amplitude() {
        let g = grid();
        for d in [InitialData::Gaussian(p(Some(0.1))), InitialData::OddGaussian(p(Some(0.1)))] {
            let f = build_initial(&d, &g, 0).unwrap();
            assert!((data_norm(&f).unwrap() - 0.1).abs() < 1e-14);
        }
    }

    #[test]
    fn random_kinds_follow_the_seed() {
        let g = grid();
        let d = InitialData::RandomLocalized { eps: 0.1 };
        let a = build_initial(&d, &g, 3).unwrap();
        assert_eq!(a.samples(), build_initial(&d, &g, 3).unwrap().samples());
        assert_ne!(a.samples(), build_initial(&d, &g, 4).unwrap().samples());
    }

    #[test]
    fn snapshot_files_round_trip_and_must_match_the_grid() {
        let g = grid();
        let f = build_initial(&InitialData::Gaussian(p(None)), &g, 0).unwrap();
        let dir = std::env::temp_dir().join(format!("bo-lab-data-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.bof1");
        std::fs::write(&path, Snapshot::from_real(&f, 0.0).to_bytes().unwrap()).unwrap();
        let d = InitialData::File {
            path: path.display().to_string(),
        };
        assert_eq!(build_initial(&d, &g, 0).unwrap().samples(), f.samples());
        let other = Grid::new(512, 64.0).unwrap();
        assert!(matches!(build_initial(&d, &other, 0), Err(RunError::Data(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
