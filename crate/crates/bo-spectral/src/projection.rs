//! Riesz and Littlewood–Paley projections.
//!
//! The dyadic bump `ψ` is part of the contract: it is even, equals 1 on
//! `[−1, 1]`, vanishes outside `[−2, 2]`, and on `1 < |t| < 2` it is the
//! smoothstep `S(2 − |t|)` with `S(s) = f(s)/(f(s) + f(1 − s))`,
//! `f(s) = e^{−1/s}` for `s > 0` and `0` otherwise. Every other projector is
//! built from it:
//!
//! * `P_{≤k}` has symbol `ψ(ξ/2^k)` and `P_{≤−1} = 0`;
//! * `P_k = P_{≤k} − P_{≤k−1}` (so `P_0 = P_{≤0}`);
//! * `P_{<k} = P_{≤k−1}` and `P_{≥k} = I − P_{<k}`;
//! * `P₊`, `P₋` are the indicators of `ξ > 0`, `ξ < 0`;
//! * `P_k⁺ = P_k P₊` and `P_{<k}⁺ = P_{<k} P₊`;
//! * `P̃_k` equals 1 on the support of `P_k` and decays to 0 through the same
//!   smoothstep over a margin `2^{k−4}` on each side.

use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::field::{ComplexField, RealField, SpectralField};

/// Smoothstep `S(s)` rising from 0 at `s ≤ 0` to 1 at `s ≥ 1`.
pub fn smoothstep(s: f64) -> f64 {
    fn f(s: f64) -> f64 {
        if s > 0.0 {
            (-1.0 / s).exp()
        } else {
            0.0
        }
    }
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        let a = f(s);
        a / (a + f(1.0 - s))
    }
}

/// The dyadic bump `ψ(t)`.
pub fn bump(t: f64) -> f64 {
    let a = t.abs();
    if a <= 1.0 {
        1.0
    } else if a >= 2.0 {
        0.0
    } else {
        smoothstep(2.0 - a)
    }
}

/// Symbol of `P_{≤k}`; `k < 0` gives the zero operator.
pub fn low_symbol(k: i64, xi: f64) -> f64 {
    if k < 0 {
        0.0
    } else {
        bump(xi / (2.0_f64).powi(k as i32))
    }
}

/// Symbol of `P_k`.
pub fn band_symbol(k: i64, xi: f64) -> f64 {
    low_symbol(k, xi) - low_symbol(k - 1, xi)
}

/// Symbol of the enlarged projector `P̃_k`.
pub fn enlarged_symbol(k: i64, xi: f64) -> f64 {
    let a = xi.abs();
    let margin = (2.0_f64).powi(k as i32 - 4);
    let upper = (2.0_f64).powi(k as i32 + 1);
    let down = smoothstep((upper + margin - a) / margin);
    if k == 0 {
        return down;
    }
    let lower = (2.0_f64).powi(k as i32 - 1);
    let up = smoothstep((a - (lower - margin)) / margin);
    up * down
}

/// The selectors accepted by [`project`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projector {
    /// `P₊`: positive frequencies.
    Plus,
    /// `P₋`: negative frequencies.
    Minus,
    /// `P_k`.
    Band(i64),
    /// `P_{≤k}`.
    AtMost(i64),
    /// `P_{<k}`.
    Below(i64),
    /// `P_{≥k}`.
    AtLeast(i64),
    /// `P̃_k`.
    Enlarged(i64),
    /// `P_k⁺`.
    BandPlus(i64),
    /// `P_{<k}⁺`.
    BelowPlus(i64),
}

impl Projector {
    fn index(&self) -> Option<i64> {
        match *self {
            Projector::Plus | Projector::Minus => None,
            Projector::Band(k)
            | Projector::AtMost(k)
            | Projector::Below(k)
            | Projector::AtLeast(k)
            | Projector::Enlarged(k)
            | Projector::BandPlus(k)
            | Projector::BelowPlus(k) => Some(k),
        }
    }

    /// Rejects negative dyadic indices.
    pub fn validate(&self) -> Result<()> {
        match self.index() {
            Some(k) if k < 0 => Err(SpectralError::NegativeIndex(k)),
            _ => Ok(()),
        }
    }

    /// Whether the projector maps real fields to real fields.
    pub fn keeps_real(&self) -> bool {
        !matches!(
            self,
            Projector::Plus | Projector::Minus | Projector::BandPlus(_) | Projector::BelowPlus(_)
        )
    }

    /// The (real) symbol at wavenumber `ξ`.
    pub fn symbol(&self, xi: f64) -> f64 {
        let pos = if xi > 0.0 { 1.0 } else { 0.0 };
        match *self {
            Projector::Plus => pos,
            Projector::Minus => {
                if xi < 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Projector::Band(k) => band_symbol(k, xi),
            Projector::AtMost(k) => low_symbol(k, xi),
            Projector::Below(k) => low_symbol(k - 1, xi),
            Projector::AtLeast(k) => 1.0 - low_symbol(k - 1, xi),
            Projector::Enlarged(k) => enlarged_symbol(k, xi),
            Projector::BandPlus(k) => band_symbol(k, xi) * pos,
            Projector::BelowPlus(k) => low_symbol(k - 1, xi) * pos,
        }
    }

    /// Symbol values on every wavenumber of a grid (FFT order).
    pub fn symbol_vec(&self, grid: &crate::grid::Grid) -> Vec<f64> {
        grid.xi().iter().map(|&xi| self.symbol(xi)).collect()
    }
}

/// Applies a projector to a spectrum.
pub fn project_spectral(f: &SpectralField, p: Projector) -> Result<SpectralField> {
    p.validate()?;
    Ok(f.apply(p.keeps_real(), |_, xi| Complex64::new(p.symbol(xi), 0.0)))
}

/// Applies a projector to a real field; the result is complex in general.
pub fn project(f: &RealField, p: Projector) -> Result<ComplexField> {
    Ok(project_spectral(&f.dft(), p)?.idft())
}

/// Applies a real-preserving projector to a real field.
pub fn project_real(f: &RealField, p: Projector) -> Result<RealField> {
    project_spectral(&f.dft(), p)?.to_real()
}
