//! Precomputed symbols and the low-level spectral/physical helpers shared by
//! all evaluators.
//!
//! Arrays named `*_h` are spectra in FFT order; everything else is physical.
//! Every binary product is de-aliased (2/3 rule) before it is used further.

use std::sync::Arc;

use bo_spectral::ops::{
    dealias_in_place, derivative_symbol, hilbert_symbol, inverse_derivative_symbol, MeanMode,
};
use bo_spectral::projection::{band_symbol, low_symbol};
use bo_spectral::{Complex64, Grid, RealField, SpectralError};

use crate::error::Result;

pub(crate) type C = Complex64;

pub(crate) const I: C = C { re: 0.0, im: 1.0 };

/// Symbols of one dyadic index on one grid.
pub(crate) struct Ctx {
    pub g: Arc<Grid>,
    /// `−i sgn ξ`.
    pub hs: Vec<C>,
    /// `iξ`.
    pub dx: Vec<C>,
    /// `(iξ)²`.
    pub dx2: Vec<C>,
    /// `(iξ)^{-1}`, zero mode excised.
    pub inv: Vec<C>,
    /// Linear symbol `Λ = −iξ|ξ|` of `∂ₜ = −H∂²ₓ`.
    pub lam: Vec<C>,
    /// `P_k⁺`.
    pub pkp: Vec<C>,
    /// `P_{<k}`.
    pub plt: Vec<C>,
}

impl Ctx {
    pub fn new(g: &Arc<Grid>, k: i64) -> Self {
        let n = g.n();
        let mut hs = Vec::with_capacity(n);
        let mut dx = Vec::with_capacity(n);
        let mut dx2 = Vec::with_capacity(n);
        let mut inv = Vec::with_capacity(n);
        let mut lam = Vec::with_capacity(n);
        let mut pkp = Vec::with_capacity(n);
        let mut plt = Vec::with_capacity(n);
        for (j, &xi) in g.xi().iter().enumerate() {
            let h = hilbert_symbol(g, j, xi);
            let d2 = derivative_symbol(g, j, xi, 2);
            hs.push(h);
            dx.push(derivative_symbol(g, j, xi, 1));
            dx2.push(d2);
            inv.push(inverse_derivative_symbol(g, j, xi));
            lam.push(-h * d2);
            let pos = if xi > 0.0 { 1.0 } else { 0.0 };
            pkp.push(C::new(band_symbol(k, xi) * pos, 0.0));
            plt.push(C::new(low_symbol(k - 1, xi), 0.0));
        }
        Ctx {
            g: g.clone(),
            hs,
            dx,
            dx2,
            inv,
            lam,
            pkp,
            plt,
        }
    }

    /// Spectrum times the product of the given symbols.
    pub fn sym(&self, h: &[C], syms: &[&[C]]) -> Vec<C> {
        h.iter()
            .enumerate()
            .map(|(j, v)| syms.iter().fold(*v, |acc, s| acc * s[j]))
            .collect()
    }

    /// Physical samples of a spectrum.
    pub fn phys(&self, h: &[C]) -> Vec<C> {
        self.g.ifft(h)
    }

    /// `phys(h · Πsyms)`.
    pub fn phys_sym(&self, h: &[C], syms: &[&[C]]) -> Vec<C> {
        self.phys(&self.sym(h, syms))
    }

    /// De-aliased spectrum of a physical field.
    pub fn spec(&self, p: &[C]) -> Vec<C> {
        let mut h = self.g.fft(p);
        dealias_in_place(&self.g, &mut h);
        h
    }

    /// De-aliased spectrum of a pointwise product.
    pub fn spec_mul(&self, a: &[C], b: &[C]) -> Vec<C> {
        self.spec(&mul(a, b))
    }

    /// De-aliased pointwise product, returned in physical space.
    pub fn dmul(&self, a: &[C], b: &[C]) -> Vec<C> {
        self.phys(&self.spec_mul(a, b))
    }
}

pub(crate) fn mul(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// `Σ cᵢ·vᵢ` for equally long vectors.
pub(crate) fn lin(terms: &[(C, &[C])]) -> Vec<C> {
    let n = terms[0].1.len();
    (0..n).map(|j| terms.iter().map(|(c, v)| c * v[j]).sum()).collect()
}

pub(crate) fn re(c: f64) -> C {
    C::new(c, 0.0)
}

pub(crate) fn norm(v: &[C]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Relative residual `‖a − b‖/‖b‖`, with `0/0 = 0`.
pub(crate) fn relative(a: &[C], b: &[C]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let s = norm(b);
    if s == 0.0 {
        if d == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        d / s
    }
}

/// Applies the mean policy: strict mode rejects a mean above the grid's
/// `mean_tol`, drop mode subtracts it.
pub(crate) fn prepare(phi: &RealField, mode: MeanMode) -> Result<RealField> {
    let mean = phi.mean();
    let tol = phi.grid().guards().mean_tol;
    match mode {
        MeanMode::Strict if mean.abs() > tol => Err(SpectralError::NonZeroMean { mean, tol }.into()),
        MeanMode::Strict => Ok(phi.clone()),
        MeanMode::Drop => Ok(RealField::new(phi.grid(), phi.samples().iter().map(|v| v - mean).collect())?),
    }
}

pub(crate) fn to_complex(v: &[f64]) -> Vec<C> {
    v.iter().map(|&x| C::new(x, 0.0)).collect()
}
