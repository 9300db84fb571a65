//! The quadratic normal-form corrections `B_k`, `B_0`, the linearized
//! correction `B_k^lin`, and the commutator `[P_k, f]g`.
//!
//! With `a = ∂ₓ⁻¹P_{<k}u` the symmetric-bilinear building block is
//!
//! ```text
//! b_k(u, v) = −½ HP_k⁺v · ∂ₓ⁻¹P_{<k}u + ¼ P_k⁺(Hv · ∂ₓ⁻¹u) + ¼ P_k⁺H(v · ∂ₓ⁻¹u)
//! ```
//!
//! and `B_k(φ) = b_k(φ, φ)`. Adding one constant to every `∂ₓ⁻¹` leaves
//! `b_k` unchanged, so the zero-mode-excised inverse is a valid convention.

use std::sync::Arc;

use bo_spectral::ops::MeanMode;
use bo_spectral::projection::{band_symbol, low_symbol};
use bo_spectral::{ComplexField, Grid, RealField};

use crate::context::{lin, mul, prepare, re, to_complex, Ctx, C};
use crate::error::{NormalFormError, Result};

pub(crate) fn check_k(k: i64, min: i64) -> Result<()> {
    if k < min {
        Err(NormalFormError::BadIndex { k, min })
    } else {
        Ok(())
    }
}

/// Terms of `b_k` that pass through the outer projection `P_k⁺`, as a
/// spectrum: `¼P_k⁺(Hv·∂⁻¹u) + ¼P_k⁺H(v·∂⁻¹u)` with `∂⁻¹u` offset by `c`.
pub(crate) fn projected_terms(cx: &Ctx, uh: &[C], vh: &[C], c: f64) -> Vec<C> {
    let diu: Vec<C> = cx.phys_sym(uh, &[&cx.inv]).into_iter().map(|z| z + c).collect();
    let hv = cx.phys_sym(vh, &[&cx.hs]);
    let v = cx.phys(vh);
    let s1 = cx.spec_mul(&hv, &diu);
    let s2 = cx.spec_mul(&v, &diu);
    (0..uh.len())
        .map(|j| 0.25 * cx.pkp[j] * (s1[j] + s2[j] * cx.hs[j]))
        .collect()
}

/// The paraproduct term `−½ HP_k⁺v · (∂⁻¹P_{<k}u + c)`, physical.
pub(crate) fn para_term(cx: &Ctx, uh: &[C], vh: &[C], c: f64) -> Vec<C> {
    let f = cx.phys_sym(vh, &[&cx.pkp, &cx.hs]);
    let a: Vec<C> = cx.phys_sym(uh, &[&cx.plt, &cx.inv]).into_iter().map(|z| z + c).collect();
    f.iter().zip(&a).map(|(x, y)| -0.5 * x * y).collect()
}

/// `b_k(u, v)` from spectra, physical output.
pub(crate) fn bex(cx: &Ctx, uh: &[C], vh: &[C], c: f64) -> Vec<C> {
    let p = para_term(cx, uh, vh, c);
    let q = cx.phys(&projected_terms(cx, uh, vh, c));
    p.iter().zip(&q).map(|(x, y)| x + y).collect()
}

fn spectrum(cx: &Ctx, phi: &RealField) -> Vec<C> {
    cx.g.fft_real(phi.samples())
}

fn field(g: &Arc<Grid>, v: Vec<C>) -> Result<ComplexField> {
    Ok(ComplexField::new(g, v)?)
}

/// `B_k(φ, φ)` for `k ≥ 1`.
pub fn bilinear_bk(phi: &RealField, k: i64, mode: MeanMode) -> Result<ComplexField> {
    bilinear_bk_offset(phi, k, 0.0, mode)
}

/// `B_k(φ, φ)` with every inverse derivative shifted by the constant `c`;
/// the result does not depend on `c`.
pub fn bilinear_bk_offset(phi: &RealField, k: i64, c: f64, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 1)?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let ph = spectrum(&cx, &phi);
    field(phi.grid(), bex(&cx, &ph, &ph, c))
}

/// The commutator rewrite
/// `½[P_k⁺H, a]φ + ¼P_k⁺(Hφ·∂⁻¹φ_{≥k}) + ¼P_k⁺H(φ·∂⁻¹φ_{≥k})`,
/// `a = ∂⁻¹φ_{<k}`, with the commutator evaluated as `P_k⁺H(aφ) − a·P_k⁺Hφ`.
///
/// It differs from [`bilinear_bk`] by exactly `−¼P_k⁺([H, a]φ)`.
pub fn bilinear_bk_commutator(phi: &RealField, k: i64, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 1)?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let ph = spectrum(&cx, &phi);
    let a = cx.phys_sym(&ph, &[&cx.plt, &cx.inv]);
    let p = to_complex(phi.samples());
    let aphi = cx.spec_mul(&a, &p);
    let outer = cx.phys_sym(&aphi, &[&cx.pkp, &cx.hs]);
    let inner = mul(&a, &cx.phys_sym(&ph, &[&cx.pkp, &cx.hs]));
    let high: Vec<C> = ph.iter().zip(&cx.plt).map(|(v, l)| v * (1.0 - l)).collect();
    let tail = cx.phys(&projected_terms(&cx, &high, &ph, 0.0));
    field(
        phi.grid(),
        lin(&[(re(0.5), &outer), (re(-0.5), &inner), (re(1.0), &tail)]),
    )
}

/// Pieces of the `k = 0` correction on one grid.
pub(crate) struct ZeroCtx {
    pub cx: Ctx,
    /// `P_0⁺`.
    pub p0p: Vec<C>,
    /// `P_0`.
    pub p0: Vec<C>,
    /// `P_{≥1} = 1 − P_{≤0}`.
    pub ge1: Vec<C>,
}

impl ZeroCtx {
    pub fn new(g: &Arc<Grid>) -> Self {
        let cx = Ctx::new(g, 0);
        let mut p0p = Vec::with_capacity(g.n());
        let mut p0 = Vec::with_capacity(g.n());
        let mut ge1 = Vec::with_capacity(g.n());
        for &xi in g.xi() {
            let b = band_symbol(0, xi);
            p0.push(re(b));
            p0p.push(re(if xi > 0.0 { b } else { 0.0 }));
            ge1.push(re(1.0 - low_symbol(0, xi)));
        }
        ZeroCtx { cx, p0p, p0, ge1 }
    }

    /// `b_0(u, v) = ¼P_0⁺(Hv·∂⁻¹u_{≥1}) + ¼P_0⁺H(v·∂⁻¹u_{≥1})`, physical.
    pub fn b0(&self, uh: &[C], vh: &[C]) -> Vec<C> {
        let cx = &self.cx;
        let diu = cx.phys_sym(uh, &[&self.ge1, &cx.inv]);
        let hv = cx.phys_sym(vh, &[&cx.hs]);
        let v = cx.phys(vh);
        let s1 = cx.spec_mul(&hv, &diu);
        let s2 = cx.spec_mul(&v, &diu);
        let h: Vec<C> = (0..uh.len())
            .map(|j| 0.25 * self.p0p[j] * (s1[j] + s2[j] * cx.hs[j]))
            .collect();
        cx.phys(&h)
    }
}

/// `B_0(φ, φ) = ¼P_0⁺(Hφ·∂⁻¹φ_{≥1}) + ¼P_0⁺H(φ·∂⁻¹φ_{≥1})`.
pub fn bilinear_b0(phi: &RealField, mode: MeanMode) -> Result<ComplexField> {
    let phi = prepare(phi, mode)?;
    let z = ZeroCtx::new(phi.grid());
    let ph = spectrum(&z.cx, &phi);
    field(phi.grid(), z.b0(&ph, &ph))
}

/// `B_k^lin(φ, v) = b_k(v, φ) + b_k(φ, v) + ½HP_k⁺φ·∂⁻¹v_{(0,k)}` with
/// `v_{(0,k)} = (P_{<k} − P_{≤0})v`.
pub fn linearized_bk(phi: &RealField, v: &RealField, k: i64, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 1)?;
    phi.grid().check_same(v.grid())?;
    let phi = prepare(phi, mode)?;
    let v = prepare(v, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let ph = spectrum(&cx, &phi);
    let vh = spectrum(&cx, &v);
    let band: Vec<C> = phi
        .grid()
        .xi()
        .iter()
        .zip(&cx.plt)
        .map(|(&xi, l)| l - low_symbol(0, xi))
        .collect();
    let corr = mul(
        &cx.phys_sym(&ph, &[&cx.pkp, &cx.hs]),
        &cx.phys_sym(&vh, &[&band, &cx.inv]),
    );
    let s = lin(&[
        (re(1.0), &bex(&cx, &vh, &ph, 0.0)),
        (re(1.0), &bex(&cx, &ph, &vh, 0.0)),
        (re(0.5), &corr),
    ]);
    field(phi.grid(), s)
}

/// `[P_k, f]g = P_k(fg) − f·P_kg` and the ratio
/// `‖[P_k, f]g‖₂ / (2^{−k}‖∂ₓf‖_∞‖g‖₂)` (0 when the denominator vanishes).
pub fn commutator_leibnitz(f: &RealField, g: &RealField, k: i64) -> Result<(RealField, f64)> {
    f.grid().check_same(g.grid())?;
    let grid = f.grid();
    let pk: Vec<C> = grid.xi().iter().map(|&xi| re(band_symbol(k, xi))).collect();
    let fg = f.mul_dealiased(g)?;
    let proj = |h: &RealField| -> Vec<f64> {
        let s: Vec<C> = grid.fft_real(h.samples()).iter().zip(&pk).map(|(a, b)| a * b).collect();
        grid.ifft_real(&s)
    };
    let p_fg = proj(&fg);
    let p_g = RealField::new(grid, proj(g))?;
    let f_pg = f.mul_dealiased(&p_g)?;
    let comm = RealField::new(
        grid,
        p_fg.iter().zip(f_pg.samples()).map(|(a, b)| a - b).collect(),
    )?;
    let fx = bo_spectral::derivative(f, 1);
    let denom = 2f64.powi(-(k as i32)) * fx.peak() * g.l2_norm();
    let ratio = if denom == 0.0 { 0.0 } else { comm.l2_norm() / denom };
    Ok((comm, ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn bump(g: &Arc<Grid>, a: f64) -> RealField {
        RealField::from_fn(g, |x| a * (-x * x).exp() * (1.0 - 2.0 * x * x + 0.5 * x)).unwrap()
    }

    #[test]
    fn zero_field_gives_zero() {
        let g = Grid::new(256, 8.0 * PI).unwrap();
        let z = RealField::zeros(&g);
        assert_eq!(bilinear_bk(&z, 3, MeanMode::Strict).unwrap().l2_norm(), 0.0);
        assert_eq!(bilinear_b0(&z, MeanMode::Strict).unwrap().l2_norm(), 0.0);
    }

    #[test]
    fn index_and_mean_preconditions() {
        let g = Grid::new(256, 8.0 * PI).unwrap();
        let f = RealField::from_fn(&g, |x| (-x * x).exp()).unwrap();
        assert!(matches!(
            bilinear_bk(&f, 0, MeanMode::Drop),
            Err(NormalFormError::BadIndex { k: 0, min: 1 })
        ));
        assert!(matches!(
            bilinear_bk(&f, 2, MeanMode::Strict),
            Err(NormalFormError::Spectral(_))
        ));
        assert!(bilinear_bk(&f, 2, MeanMode::Drop).is_ok());
    }

    #[test]
    fn offset_does_not_matter() {
        let g = Grid::new(512, 16.0 * PI).unwrap();
        let f = bump(&g, 0.1);
        let f = RealField::new(&g, f.samples().iter().map(|v| v - f.mean()).collect()).unwrap();
        let b = bilinear_bk(&f, 3, MeanMode::Strict).unwrap();
        for c in [0.7, -3.0] {
            let bc = bilinear_bk_offset(&f, 3, c, MeanMode::Strict).unwrap();
            assert!(bc.sub(&b).unwrap().l2_norm() <= 1e-12 * b.l2_norm().max(1e-300) + 1e-16);
        }
    }

    #[test]
    fn constant_f_commutes() {
        let g = Grid::new(256, 8.0 * PI).unwrap();
        let f = RealField::from_fn(&g, |_| 2.5).unwrap();
        let h = bump(&g, 1.0);
        let (c, _) = commutator_leibnitz(&f, &h, 2).unwrap();
        assert!(c.peak() < 1e-13);
    }
}
