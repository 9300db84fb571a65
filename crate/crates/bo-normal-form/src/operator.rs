//! The paradifferential operator
//!
//! ```text
//! A_BO = i∂ₜ + ∂²ₓ − iφ_{<k}∂ₓ − ½(H + i)∂ₓφ_{<k}
//! ```
//!
//! applied to the dyadic variables of a snapshot, the explicit cubic term
//! `Q³_k`, the gauge `e^{−iΦ_{<k}}`, and the residuals of the exact
//! identities
//!
//! ```text
//! A_BO φ̃_k⁺ = Q³_k,    (i∂ₜ + ∂²ₓ)ψ_k⁺ = (Q̃³_k + Q̃⁴_k)e^{−iΦ_{<k}}.
//! ```
//!
//! Every time derivative is obtained by substituting the equation
//! `∂ₜφ = −H∂²ₓφ + ½∂ₓ(φ²)` (no finite differences in time); the
//! substitution is propagated through `P_k⁺`, through `B_k` (bilinear in
//! `(∂ₜφ, φ)`) and through the gauge.

use bo_spectral::ops::{primitive_phi, MeanMode};
use bo_spectral::{ComplexField, RealField};

use crate::bilinear::{bex, check_k, projected_terms, ZeroCtx};
use crate::context::{lin, mul, norm, prepare, re, relative, to_complex, Ctx, C, I};
use crate::error::{NormalFormError, Result};

/// Which dyadic quantity of `φ` a [`DyadicVariable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableKind {
    /// `φ_k⁺ = P_k⁺φ`.
    Plain,
    /// `φ̃_k⁺ = φ_k⁺ + B_k(φ, φ)` (`B_0` for `k = 0`).
    Corrected,
    /// `ψ_k⁺ = φ̃_k⁺ · e^{−iΦ_{<k}}`.
    Gauged,
}

impl VariableKind {
    fn name(self) -> &'static str {
        match self {
            VariableKind::Plain => "plain",
            VariableKind::Corrected => "corrected",
            VariableKind::Gauged => "gauged",
        }
    }
}

/// A dyadic variable built from one snapshot `φ`.
#[derive(Debug, Clone)]
pub struct DyadicVariable {
    /// Dyadic index.
    pub k: i64,
    /// Which variable.
    pub kind: VariableKind,
    /// Its samples.
    pub base: ComplexField,
}

impl DyadicVariable {
    /// Builds the requested variable of `φ` at index `k ≥ 0`.
    pub fn new(phi: &RealField, k: i64, kind: VariableKind, mode: MeanMode) -> Result<Self> {
        check_k(k, 0)?;
        let phi = prepare(phi, mode)?;
        let base = if k == 0 {
            let z = ZeroCtx::new(phi.grid());
            let ph = z.cx.g.fft_real(phi.samples());
            let plain = z.cx.phys_sym(&ph, &[&z.p0p]);
            match kind {
                // P_{<0} = 0: the gauge is trivial.
                VariableKind::Plain => plain,
                _ => lin(&[(re(1.0), &plain), (re(1.0), &z.b0(&ph, &ph))]),
            }
        } else {
            let cx = Ctx::new(phi.grid(), k);
            let ph = cx.g.fft_real(phi.samples());
            let plain = cx.phys_sym(&ph, &[&cx.pkp]);
            match kind {
                VariableKind::Plain => plain,
                VariableKind::Corrected => lin(&[(re(1.0), &plain), (re(1.0), &bex(&cx, &ph, &ph, 0.0))]),
                VariableKind::Gauged => {
                    let u = lin(&[(re(1.0), &plain), (re(1.0), &bex(&cx, &ph, &ph, 0.0))]);
                    mul(&u, &gauge_samples(&cx, &phi)?)
                }
            }
        };
        Ok(DyadicVariable {
            k,
            kind,
            base: ComplexField::new(phi.grid(), base)?,
        })
    }
}

/// Which flow supplies `∂ₜφ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    /// `∂ₜφ = −H∂²ₓφ + ½∂ₓ(φ²)`.
    Nonlinear,
    /// `∂ₜφ = −H∂²ₓφ`.
    Linear,
}

/// Options of [`apply_abo`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AboOptions {
    /// Flow used for time derivatives.
    pub flow: Flow,
    /// Include the paradifferential terms `−iφ_{<k}∂ₓ − ½(H + i)∂ₓφ_{<k}`
    /// (switching them off replaces `φ_{<k}` by 0).
    pub paradifferential: bool,
}

impl Default for AboOptions {
    fn default() -> Self {
        AboOptions {
            flow: Flow::Nonlinear,
            paradifferential: true,
        }
    }
}

/// Spatial derivatives and `i∂ₜ + ∂²ₓ` of one variable.
struct Parts {
    ph: Vec<C>,
    /// Spectrum of `∂ₜφ + H∂²ₓφ` (zero for the linear flow).
    nh: Vec<C>,
    pk: Vec<C>,
    /// `B_k` (zero for the plain variable).
    b: Vec<C>,
    bx: Vec<C>,
    u: Vec<C>,
    ux: Vec<C>,
    /// `(i∂ₜ + ∂²ₓ)u`.
    schr: Vec<C>,
}

fn nonlinear_spectrum(cx: &Ctx, phi: &RealField) -> Vec<C> {
    let p = to_complex(phi.samples());
    let sq = cx.spec_mul(&p, &p);
    sq.iter().zip(&cx.dx).map(|(s, d)| 0.5 * s * d).collect()
}

fn parts(cx: &Ctx, phi: &RealField, corrected: bool, flow: Flow) -> Parts {
    let n = cx.g.n();
    let ph = cx.g.fft_real(phi.samples());
    let nh = match flow {
        Flow::Nonlinear => nonlinear_spectrum(cx, phi),
        Flow::Linear => vec![C::new(0.0, 0.0); n],
    };
    let pk = cx.phys_sym(&ph, &[&cx.pkp]);
    let pkx = cx.phys_sym(&ph, &[&cx.pkp, &cx.dx]);
    // (iΛ + ∂²)P_k⁺ vanishes identically on ξ > 0; keep the combined symbol so
    // that the cancellation is exact.
    let comb: Vec<C> = (0..n).map(|j| I * cx.lam[j] + cx.dx2[j]).collect();
    let lin_part = cx.phys(
        &(0..n)
            .map(|j| comb[j] * cx.pkp[j] * ph[j] + I * cx.pkp[j] * nh[j])
            .collect::<Vec<_>>(),
    );
    let zero = vec![C::new(0.0, 0.0); n];
    if !corrected {
        return Parts {
            ph,
            nh,
            u: pk.clone(),
            ux: pkx,
            pk,
            b: zero.clone(),
            bx: zero,
            schr: lin_part,
        };
    }
    // B = f·a + phys(Bproj) with f = −½HP_k⁺φ, a = ∂⁻¹P_{<k}φ.
    let fh = cx.sym(&ph, &[&cx.pkp, &cx.hs]);
    let fh: Vec<C> = fh.iter().map(|z| -0.5 * z).collect();
    let ah = cx.sym(&ph, &[&cx.plt, &cx.inv]);
    let d = |h: &[C], j: usize| -> Vec<C> {
        match j {
            0 => cx.phys(h),
            1 => cx.phys_sym(h, &[&cx.dx]),
            _ => cx.phys_sym(h, &[&cx.dx2]),
        }
    };
    let (f0, f1, f2) = (d(&fh, 0), d(&fh, 1), d(&fh, 2));
    let (a0, a1, a2) = (d(&ah, 0), d(&ah, 1), d(&ah, 2));
    let bproj = projected_terms(cx, &ph, &ph, 0.0);
    let b: Vec<C> = (0..n).map(|j| f0[j] * a0[j]).zip(d(&bproj, 0)).map(|(x, y)| x + y).collect();
    let bx: Vec<C> = (0..n)
        .map(|j| f1[j] * a0[j] + f0[j] * a1[j])
        .zip(d(&bproj, 1))
        .map(|(x, y)| x + y)
        .collect();
    let bxx: Vec<C> = (0..n)
        .map(|j| f2[j] * a0[j] + 2.0 * f1[j] * a1[j] + f0[j] * a2[j])
        .zip(d(&bproj, 2))
        .map(|(x, y)| x + y)
        .collect();
    // ∂ₜB = b(∂ₜφ, φ) + b(φ, ∂ₜφ) with ∂ₜφ̂ = Λφ̂ + N̂.
    let mut bt = zero;
    let lam_ph: Vec<C> = (0..n).map(|j| cx.lam[j] * ph[j]).collect();
    for sh in [&lam_ph, &nh] {
        for (x, y) in [(sh.as_slice(), ph.as_slice()), (ph.as_slice(), sh.as_slice())] {
            for (acc, v) in bt.iter_mut().zip(bex(cx, x, y, 0.0)) {
                *acc += v;
            }
        }
    }
    let schr = (0..n).map(|j| lin_part[j] + I * bt[j] + bxx[j]).collect();
    Parts {
        u: (0..n).map(|j| pk[j] + b[j]).collect(),
        ux: (0..n).map(|j| pkx[j] + bx[j]).collect(),
        ph,
        nh,
        pk,
        b,
        bx,
        schr,
    }
}

/// `P_{<k}φ` and the multiplier `M = ½(H + i)∂ₓφ_{<k}`.
fn low_and_multiplier(cx: &Ctx, ph: &[C]) -> (Vec<C>, Vec<C>) {
    let pl = cx.phys_sym(ph, &[&cx.plt]);
    let hpi: Vec<C> = cx.hs.iter().map(|h| h + I).collect();
    let m: Vec<C> = cx
        .phys_sym(ph, &[&cx.plt, &hpi, &cx.dx])
        .into_iter()
        .map(|z| 0.5 * z)
        .collect();
    (pl, m)
}

/// `A_BO` applied to the `kind` variable of `φ` at index `k ≥ 1`.
///
/// The variable is rebuilt from `φ`; its time derivative comes from the
/// chosen flow. The gauged variable obeys a different equation (see
/// [`residual_gauged`]) and is rejected.
pub fn apply_abo(
    phi: &RealField,
    k: i64,
    kind: VariableKind,
    options: AboOptions,
    mode: MeanMode,
) -> Result<ComplexField> {
    check_k(k, 1)?;
    if kind == VariableKind::Gauged {
        return Err(NormalFormError::UnsupportedVariable(kind.name()));
    }
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let p = parts(&cx, &phi, kind == VariableKind::Corrected, options.flow);
    let out = if options.paradifferential {
        let (pl, m) = low_and_multiplier(&cx, &p.ph);
        (0..p.u.len())
            .map(|j| p.schr[j] - I * pl[j] * p.ux[j] - m[j] * p.u[j])
            .collect()
    } else {
        p.schr
    };
    Ok(ComplexField::new(phi.grid(), out)?)
}

/// The paradifferential part `−iφ_{<k}∂ₓu − ½((H + i)∂ₓφ_{<k})u` of `A_BO`
/// acting on an arbitrary field `u`. It is symmetric:
/// `Im⟨Tu, u⟩ = 0`.
pub fn paradifferential_part(phi: &RealField, k: i64, u: &ComplexField, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 1)?;
    phi.grid().check_same(u.grid())?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let ph = cx.g.fft_real(phi.samples());
    let (pl, m) = low_and_multiplier(&cx, &ph);
    let uh = cx.g.fft(u.samples());
    let ux = cx.phys_sym(&uh, &[&cx.dx]);
    let out = (0..ux.len())
        .map(|j| -I * pl[j] * ux[j] - m[j] * u.samples()[j])
        .collect();
    Ok(ComplexField::new(phi.grid(), out)?)
}

fn q3_samples(cx: &Ctx, phi: &RealField, p: &Parts) -> Vec<C> {
    let ph = &p.ph;
    let phys_phi = to_complex(phi.samples());
    let sq = cx.dmul(&phys_phi, &phys_phi);
    let sqh = cx.spec(&sq);
    let nh = &p.nh;
    let nn = cx.phys(nh);
    let dip = cx.phys_sym(ph, &[&cx.inv]);
    let hp = cx.phys_sym(ph, &[&cx.hs]);
    let a = cx.phys_sym(ph, &[&cx.plt, &cx.inv]);
    let t1 = mul(&cx.phys_sym(nh, &[&cx.pkp, &cx.hs]), &a);
    let t2 = mul(&cx.phys_sym(ph, &[&cx.pkp, &cx.hs]), &cx.phys_sym(&sqh, &[&cx.plt]));
    let t3 = cx.phys_sym(&cx.spec_mul(&cx.phys_sym(nh, &[&cx.hs]), &dip), &[&cx.pkp]);
    let t4 = cx.phys_sym(&cx.spec_mul(&hp, &sq), &[&cx.pkp]);
    let t5 = cx.phys_sym(&cx.spec_mul(&nn, &dip), &[&cx.pkp, &cx.hs]);
    let t6 = cx.phys_sym(&cx.spec_mul(&phys_phi, &sq), &[&cx.pkp, &cx.hs]);
    let db = lin(&[
        (re(-0.5), &t1),
        (re(-0.25), &t2),
        (re(0.25), &t3),
        (re(0.125), &t4),
        (re(0.25), &t5),
        (re(0.125), &t6),
    ]);
    let (pl, m) = low_and_multiplier(cx, ph);
    (0..db.len())
        .map(|j| I * db[j] - I * pl[j] * p.bx[j] - m[j] * p.b[j])
        .collect()
}

/// The explicit cubic term `Q³_k(φ, φ, φ)`, `k ≥ 1`.
pub fn cubic_q3(phi: &RealField, k: i64, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 1)?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let p = parts(&cx, &phi, true, Flow::Nonlinear);
    Ok(ComplexField::new(phi.grid(), q3_samples(&cx, &phi, &p))?)
}

/// `w = P_{<k}(φ²) − (P_{<k}φ)²`.
fn gauge_defect(cx: &Ctx, phi: &RealField, pl: &[C]) -> Vec<C> {
    let p = to_complex(phi.samples());
    let lsq = cx.phys_sym(&cx.spec_mul(&p, &p), &[&cx.plt]);
    (0..pl.len()).map(|j| lsq[j] - pl[j] * pl[j]).collect()
}

/// `Q̃³_k = Q³_k + ¼φ_k⁺·(P_{<k}(φ²) − (P_{<k}φ)²)`.
pub fn cubic_q3_tilde(phi: &RealField, k: i64, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 1)?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let p = parts(&cx, &phi, true, Flow::Nonlinear);
    let (pl, _) = low_and_multiplier(&cx, &p.ph);
    let w = gauge_defect(&cx, &phi, &pl);
    let q3 = q3_samples(&cx, &phi, &p);
    let out = (0..w.len()).map(|j| q3[j] + 0.25 * p.pk[j] * w[j]).collect();
    Ok(ComplexField::new(phi.grid(), out)?)
}

/// `Q̃⁴_k = ¼B_k·(P_{<k}(φ²) − (P_{<k}φ)²)`.
pub fn quartic_q4_tilde(phi: &RealField, k: i64, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 1)?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let p = parts(&cx, &phi, true, Flow::Nonlinear);
    let (pl, _) = low_and_multiplier(&cx, &p.ph);
    let w = gauge_defect(&cx, &phi, &pl);
    let out = (0..w.len()).map(|j| 0.25 * p.b[j] * w[j]).collect();
    Ok(ComplexField::new(phi.grid(), out)?)
}

fn gauge_samples(cx: &Ctx, phi: &RealField) -> Result<Vec<C>> {
    let ph = cx.g.fft_real(phi.samples());
    let low = RealField::new(&cx.g, cx.g.ifft_real(&cx.sym(&ph, &[&cx.plt])))?;
    let big_phi = primitive_phi(&low, MeanMode::Strict)?;
    Ok(big_phi.samples().iter().map(|v| (-I * v).exp()).collect())
}

/// The gauge `e^{−iΦ_{<k}}` with `∂ₓΦ_{<k} = ½P_{<k}φ`, `Φ_{<k}` pinned to 0
/// at the left edge of the box.
pub fn gauge(phi: &RealField, k: i64, mode: MeanMode) -> Result<ComplexField> {
    check_k(k, 0)?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    Ok(ComplexField::new(phi.grid(), gauge_samples(&cx, &phi)?)?)
}

/// `(i∂ₜ + ∂²ₓ)ψ_k⁺` and `(Q̃³_k + Q̃⁴_k)e^{−iΦ_{<k}}`.
///
/// `∂ₜΦ_{<k}` is taken as `½∂ₓ⁻¹P_{<k}∂ₜφ` evaluated through
/// `−½HP_{<k}φₓ + ¼P_{<k}(φ²)`; this fixes the time-dependent constant of
/// `Φ_{<k}`, which only contributes a global phase.
fn gauged_sides(cx: &Ctx, phi: &RealField) -> Result<(Vec<C>, Vec<C>)> {
    let p = parts(cx, phi, true, Flow::Nonlinear);
    let n = p.u.len();
    let g = gauge_samples(cx, phi)?;
    let (pl, _) = low_and_multiplier(cx, &p.ph);
    let phix: Vec<C> = pl.iter().map(|v| 0.5 * v).collect();
    let phixx: Vec<C> = cx.phys_sym(&p.ph, &[&cx.plt, &cx.dx]).into_iter().map(|v| 0.5 * v).collect();
    let phys_phi = to_complex(phi.samples());
    let lsq = cx.phys_sym(&cx.spec_mul(&phys_phi, &phys_phi), &[&cx.plt]);
    let hx = cx.phys_sym(&p.ph, &[&cx.plt, &cx.hs, &cx.dx]);
    let phit: Vec<C> = (0..n).map(|j| -0.5 * hx[j] + 0.25 * lsq[j]).collect();
    let lhs = (0..n)
        .map(|j| {
            g[j] * (p.schr[j] + phit[j] * p.u[j] - 2.0 * I * phix[j] * p.ux[j] - I * phixx[j] * p.u[j]
                - phix[j] * phix[j] * p.u[j])
        })
        .collect();
    let w = gauge_defect(cx, phi, &pl);
    let q3 = q3_samples(cx, phi, &p);
    let rhs = (0..n)
        .map(|j| (q3[j] + 0.25 * p.pk[j] * w[j] + 0.25 * p.b[j] * w[j]) * g[j])
        .collect();
    Ok((lhs, rhs))
}

/// `‖A_BO φ̃_k⁺ − Q³_k‖/‖Q³_k‖` (0 when both vanish).
pub fn residual_identity(phi: &RealField, k: i64, mode: MeanMode) -> Result<f64> {
    let a = apply_abo(phi, k, VariableKind::Corrected, AboOptions::default(), mode)?;
    let q = cubic_q3(phi, k, mode)?;
    Ok(relative(a.samples(), q.samples()))
}

/// `‖(i∂ₜ + ∂²ₓ)ψ_k⁺ − (Q̃³_k + Q̃⁴_k)e^{−iΦ_{<k}}‖ / ‖(Q̃³_k + Q̃⁴_k)e^{−iΦ_{<k}}‖`.
pub fn residual_gauged(phi: &RealField, k: i64, mode: MeanMode) -> Result<f64> {
    check_k(k, 1)?;
    let phi = prepare(phi, mode)?;
    let cx = Ctx::new(phi.grid(), k);
    let (lhs, rhs) = gauged_sides(&cx, &phi)?;
    Ok(relative(&lhs, &rhs))
}

/// The `k = 0` comparison: the quadratic part of `(i∂ₜ + ∂²ₓ)φ̃_0⁺` against
/// `Q²_0 = iP_0⁺(φ_0φₓ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroModeDefect {
    /// `‖quadratic part − Q²_0‖ / ‖Q²_0‖` (0 when both vanish).
    pub relative: f64,
    /// `‖Q²_0‖`.
    pub q2_norm: f64,
}

/// Evaluates [`ZeroModeDefect`] for one snapshot.
pub fn residual_zero_mode(phi: &RealField, mode: MeanMode) -> Result<ZeroModeDefect> {
    let phi = prepare(phi, mode)?;
    let z = ZeroCtx::new(phi.grid());
    let cx = &z.cx;
    let n = cx.g.n();
    let ph = cx.g.fft_real(phi.samples());
    let nh = nonlinear_spectrum(cx, &phi);
    let lam_ph: Vec<C> = (0..n).map(|j| cx.lam[j] * ph[j]).collect();
    let b0 = z.b0(&ph, &ph);
    let b0xx = cx.phys_sym(&cx.g.fft(&b0), &[&cx.dx2]);
    let bt = lin(&[(re(1.0), &z.b0(&lam_ph, &ph)), (re(1.0), &z.b0(&ph, &lam_ph))]);
    let quad = lin(&[
        (I, &cx.phys_sym(&nh, &[&z.p0p])),
        (I, &bt),
        (re(1.0), &b0xx),
    ]);
    let phi0 = cx.phys_sym(&ph, &[&z.p0]);
    let phix = cx.phys_sym(&ph, &[&cx.dx]);
    let q2: Vec<C> = cx.phys_sym(&cx.spec_mul(&phi0, &phix), &[&z.p0p]).into_iter().map(|v| I * v).collect();
    Ok(ZeroModeDefect {
        relative: relative(&quad, &q2),
        q2_norm: norm(&q2) * cx.g.spacing().sqrt(),
    })
}

/// Norms of `A_BO` applied to the variables with one correction removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityDefects {
    /// `‖A_BO φ_k⁺‖` (no `B_k`): quadratic in the amplitude.
    pub without_bk: f64,
    /// `‖A_BO φ̃_k⁺‖` (no `Q³_k` subtracted): cubic in the amplitude.
    pub without_q3: f64,
    /// `‖A_BO φ̃_k⁺ − Q³_k‖`.
    pub full: f64,
}

/// Computes [`IdentityDefects`] (L² norms with the spacing weight).
pub fn identity_defects(phi: &RealField, k: i64, mode: MeanMode) -> Result<IdentityDefects> {
    let opts = AboOptions::default();
    let plain = apply_abo(phi, k, VariableKind::Plain, opts, mode)?;
    let corr = apply_abo(phi, k, VariableKind::Corrected, opts, mode)?;
    let q = cubic_q3(phi, k, mode)?;
    Ok(IdentityDefects {
        without_bk: plain.l2_norm(),
        without_q3: corr.l2_norm(),
        full: corr.sub(&q)?.l2_norm(),
    })
}

/// Per-index summary used by reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    /// Dyadic index.
    pub k: i64,
    /// [`residual_identity`].
    pub residual_identity: f64,
    /// [`residual_gauged`].
    pub residual_gauged: f64,
    /// `‖B_k‖_{L²}`.
    pub bk_norm: f64,
    /// `‖Q³_k‖_{L²}`.
    pub q3_norm: f64,
}

/// Evaluates both residuals and the sizes of the corrections at index `k`.
pub fn identity_report(phi: &RealField, k: i64, mode: MeanMode) -> Result<IdentityReport> {
    Ok(IdentityReport {
        k,
        residual_identity: residual_identity(phi, k, mode)?,
        residual_gauged: residual_gauged(phi, k, mode)?,
        bk_norm: crate::bilinear::bilinear_bk(phi, k, mode)?.l2_norm(),
        q3_norm: cubic_q3(phi, k, mode)?.l2_norm(),
    })
}
