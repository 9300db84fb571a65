//! The classical conserved functionals and their densities:
//!
//! ```text
//! E0 = ∫ φ² dx
//! E1 = ∫ φHφₓ − ⅓φ³ dx
//! E2 = ∫ φₓ² − ¾φ²Hφₓ + ⅛φ⁴ dx
//! ```
//!
//! Every binary product is de-aliased before it enters the next product or
//! the quadrature (spacing-weighted sum).

use bo_spectral::ops::{derivative_spectral, hilbert_spectral};
use bo_spectral::{RealField, Result};

/// The nonlinear mass, momentum and energy densities.
#[derive(Debug, Clone)]
pub struct Densities {
    /// `m = φ²`.
    pub m: RealField,
    /// `p = φHφₓ − ⅓φ³`.
    pub p: RealField,
    /// `e = φₓ² − ¾φ²Hφₓ + ⅛φ⁴`.
    pub e: RealField,
}

/// The fields entering the densities, computed once from one transform.
pub(crate) struct Pieces {
    pub phi: RealField,
    pub phi_x: RealField,
    pub h_phi: RealField,
    pub h_phi_x: RealField,
    pub sq: RealField,
}

impl Pieces {
    pub(crate) fn new(phi: &RealField) -> Result<Self> {
        let spec = phi.dft();
        let dx = derivative_spectral(&spec, 1);
        Ok(Pieces {
            phi: phi.clone(),
            phi_x: dx.to_real()?,
            h_phi: hilbert_spectral(&spec).to_real()?,
            h_phi_x: hilbert_spectral(&dx).to_real()?,
            sq: phi.mul_dealiased(phi)?,
        })
    }

    fn momentum_parts(&self) -> Result<(RealField, RealField)> {
        let quad = self.phi.mul_dealiased(&self.h_phi_x)?;
        let cubic = self.phi.mul_dealiased(&self.sq)?;
        Ok((quad, cubic))
    }
}

/// The densities `(m, p, e)` of `φ`.
pub fn densities(phi: &RealField) -> Result<Densities> {
    let pc = Pieces::new(phi)?;
    let (quad, cubic) = pc.momentum_parts()?;
    let p = quad.axpby(1.0, &cubic, -1.0 / 3.0)?;
    let e2 = pc.phi_x.mul_dealiased(&pc.phi_x)?;
    let e3 = pc.sq.mul_dealiased(&pc.h_phi_x)?;
    let e4 = pc.sq.mul_dealiased(&pc.sq)?;
    let e = e2.axpby(1.0, &e3, -0.75)?.axpby(1.0, &e4, 0.125)?;
    Ok(Densities { m: pc.sq, p, e })
}

/// `E0 = ∫ φ² dx`.
pub fn mass(phi: &RealField) -> f64 {
    phi.l2_norm().powi(2)
}

/// `E1 = ∫ φHφₓ − ⅓φ³ dx`.
pub fn momentum(phi: &RealField) -> Result<f64> {
    let (quad, cubic) = momentum_parts(phi)?;
    Ok(quad - cubic / 3.0)
}

/// The two parts of the momentum: `(∫ φHφₓ dx, ∫ φ³ dx)`.
///
/// The quadratic part equals `∫|ξ||φ̂|²` and is invariant under reflection
/// `x → −x`; the cubic part is odd under `φ → −φ`.
pub fn momentum_parts(phi: &RealField) -> Result<(f64, f64)> {
    let pc = Pieces::new(phi)?;
    let (quad, cubic) = pc.momentum_parts()?;
    Ok((quad.integral(), cubic.integral()))
}

/// `E2 = ∫ φₓ² − ¾φ²Hφₓ + ⅛φ⁴ dx`.
pub fn energy(phi: &RealField) -> Result<f64> {
    Ok(densities(phi)?.e.integral())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bo_spectral::Grid;
    use std::f64::consts::PI;

    #[test]
    fn zero_field_has_zero_functionals() {
        let g = Grid::new(64, 10.0).unwrap();
        let z = RealField::zeros(&g);
        assert_eq!(mass(&z), 0.0);
        assert_eq!(momentum(&z).unwrap(), 0.0);
        assert_eq!(energy(&z).unwrap(), 0.0);
    }

    #[test]
    fn single_mode_momentum_matches_symbol() {
        // φ = A cos(ξ₀x): ∫φHφₓ = ξ₀ ∫φ² and ∫φ³ = 0.
        let g = Grid::new(128, 2.0 * PI).unwrap();
        let a = 0.7;
        let xi0 = 5.0;
        let f = RealField::from_fn(&g, |x| a * (xi0 * x).cos()).unwrap();
        let (quad, cubic) = momentum_parts(&f).unwrap();
        let e0 = a * a * PI;
        assert!((mass(&f) - e0).abs() < 1e-12);
        assert!((quad - xi0 * e0).abs() < 1e-11);
        assert!(cubic.abs() < 1e-13);
    }

    #[test]
    fn densities_integrate_to_functionals() {
        let g = Grid::new(256, 40.0).unwrap();
        let f = RealField::from_fn(&g, |x| 0.3 * (-x * x / 4.0).exp() * (1.0 + 0.2 * x)).unwrap();
        let d = densities(&f).unwrap();
        assert!((d.m.integral() - mass(&f)).abs() < 1e-12);
        assert!((d.p.integral() - momentum(&f).unwrap()).abs() < 1e-12);
        assert!((d.e.integral() - energy(&f).unwrap()).abs() < 1e-12);
        let pc = Pieces::new(&f).unwrap();
        assert!(pc.phi_x.l2_norm().powi(2) >= 0.0, "∫φₓ² is a square");
        assert!(pc.phi_x.mul_dealiased(&pc.phi_x).unwrap().integral() >= 0.0);
    }
}
