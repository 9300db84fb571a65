use std::f64::consts::PI;
use std::sync::Arc;

use bo_spectral::ops::{abs_derivative_spectral, derivative_spectral, hilbert_spectral};
use bo_spectral::*;
use proptest::prelude::*;

/// Real band-limited field with modes `1 ≤ |m| ≤ band` (plus an optional
/// mean), coefficients drawn from the supplied values.
fn band_limited(grid: &Arc<Grid>, band: usize, values: &[f64], mean: f64) -> RealField {
    let n = grid.n();
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    c[0] = Complex64::new(mean * n as f64, 0.0);
    for m in 1..=band {
        let a = values[(2 * m) % values.len()];
        let b = values[(2 * m + 1) % values.len()];
        c[m] = Complex64::new(a, b) * n as f64 / band as f64;
        c[n - m] = c[m].conj();
    }
    SpectralField::new(grid, c, true).unwrap().to_real().unwrap()
}

fn grid_2pi(n: usize) -> Arc<Grid> {
    Grid::new(n, 2.0 * PI).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_is_exact(values in prop::collection::vec(-1.0f64..1.0, 64), log_n in 8u32..=14) {
        let g = Grid::new(1usize << log_n, 17.0).unwrap();
        let f = band_limited(&g, 40, &values, 0.3);
        let back = f.dft().to_real().unwrap();
        let scale = f.peak().max(1e-300);
        prop_assert!(back.max_abs_diff(&f).unwrap() / scale < 1e-12);
    }

    #[test]
    fn parseval(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        let g = Grid::new(512, 9.0).unwrap();
        let f = band_limited(&g, 100, &values, 0.1);
        let spec = sobolev_norm(&f, 0.0);
        prop_assert!((spec - f.l2_norm()).abs() <= 1e-12 * f.l2_norm());
    }

    #[test]
    fn hilbert_squares_to_minus_identity(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        let g = grid_2pi(256);
        let f = band_limited(&g, 60, &values, 0.0);
        let hh = hilbert(&hilbert(&f));
        prop_assert!(hh.add(&f).unwrap().peak() < 1e-12 * f.peak().max(1.0));
    }

    #[test]
    fn hilbert_is_antisymmetric(a in prop::collection::vec(-1.0f64..1.0, 64), b in prop::collection::vec(-1.0f64..1.0, 64)) {
        let g = grid_2pi(256);
        let f = band_limited(&g, 50, &a, 0.2);
        let h = band_limited(&g, 50, &b, -0.1);
        let lhs = f.inner(&hilbert(&h)).unwrap();
        let rhs = hilbert(&f).inner(&h).unwrap();
        prop_assert!((lhs + rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn i_hilbert_is_difference_of_riesz_projections(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        let g = grid_2pi(256);
        let f = band_limited(&g, 70, &values, 0.0);
        let plus = project(&f, Projector::Plus).unwrap();
        let minus = project(&f, Projector::Minus).unwrap();
        let ih = hilbert(&f).to_complex().scale(Complex64::new(0.0, 1.0));
        let diff = plus.sub(&minus).unwrap().sub(&ih).unwrap();
        prop_assert!(diff.peak() < 1e-12 * f.peak().max(1.0));
    }

    #[test]
    fn real_multipliers_keep_hermitian_symmetry(values in prop::collection::vec(-1.0f64..1.0, 64), k in 0i64..7) {
        let g = grid_2pi(256);
        let spec = band_limited(&g, 120, &values, 0.4).dft();
        prop_assert!(hilbert_spectral(&spec).hermitian_defect() < 1e-12);
        prop_assert!(derivative_spectral(&spec, 3).hermitian_defect() < 1e-12);
        prop_assert!(project_spectral(&spec, Projector::Band(k)).unwrap().hermitian_defect() < 1e-12);
    }

    #[test]
    fn dyadic_partition_telescopes(values in prop::collection::vec(-1.0f64..1.0, 64), big_k in 3i64..8) {
        let g = grid_2pi(512);
        let band = 1usize << (big_k - 1);
        let f = band_limited(&g, band - 1, &values, 0.5);
        let mut sum = RealField::zeros(&g);
        for k in 0..=big_k {
            sum = sum.add(&project_real(&f, Projector::Band(k)).unwrap()).unwrap();
        }
        prop_assert!(sum.max_abs_diff(&f).unwrap() < 1e-12 * f.peak().max(1.0));
    }

    #[test]
    fn half_derivatives_compose(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        let g = Grid::new(256, 11.0).unwrap();
        let f = band_limited(&g, 60, &values, 0.0);
        let spec = f.dft();
        let twice = abs_derivative_spectral(&abs_derivative_spectral(&spec, 0.5), 0.5).to_real().unwrap();
        let hdx = hilbert_spectral(&derivative_spectral(&spec, 1)).to_real().unwrap();
        let scale = hdx.peak().max(1e-300);
        prop_assert!(twice.max_abs_diff(&hdx).unwrap() / scale < 1e-12);
    }

    #[test]
    fn antiderivative_inverts_derivative(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        let g = Grid::new(256, 13.0).unwrap();
        let f = band_limited(&g, 50, &values, 0.7);
        let back = antiderivative(&derivative(&f, 1), MeanMode::Strict, Pin::ZeroMean).unwrap().field;
        let mean = f.mean();
        let diff: f64 = back.samples().iter().zip(f.samples()).fold(0.0, |m, (a, b)| m.max((a - (b - mean)).abs()));
        prop_assert!(diff < 1e-12 * f.peak().max(1.0));
    }

    #[test]
    fn hilbert_nonlinear_identity(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        // H(φ² − (Hφ)²) = 2φHφ for mean-zero φ.
        let g = grid_2pi(512);
        let phi = band_limited(&g, 80, &values, 0.0);
        let h = hilbert(&phi);
        let lhs = hilbert(&phi.mul_dealiased(&phi).unwrap().sub(&h.mul_dealiased(&h).unwrap()).unwrap());
        let rhs = phi.mul_dealiased(&h).unwrap().scale(2.0);
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
    }

    #[test]
    fn dealias_idempotent(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        let g = grid_2pi(128);
        let spec = band_limited(&g, 63, &values, 0.0).dft();
        let once = dealias(&spec);
        let twice = dealias(&once);
        prop_assert_eq!(once.coeffs(), twice.coeffs());
    }

    #[test]
    fn snapshot_round_trip(values in prop::collection::vec(-1.0f64..1.0, 64), t in 0.0f64..100.0, kind in 0u8..3) {
        let g = Grid::new(64, 5.5).unwrap();
        let f = band_limited(&g, 20, &values, 0.1);
        let snap = match kind {
            0 => Snapshot::from_real(&f, t),
            1 => Snapshot::from_complex(&f.to_complex(), t),
            _ => Snapshot::from_spectral(&f.dft(), t),
        };
        let back = Snapshot::read_from(&snap.to_bytes().unwrap()[..]).unwrap();
        prop_assert_eq!(&back, &snap);
        let f2 = back.to_real(&g).unwrap();
        prop_assert!(f2.max_abs_diff(&f).unwrap() < 1e-12);
    }
}

#[test]
fn zero_field_has_zero_spectrum() {
    let g = grid_2pi(64);
    assert!(RealField::zeros(&g).dft().coeffs().iter().all(|c| c.norm() == 0.0));
}

#[test]
fn single_mode_has_two_coefficients() {
    let g = Grid::new(64, 10.0).unwrap();
    let f = RealField::from_fn(&g, |x| (2.0 * PI * x / 10.0).cos()).unwrap();
    let spec = f.dft();
    let nonzero: Vec<i64> = (0..64).filter(|&j| spec.coeffs()[j].norm() > 1e-10).map(|j| g.mode(j)).collect();
    assert_eq!(nonzero, vec![1, -1]);
}

#[test]
fn single_mode_dyadic_projection() {
    // ξ = 2^j lies where ψ(ξ/2^j) − ψ(ξ/2^{j−1}) = ψ(1) − ψ(2) = 1.
    let g = grid_2pi(256);
    for j in 1..6 {
        let xi0 = (1u32 << j) as f64;
        let f = RealField::from_fn(&g, |x| (xi0 * x).cos()).unwrap();
        for k in 0..8 {
            let p = project_real(&f, Projector::Band(k)).unwrap();
            let expect = if k == j as i64 { 1.0 } else { 0.0 };
            let sym = bo_spectral::projection::band_symbol(k, xi0);
            assert_eq!(sym, expect);
            assert!(p.max_abs_diff(&f.scale(expect)).unwrap() < 1e-13);
        }
    }
    // An off-dyadic frequency is governed by the declared bump.
    let f = RealField::from_fn(&g, |x| (3.0 * x).cos()).unwrap();
    let p = project_real(&f, Projector::Band(2)).unwrap();
    let expect = bump(3.0 / 4.0) - bump(3.0 / 2.0);
    assert!(p.max_abs_diff(&f.scale(expect)).unwrap() < 1e-13);
}

#[test]
fn positive_band_projection_support() {
    let g = grid_2pi(256);
    let f = RealField::from_fn(&g, |x| (-(x * x)).exp() * (5.0 * x).cos()).unwrap();
    let spec = project(&f, Projector::BandPlus(3)).unwrap().dft();
    for (j, c) in spec.coeffs().iter().enumerate() {
        let xi = g.xi()[j];
        if !(xi > 0.0 && (4.0..=16.0).contains(&xi)) {
            assert!(c.norm() < 1e-9, "mode {xi} leaked {c}");
        }
    }
}

#[test]
fn gaussian_l2_norm_matches_closed_form() {
    let g = Grid::new(4096, 256.0 * PI).unwrap();
    let f = RealField::from_fn(&g, |x| (-x * x).exp()).unwrap();
    let exact = (PI / 2.0).sqrt();
    assert!((f.l2_norm().powi(2) - exact).abs() < 1e-10);
}

#[test]
fn single_mode_sobolev_norm() {
    let g = Grid::new(128, 8.0).unwrap();
    let xi0 = 2.0 * PI * 3.0 / 8.0;
    let a = 0.7;
    let f = RealField::from_fn(&g, |x| a * (xi0 * x).cos()).unwrap();
    for s in [-0.5, 0.0, 1.0, 2.0] {
        let expect = a * (1.0 + xi0 * xi0).powf(s / 2.0) * (8.0_f64 / 2.0).sqrt();
        assert!((sobolev_norm(&f, s) - expect).abs() < 1e-12 * expect);
    }
}

#[test]
fn dealiased_product_matches_direct_convolution() {
    let n = 32;
    let g = grid_2pi(n);
    let vals: Vec<f64> = (0..64).map(|i| ((i * 37 % 17) as f64 / 17.0) - 0.5).collect();
    let f = band_limited(&g, 5, &vals, 0.2);
    let h = band_limited(&g, 5, &vals[7..], -0.3);
    let prod = f.mul_dealiased(&h).unwrap().dft();
    // Oracle: direct discrete convolution of normalized coefficients.
    let fc: Vec<Complex64> = f.dft().coeffs().iter().map(|c| c / n as f64).collect();
    let hc: Vec<Complex64> = h.dft().coeffs().iter().map(|c| c / n as f64).collect();
    for j in 0..n {
        let m = g.mode(j);
        let mut acc = Complex64::new(0.0, 0.0);
        if m.abs() <= (n / 3) as i64 {
            for a in 0..n {
                let ma = g.mode(a);
                let mb = m - ma;
                if mb.abs() >= (n / 2) as i64 {
                    continue;
                }
                let b = if mb >= 0 { mb as usize } else { (mb + n as i64) as usize };
                acc += fc[a] * hc[b];
            }
        }
        assert!((prod.coeffs()[j] / n as f64 - acc).norm() < 1e-12);
    }
}

#[test]
fn primitive_derivative_is_half_phi() {
    let g = Grid::new(512, 60.0).unwrap();
    let phi = RealField::from_fn(&g, |x| -2.0 * x * (-x * x).exp()).unwrap();
    let big_phi = primitive_phi(&phi, MeanMode::Strict).unwrap();
    let d = derivative(&big_phi, 1);
    assert!(d.max_abs_diff(&phi.scale(0.5)).unwrap() < 1e-12);
    // The pin matches ∫_{−∞}^x for localized data: Φ = e^{−x²}/2.
    let expect = RealField::from_fn(&g, |x| 0.5 * (-x * x).exp()).unwrap();
    assert!(big_phi.max_abs_diff(&expect).unwrap() < 1e-12);
}

#[test]
fn x_weight_guard_rejects_non_localized() {
    let g = Grid::new(256, 20.0).unwrap();
    let f = RealField::from_fn(&g, |x| 1.0 / (1.0 + x * x)).unwrap();
    match weighted_l2(&f, 1) {
        Err(SpectralError::NotLocalized { ratio, .. }) => assert!(ratio > 1e-3),
        other => panic!("expected guard failure, got {other:?}"),
    }
}
