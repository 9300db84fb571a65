//! Least-squares fits of power laws and exponential rates.

use crate::error::{DiagnosticsError, Result};

/// A straight-line fit `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    /// Fitted slope.
    pub slope: f64,
    /// Fitted intercept.
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// Ordinary least squares through `(x, y)` pairs; needs two distinct `x`.
pub fn fit_line(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(DiagnosticsError::BadArgument(format!(
            "fit needs at least two points of equal count, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(DiagnosticsError::BadArgument("fit abscissae are all equal".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - slope * a - intercept).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(LineFit {
        slope,
        intercept,
        residual,
    })
}

/// Fits `v ≈ C·t^p` on log-log axes, using the points with `t` in
/// `[window.0, window.1]` and `t, v > 0`. The slope is the exponent `p`.
pub fn fit_power_law(t: &[f64], v: &[f64], window: (f64, f64)) -> Result<LineFit> {
    let (lx, ly): (Vec<f64>, Vec<f64>) = t
        .iter()
        .zip(v)
        .filter(|(t, v)| **t >= window.0 && **t <= window.1 && **t > 0.0 && **v > 0.0 && v.is_finite())
        .map(|(t, v)| (t.ln(), v.ln()))
        .unzip();
    fit_line(&lx, &ly)
}
