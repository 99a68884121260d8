//! Least-squares fits of a quantity against ln N.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Number of points that entered the fit.
    pub points: usize,
}

/// Fits `value ≈ slope·ln N + intercept` using only the points with
/// N ≥ (N_min + N_max)/2, which suppresses finite-size corrections.
pub fn fit_log_slope(data: &[(f64, f64)]) -> Result<LogFit> {
    if data.len() < 4 {
        return Err(Error::InvalidArgument(format!("a slope fit needs at least 4 points, got {}", data.len())));
    }
    if data.iter().any(|&(n, v)| n <= 0.0 || !n.is_finite() || !v.is_finite()) {
        return Err(Error::InvalidArgument("slope fit needs positive, finite N and finite values".into()));
    }
    let lo = data.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = data.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let cut = (lo + hi) / 2.0;
    let upper: Vec<(f64, f64)> = data.iter().filter(|p| p.0 >= cut).map(|&(n, v)| (n.ln(), v)).collect();
    let m = upper.len() as f64;
    let mx = upper.iter().map(|p| p.0).sum::<f64>() / m;
    let my = upper.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = upper.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = upper.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if upper.len() < 2 || sxx <= 1e-300 {
        return Err(Error::Numerical("degenerate fit: the upper half of the range has a single distinct N".into()));
    }
    let slope = sxy / sxx;
    Ok(LogFit { slope, intercept: my - slope * mx, points: upper.len() })
}
